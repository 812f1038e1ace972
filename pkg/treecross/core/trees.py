# treecross/core/trees.py
"""Labelled trees on the vertices 1..n and their Prüfer codes.

Decoding always removes the smallest-labelled leaf, which fixes one
bijection between codes of length n-2 over 1..n and the n^(n-2) labelled
trees. Vertex n is never removed under that rule, so the last edge of a
decoded tree always ends at n.
"""
from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from ..errors import GuardViolation, InvalidTreeError, require

log = logging.getLogger(__name__)

MAX_ENUMERATION_N = 8

Edge = tuple  # (u, v) with u < v


def normalize_edge(u, v) -> Edge:
    u, v = int(u), int(v)
    if u == v:
        raise InvalidTreeError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class LabeledTree:
    """An undirected graph on 1..n meant to be a tree.

    Construction normalizes edges to u < v and rejects self-loops, duplicate
    edges and labels outside 1..n. Whether the graph really is a tree is
    checked by `validate`, so malformed inputs can still be held and reported.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        if int(self.n) < 1:
            raise InvalidTreeError(f"vertex count must be at least 1, got {self.n}")
        given = list(self.edges)
        normalized = frozenset(normalize_edge(u, v) for u, v in given)
        if len(normalized) != len(given):
            raise InvalidTreeError("duplicate edges")
        for u, v in normalized:
            if u < 1 or v > self.n:
                raise InvalidTreeError(f"edge {{{u},{v}}} has a label outside 1..{self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", normalized)

    @cached_property
    def adjacency(self) -> list:
        adj = [[] for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for neighbours in adj:
            neighbours.sort()
        return adj

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) int64 array, rows sorted, first column < second."""
        m = len(self.edges)
        flat = np.fromiter(itertools.chain.from_iterable(self.edges), dtype=np.int64, count=2 * m)
        pairs = flat.reshape(m, 2)
        return pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def has_edge(self, u, v) -> bool:
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self.edges

    def neighbours(self, v) -> list:
        return self.adjacency[v]

    def degree(self, v) -> int:
        return len(self.neighbours(v))

    def is_connected(self) -> bool:
        seen = {1}
        queue = deque([1])
        while queue:
            u = queue.popleft()
            for w in self.neighbours(u):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def is_acyclic(self) -> bool:
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def validate(self) -> "LabeledTree":
        if len(self.edges) != self.n - 1:
            raise InvalidTreeError(f"a tree on {self.n} vertices has {self.n - 1} edges, got {len(self.edges)}")
        if not self.is_connected():
            raise InvalidTreeError("graph is disconnected")
        if not self.is_acyclic():
            raise InvalidTreeError("graph contains a cycle")
        return self

    def is_valid(self) -> bool:
        try:
            self.validate()
        except InvalidTreeError:
            return False
        return True

    def parents(self, root: int) -> list:
        """Parent of every vertex when the tree hangs from `root` (root maps to 0)."""
        parent = [0] * (self.n + 1)
        seen = [False] * (self.n + 1)
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in self.neighbours(u):
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    queue.append(w)
        return parent

    def path(self, u: int, v: int) -> list:
        """The unique vertex path u, ..., v."""
        parent = self.parents(v)
        walk = [u]
        while walk[-1] != v:
            step = parent[walk[-1]]
            if step == 0:
                raise InvalidTreeError(f"no path between {u} and {v}")
            walk.append(step)
        return walk

    def swap_edges(self, add: Edge, remove: Edge) -> "LabeledTree":
        remove = normalize_edge(*remove)
        return LabeledTree(self.n, (self.edges - {remove}) | {normalize_edge(*add)})


@dataclass(frozen=True)
class PruferSequence:
    n: int
    code: tuple

    def __post_init__(self):
        code = tuple(int(x) for x in self.code)
        if self.n < 2:
            raise InvalidTreeError(f"Prüfer codes need n >= 2, got {self.n}")
        if len(code) != self.n - 2:
            raise InvalidTreeError(f"code for n={self.n} must have length {self.n - 2}, got {len(code)}")
        for x in code:
            if not 1 <= x <= self.n:
                raise InvalidTreeError(f"symbol {x} outside 1..{self.n}")
        object.__setattr__(self, "code", code)

    def __len__(self):
        return len(self.code)


def _prufer_pairs(n: int, symbols: Sequence[int]) -> list:
    """(removed leaf, symbol) for each symbol, then the final pair (leaf, n)."""
    if n == 2:
        return [(1, 2)]
    degree = [1] * (n + 1)
    for x in symbols:
        degree[x] += 1
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    pairs = []
    for x in symbols:
        pairs.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    pairs.append((leaf, n))
    return pairs


def _decode(n: int, symbols: Sequence[int]) -> LabeledTree:
    return LabeledTree(n, _prufer_pairs(n, symbols))


def prufer_to_tree(code: PruferSequence) -> LabeledTree:
    return _decode(code.n, code.code)


def tree_to_prufer(t: LabeledTree) -> PruferSequence:
    require(t.n >= 2, f"Prüfer codes need n >= 2, got {t.n}", InvalidTreeError)
    t.validate()
    n = t.n
    if n == 2:
        return PruferSequence(2, ())
    parent = t.parents(root=n)
    degree = [len(neighbours) for neighbours in t.adjacency]
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    code = []
    for _ in range(n - 2):
        nxt = parent[leaf]
        code.append(nxt)
        degree[nxt] -= 1
        if degree[nxt] == 1 and nxt < ptr:
            leaf = nxt
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    return PruferSequence(n, tuple(code))


def sample_uniform_tree(n: int, rng: np.random.Generator) -> LabeledTree:
    """Uniform over all n^(n-2) labelled trees: decode n-2 uniform symbols."""
    require(n >= 2, f"sampling needs n >= 2, got {n}")
    return _decode(n, rng.integers(1, n + 1, size=n - 2).tolist())


def sample_prufer(n: int, rng: np.random.Generator) -> PruferSequence:
    require(n >= 2, f"sampling needs n >= 2, got {n}")
    return PruferSequence(n, tuple(rng.integers(1, n + 1, size=n - 2).tolist()))


def enumerate_trees(n: int, prefix: Sequence[int] = ()) -> Iterator[LabeledTree]:
    """Every labelled tree on n vertices, in lexicographic Prüfer order.

    `prefix` restricts the walk to codes starting with it; the enumeration
    oracles use it to hand disjoint slices of the code space to workers.
    """
    if not 2 <= n <= MAX_ENUMERATION_N:
        raise GuardViolation(f"tree enumeration supports 2 <= n <= {MAX_ENUMERATION_N}, got {n}")
    prefix = tuple(prefix)
    require(len(prefix) <= max(n - 2, 0), f"prefix longer than a code for n={n}")
    for tail in itertools.product(range(1, n + 1), repeat=n - 2 - len(prefix)):
        yield _decode(n, prefix + tail)


def tree_count(n: int) -> int:
    return n ** (n - 2) if n >= 2 else 1


def contains_forest(t: LabeledTree, forest: Iterable) -> bool:
    return all(normalize_edge(u, v) in t.edges for u, v in forest)


def split_components(edges: Iterable) -> list:
    """Group an edge set into connected components, each a frozenset of edges.

    Components come back ordered by their smallest vertex.
    """
    edges = [normalize_edge(u, v) for u, v in edges]
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for e in edges:
        groups.setdefault(find(e[0]), set()).add(e)
    components = [frozenset(group) for group in groups.values()]
    return sorted(components, key=lambda c: min(min(e) for e in c))


def forest_blocks(n: int, components: Iterable) -> list:
    """Vertex blocks of the spanning forest made of `components` plus singletons.

    Each component must be a tree on its own vertices and the components must
    be vertex-disjoint. Blocks are sorted tuples, ordered by smallest vertex.
    """
    seen = set()
    blocks = []
    for comp in components:
        comp = frozenset(normalize_edge(u, v) for u, v in comp)
        if not comp:
            continue
        vertices = {v for e in comp for v in e}
        if min(vertices) < 1 or max(vertices) > n:
            raise GuardViolation(f"forest uses labels outside 1..{n}")
        if vertices & seen:
            raise InvalidTreeError("forest components share a vertex")
        if len(comp) != len(vertices) - 1 or len(split_components(comp)) != 1:
            raise InvalidTreeError(f"component {sorted(comp)} is not a tree")
        seen |= vertices
        blocks.append(tuple(sorted(vertices)))
    blocks.extend((v,) for v in range(1, n + 1) if v not in seen)
    return sorted(blocks)


def _assemble_containing(n, forest, blocks, code, chosen) -> LabeledTree:
    """Weighted Prüfer decoding over the blocks of a spanning forest.

    `code` holds k-2 vertices (k blocks); each symbol names the vertex its
    block attaches through. `chosen[b]` is the vertex block b uses on the
    other side of the edge it is removed with (or, for the last block, of
    the final edge). Codes times choices number n^(k-2) * prod(|block|),
    which is exactly the number of trees containing the forest.
    """
    edges = list(forest)
    k = len(blocks)
    if k == 1:
        return LabeledTree(n, edges)
    label = [0] * (n + 1)
    for b, block in enumerate(blocks, 1):
        for v in block:
            label[v] = b
    pairs = _prufer_pairs(k, [label[v] for v in code])
    for (leaf, _), vertex in zip(pairs, code):
        edges.append((chosen[leaf - 1], vertex))
    leaf, root = pairs[-1]
    edges.append((chosen[leaf - 1], chosen[root - 1]))
    return LabeledTree(n, edges)


def sample_tree_containing(n: int, forest: Iterable, rng: np.random.Generator) -> LabeledTree:
    """Uniform over the labelled trees on n vertices that contain `forest`."""
    require(n >= 2, f"sampling needs n >= 2, got {n}")
    forest = sorted({normalize_edge(u, v) for u, v in forest})
    blocks = forest_blocks(n, split_components(forest))
    code = rng.integers(1, n + 1, size=max(len(blocks) - 2, 0)).tolist()
    chosen = [block[int(rng.integers(len(block)))] if len(block) > 1 else block[0] for block in blocks]
    return _assemble_containing(n, forest, blocks, code, chosen)


def enumerate_trees_containing(n: int, forest: Iterable) -> Iterator[LabeledTree]:
    """Every tree containing `forest`, each exactly once, via the block bijection."""
    if not 2 <= n <= MAX_ENUMERATION_N:
        raise GuardViolation(f"tree enumeration supports 2 <= n <= {MAX_ENUMERATION_N}, got {n}")
    forest = sorted({normalize_edge(u, v) for u, v in forest})
    blocks = forest_blocks(n, split_components(forest))
    for code in itertools.product(range(1, n + 1), repeat=max(len(blocks) - 2, 0)):
        for chosen in itertools.product(*blocks):
            yield _assemble_containing(n, forest, blocks, code, chosen)


def format_tree(t: LabeledTree) -> str:
    lines = [str(t.n)] + [f"{u} {v}" for u, v in t.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> LabeledTree:
    lines = [line.strip() for line in text.splitlines()]
    lines = [line for line in lines if line and not line.startswith("#")]
    if not lines:
        raise InvalidTreeError("empty tree text")
    try:
        n = int(lines[0])
        edges = [tuple(int(tok) for tok in line.split()) for line in lines[1:]]
    except ValueError as exc:
        raise InvalidTreeError(f"malformed tree text: {exc}") from exc
    if any(len(e) != 2 for e in edges):
        raise InvalidTreeError("every edge line needs exactly two labels")
    return LabeledTree(n, edges).validate()
