# tests/test_trees.py
import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from scipy.stats import chisquare

from treecross.core.trees import (
    LabeledTree,
    PruferSequence,
    contains_forest,
    enumerate_trees,
    enumerate_trees_containing,
    forest_blocks,
    format_tree,
    parse_tree,
    prufer_to_tree,
    sample_prufer,
    sample_tree_containing,
    sample_uniform_tree,
    split_components,
    tree_count,
    tree_to_prufer,
)
from treecross.errors import GuardViolation, InvalidTreeError

from .strategies import labeled_trees, path_tree, prufer_codes, star_tree


# ------------------------------------------------------------------ #
# Prüfer decoding / encoding                                          #
# ------------------------------------------------------------------ #


def test_decode_two_vertices():
    assert prufer_to_tree(PruferSequence(2, ())).edges == {(1, 2)}


def test_decode_three_vertices():
    assert prufer_to_tree(PruferSequence(3, (3,))).edges == {(1, 3), (2, 3)}


def test_encode_single_edge():
    assert tree_to_prufer(LabeledTree(2, [(1, 2)])).code == ()


def test_encode_path_and_star():
    assert tree_to_prufer(path_tree(5)).code == (2, 3, 4)
    assert tree_to_prufer(star_tree(6, center=3)).code == (3, 3, 3, 3)


@given(prufer_codes())
def test_decode_then_encode_is_identity(code):
    t = prufer_to_tree(code)
    assert t.is_valid()
    assert tree_to_prufer(t) == code


@given(prufer_codes(min_n=3))
def test_degree_is_one_plus_multiplicity(code):
    t = prufer_to_tree(code)
    counts = Counter(code.code)
    for v in range(1, code.n + 1):
        assert t.degree(v) == counts[v] + 1


@given(labeled_trees())
def test_encode_then_decode_is_identity(t):
    assert prufer_to_tree(tree_to_prufer(t)) == t


@pytest.mark.parametrize("n", [3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow)])
def test_every_code_round_trips(n):
    for symbols in itertools.product(range(1, n + 1), repeat=n - 2):
        code = PruferSequence(n, symbols)
        t = prufer_to_tree(code)
        assert t.is_valid()
        assert tree_to_prufer(t) == code


@pytest.mark.parametrize("n", [3, 4, 5, 6, pytest.param(7, marks=pytest.mark.slow)])
def test_enumerated_trees_are_distinct(n):
    trees = [t.edges for t in enumerate_trees(n)]
    assert len(trees) == len(set(trees)) == n ** (n - 2)


@pytest.mark.slow
def test_random_trees_round_trip_at_n100():
    rng = np.random.default_rng(100)
    for _ in range(10_000):
        t = sample_uniform_tree(100, rng)
        assert prufer_to_tree(tree_to_prufer(t)) == t


@pytest.mark.parametrize("code", [(1,), (0, 1), (5, 1)])
def test_bad_codes_are_rejected(code):
    with pytest.raises(InvalidTreeError):
        PruferSequence(4, code)


def test_encoding_rejects_non_trees():
    with pytest.raises(InvalidTreeError):
        tree_to_prufer(LabeledTree(4, [(1, 2), (2, 3), (1, 3)]))
    with pytest.raises(InvalidTreeError):
        tree_to_prufer(LabeledTree(5, [(1, 2), (2, 3)]))


# ------------------------------------------------------------------ #
# LabeledTree                                                         #
# ------------------------------------------------------------------ #


def test_edges_are_normalized():
    t = LabeledTree(3, [(3, 1), (2, 3)])
    assert t.edges == {(1, 3), (2, 3)}
    assert t.has_edge(3, 1) and t.has_edge(1, 3)
    assert not t.has_edge(1, 2)
    assert t.neighbours(3) == [1, 2]
    assert t.degree(3) == 2


@pytest.mark.parametrize(
    "n, edges",
    [
        (3, [(1, 1), (1, 2)]),
        (3, [(1, 2), (2, 1)]),
        (3, [(1, 4), (1, 2)]),
        (3, [(0, 1), (1, 2)]),
    ],
)
def test_malformed_edge_lists(n, edges):
    with pytest.raises(InvalidTreeError):
        LabeledTree(n, edges)


def test_validate_reports_cycles_and_disconnection():
    cyclic = LabeledTree(4, [(1, 2), (2, 3), (1, 3)])
    assert not cyclic.is_valid()
    assert not cyclic.is_acyclic()
    wrong_count = LabeledTree(4, [(1, 2), (3, 4)])
    assert not wrong_count.is_connected()
    with pytest.raises(InvalidTreeError):
        wrong_count.validate()


def test_path_and_swap():
    t = path_tree(5)
    assert t.path(1, 5) == [1, 2, 3, 4, 5]
    assert t.path(4, 2) == [4, 3, 2]
    swapped = t.swap_edges((1, 5), (2, 3))
    assert swapped.is_valid()
    assert swapped.has_edge(1, 5) and not swapped.has_edge(2, 3)


def test_edge_array_is_sorted():
    t = LabeledTree(5, [(4, 5), (1, 3), (2, 3), (1, 4)])
    assert t.edge_array.tolist() == [[1, 3], [1, 4], [2, 3], [4, 5]]


# ------------------------------------------------------------------ #
# Sampling and enumeration                                            #
# ------------------------------------------------------------------ #


@pytest.mark.parametrize("n, count", [(2, 1), (3, 3), (4, 16), (7, 16807)])
def test_tree_counts(n, count):
    assert tree_count(n) == count
    assert sum(1 for _ in enumerate_trees(n)) == count


def test_enumeration_guard():
    with pytest.raises(GuardViolation):
        list(enumerate_trees(9))
    with pytest.raises(GuardViolation):
        list(enumerate_trees(1))


def test_sampling_is_reproducible():
    a = [sample_uniform_tree(30, np.random.default_rng(7)) for _ in range(3)]
    b = [sample_uniform_tree(30, np.random.default_rng(7)) for _ in range(3)]
    assert a == b
    assert all(t.is_valid() for t in a)


def test_sample_prufer_matches_tree_sampler():
    code = sample_prufer(12, np.random.default_rng(3))
    assert prufer_to_tree(code) == sample_uniform_tree(12, np.random.default_rng(3))


@pytest.mark.parametrize(
    "n, draws, tolerance",
    [(3, 30_000, 0.02), pytest.param(4, 160_000, 0.005, marks=pytest.mark.slow)],
)
def test_sampling_is_uniform(n, draws, tolerance, rng):
    counts = Counter(sample_uniform_tree(n, rng).edges for _ in range(draws))
    assert len(counts) == tree_count(n)
    for c in counts.values():
        assert abs(c / draws - 1 / tree_count(n)) <= tolerance
    assert chisquare(list(counts.values())).pvalue > 0.001


# ------------------------------------------------------------------ #
# Forests                                                             #
# ------------------------------------------------------------------ #


def test_contains_forest(crossing_tree):
    assert contains_forest(path_tree(4), [])
    assert not contains_forest(path_tree(4), [(1, 3)])
    assert contains_forest(crossing_tree, [(1, 3), (2, 4)])


def test_split_components():
    components = split_components([(5, 6), (1, 2), (2, 3)])
    assert components == [frozenset({(1, 2), (2, 3)}), frozenset({(5, 6)})]


def test_forest_blocks_adds_singletons():
    blocks = forest_blocks(5, split_components([(1, 3), (2, 4)]))
    assert blocks == [(1, 3), (2, 4), (5,)]


def test_forest_blocks_rejects_cycles():
    with pytest.raises(InvalidTreeError):
        forest_blocks(4, [frozenset({(1, 2), (2, 3), (1, 3)})])


@pytest.mark.parametrize(
    "forest",
    [[], [(1, 2)], [(1, 3), (2, 4)], [(1, 2), (2, 3)], [(1, 5), (2, 5), (3, 5)], [(1, 2), (3, 4), (4, 5)]],
)
def test_trees_containing_a_forest_are_enumerated_once(forest):
    expected = sorted(sorted(t.edges) for t in enumerate_trees(5) if contains_forest(t, forest))
    produced = sorted(sorted(t.edges) for t in enumerate_trees_containing(5, forest))
    assert produced == expected


def test_conditioned_sampler_is_uniform(rng):
    forest = [(1, 3), (2, 4)]
    draws = Counter(sample_tree_containing(5, forest, rng).edges for _ in range(20000))
    assert len(draws) == 20
    assert all(contains_forest(LabeledTree(5, edges), forest) for edges in draws)
    assert all(800 <= c <= 1200 for c in draws.values())


def test_conditioned_sampler_at_large_n(rng):
    forest = [(3, 70), (10, 200)]
    for _ in range(20):
        t = sample_tree_containing(300, forest, rng)
        assert t.is_valid()
        assert contains_forest(t, forest)


# ------------------------------------------------------------------ #
# Text format                                                         #
# ------------------------------------------------------------------ #


def test_format_tree(crossing_tree):
    assert format_tree(crossing_tree) == "4\n1 2\n1 3\n2 4\n"


@settings(max_examples=50)
@given(labeled_trees())
def test_parse_reads_formatted_trees(t):
    assert parse_tree(format_tree(t)) == t


def test_parse_skips_comment_lines():
    assert parse_tree("# provenance\n3\n1 2\n2 3\n") == path_tree(3)


@pytest.mark.parametrize("text", ["", "3\n1 2\n", "3\n1 2 3\n2 3\n", "x\n1 2\n"])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(InvalidTreeError):
        parse_tree(text)
