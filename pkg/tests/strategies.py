# tests/strategies.py
from hypothesis import strategies as st

from treecross.core.trees import LabeledTree, PruferSequence, prufer_to_tree


def path_tree(n):
    return LabeledTree(n, [(i, i + 1) for i in range(1, n)])


def star_tree(n, center=1):
    return LabeledTree(n, [(center, v) for v in range(1, n + 1) if v != center])


@st.composite
def prufer_codes(draw, min_n=2, max_n=60):
    n = draw(st.integers(min_n, max_n))
    code = draw(st.lists(st.integers(1, n), min_size=n - 2, max_size=n - 2))
    return PruferSequence(n, tuple(code))


@st.composite
def labeled_trees(draw, min_n=2, max_n=60):
    return prufer_to_tree(draw(prufer_codes(min_n, max_n)))
