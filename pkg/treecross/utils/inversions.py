# treecross/utils/inversions.py
"""Order-statistics counting on integer arrays, vectorized with numpy.

`count_inversions` walks the bits of the values from the top down. At each
level the array is kept stably sorted by the bits above the current one, so
every group of equal high bits is contiguous; a pair is an inversion exactly
once, at the first bit where the two values differ. Each level is a handful
of linear numpy passes, so the whole count costs O(m log m).
"""
import numpy as np


def ranks_with_ties_last(values) -> np.ndarray:
    """Rank `values` so that equal values rank in reverse order of position.

    Counting strict inversions of the result counts the pairs i < j with
    values[j] <= values[i].
    """
    values = np.asarray(values, dtype=np.int64)
    positions = np.arange(values.size, dtype=np.int64)
    order = np.lexsort((-positions, values))
    ranks = np.empty(values.size, dtype=np.int64)
    ranks[order] = positions
    return ranks


def count_inversions(values) -> int:
    """Number of pairs i < j with values[i] > values[j], for values >= 0."""
    seq = np.asarray(values, dtype=np.int64)
    size = seq.size
    if size < 2:
        return 0
    if seq.min() < 0:
        raise ValueError("count_inversions expects non-negative values")

    total = 0
    for bit in reversed(range(int(seq.max()).bit_length())):
        high = seq >> (bit + 1)
        ones = (seq >> bit) & 1
        zeros = 1 - ones

        starts_mask = np.empty(size, dtype=bool)
        starts_mask[0] = True
        np.not_equal(high[1:], high[:-1], out=starts_mask[1:])
        group = np.cumsum(starts_mask) - 1
        starts = np.flatnonzero(starts_mask)

        ones_before = np.cumsum(ones) - ones
        ones_rank = ones_before - ones_before[starts][group]
        total += int(ones_rank[zeros == 1].sum())

        # stable partition of every group: zeros first, then ones
        zeros_before = np.cumsum(zeros) - zeros
        zeros_rank = zeros_before - zeros_before[starts][group]
        zeros_in_group = np.add.reduceat(zeros, starts)[group]
        position = starts[group] + np.where(ones == 1, zeros_in_group + ones_rank, zeros_rank)
        reordered = np.empty_like(seq)
        reordered[position] = seq
        seq = reordered
    return total


def count_inversions_naive(values) -> int:
    values = list(values)
    return sum(
        1
        for i in range(len(values))
        for j in range(i + 1, len(values))
        if values[i] > values[j]
    )
