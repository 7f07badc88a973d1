"""Bit-set helpers.

Subsets of a ground set of size n are plain Python ints: bit i set means
element i is in the subset.  Canonical order of subsets is ascending
numeric value of the mask.
"""

from collections.abc import Iterable, Iterator


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def iter_submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask`` in ascending order, including 0 and mask."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def iter_strict_supersets(mask: int, full: int) -> Iterator[int]:
    """Yield every strict superset of ``mask`` inside ``full``, ascending."""
    rest = full & ~mask
    for add in iter_submasks(rest):
        if add:
            yield mask | add
