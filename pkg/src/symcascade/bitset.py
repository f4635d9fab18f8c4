"""Bit-mask helpers for node sets.

Throughout the package an *active set* is a plain ``int`` used as a bit
mask: bit ``k`` set means node ``k`` is active.  Python integers are
arbitrary-precision, so masks work for any node count, and bitwise OR/AND
give word-parallel set union/intersection.
"""

from collections.abc import Iterable, Iterator

__all__ = ["mask_from_nodes", "nodes_from_mask", "iter_bits"]


def mask_from_nodes(nodes: Iterable[int]) -> int:
    """Build a bit mask from an iterable of node indices."""
    mask = 0
    for k in nodes:
        mask |= 1 << k
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def nodes_from_mask(mask: int) -> tuple[int, ...]:
    """Return the set bits of ``mask`` as a sorted tuple of node indices."""
    return tuple(iter_bits(mask))
