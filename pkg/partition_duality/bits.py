"""Integer-backed bitmask helpers for small atom sets"""
from typing import Iterable, Iterator, List


def popcount(mask: int) -> int:
    """Count set bits"""
    return bin(mask).count("1")


def full_mask(size: int) -> int:
    """Mask with the lowest `size` bits set"""
    return (1 << size) - 1


def mask_from_indices(indices: Iterable[int]) -> int:
    """Build a mask from bit indices"""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def mask_to_indices(mask: int) -> List[int]:
    """Sorted bit indices of a mask"""
    indices = []
    bit = 0
    while mask:
        if mask & 1:
            indices.append(bit)
        mask >>= 1
        bit += 1
    return indices


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit (-1 for the empty mask)"""
    if not mask:
        return -1
    return (mask & -mask).bit_length() - 1


def submasks(mask: int) -> Iterator[int]:
    """All submasks of `mask`, the empty one included, in increasing order"""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def is_submask(small: int, big: int) -> bool:
    return small & ~big == 0
