"""Bitmask subsets of a fixed index family.

A mask selects indices out of ``{0, ..., m-1}`` with ``m <= 64``.  All
search routines in this package enumerate subsets by increasing
cardinality, ties broken by ascending mask value, so the first hit is
always the minimal witness in that order.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MAX_FAMILY = 64


class SubsetMask:
    """Immutable subset of ``{0, ..., m-1}`` stored as a bitmask.

    Invariant: every set bit is below ``m``.
    """

    __slots__ = ("bits", "m")

    def __init__(self, bits: int, m: int):
        if not 0 <= m <= MAX_FAMILY:
            raise ValueError(f"family size must be in [0, {MAX_FAMILY}], got {m}")
        if bits < 0 or bits >> m:
            raise ValueError(f"mask {bits:#x} has bits outside a family of size {m}")
        self.bits = bits
        self.m = m

    @classmethod
    def from_indices(cls, m: int, indices: Iterable[int]) -> "SubsetMask":
        bits = 0
        for i in indices:
            if not 0 <= i < m:
                raise ValueError(f"index {i} outside family of size {m}")
            bits |= 1 << i
        return cls(bits, m)

    @classmethod
    def empty(cls, m: int) -> "SubsetMask":
        return cls(0, m)

    @classmethod
    def full(cls, m: int) -> "SubsetMask":
        return cls((1 << m) - 1, m)

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def is_empty(self) -> bool:
        return self.bits == 0

    def is_full(self) -> bool:
        return self.bits == (1 << self.m) - 1

    def sort_key(self) -> tuple[int, int]:
        """Key for the canonical (cardinality, mask value) search order."""
        return (self.bits.bit_count(), self.bits)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.m and (self.bits >> i) & 1 == 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SubsetMask)
            and self.bits == other.bits
            and self.m == other.m
        )

    def __hash__(self) -> int:
        return hash((self.bits, self.m))

    def __repr__(self) -> str:
        inside = ", ".join(map(str, self))
        return f"SubsetMask({{{inside}}}, m={self.m})"


def masks_of_cardinality(m: int, k: int) -> Iterator[int]:
    """Raw masks of all k-subsets of ``{0..m-1}`` in ascending numeric order."""
    if k == 0:
        yield 0
        return
    if k > m:
        return
    mask = (1 << k) - 1
    limit = 1 << m
    while mask < limit:
        yield mask
        # Gosper's hack: next larger mask with the same popcount.
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def masks_in_search_order(
    m: int,
    max_cardinality: int | None = None,
    include_empty: bool = False,
) -> Iterator[int]:
    """Raw masks by increasing cardinality, ties by ascending value."""
    top = m if max_cardinality is None else min(max_cardinality, m)
    start = 0 if include_empty else 1
    for k in range(start, top + 1):
        yield from masks_of_cardinality(m, k)
