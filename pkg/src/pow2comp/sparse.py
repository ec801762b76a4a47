"""Sparse binary representation of huge non-negative integers.

A SparseIndex stores n as the strictly decreasing sequence of its set bit
positions, n = 2^{q1} + ... + 2^{ql} with q1 > q2 > ... > ql >= 0.  This
makes numbers like 2^1000000 - 2 cheap to hold and manipulate: adding or
subtracting a single power of 2 is a carry or borrow chain on the exponent
list, and s2(n) (binary digit sum, A000120) is just the list length.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "SparseIndex",
    "s2",
    "sparse_add_pow2",
    "sparse_sub_pow2",
    "sparse_add_int",
    "sparse_sub_int",
]


@dataclass(frozen=True, slots=True)
class SparseIndex:
    """n as its set bit positions, strictly decreasing. Empty tuple is n = 0."""

    exponents: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        exps = self.exponents
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps!r}")
        if any(exps[i] <= exps[i + 1] for i in range(len(exps) - 1)):
            raise ValueError(f"exponents must be strictly decreasing, got {exps!r}")

    @classmethod
    def from_int(cls, n: int) -> SparseIndex:
        if n < 0:
            raise ValueError(f"SparseIndex requires n >= 0, got {n}")
        exps = []
        while n:
            e = n.bit_length() - 1
            exps.append(e)
            n ^= 1 << e
        return cls(tuple(exps))

    def to_int(self) -> int:
        return sum(1 << e for e in self.exponents)

    @property
    def is_zero(self) -> bool:
        return not self.exponents

    @property
    def top_exponent(self) -> int:
        """Position of the highest set bit; -1 for n = 0."""
        return self.exponents[0] if self.exponents else -1

    def bit_length(self) -> int:
        return self.exponents[0] + 1 if self.exponents else 0

    def __int__(self) -> int:
        return self.to_int()

    # Strictly decreasing exponent tuples compare lexicographically in the
    # same order as the integers they denote, so tuple comparison is exact.
    def __lt__(self, other: SparseIndex) -> bool:
        return self.exponents < other.exponents

    def __le__(self, other: SparseIndex) -> bool:
        return self.exponents <= other.exponents

    def __str__(self) -> str:
        if not self.exponents:
            return "0"
        return "+".join(f"2^{e}" for e in self.exponents)


def s2(n: SparseIndex | int) -> int:
    """Binary digit sum s2(n): the number of 1s in the binary expansion."""
    if isinstance(n, SparseIndex):
        return len(n.exponents)
    if n < 0:
        raise ValueError(f"s2 requires n >= 0, got {n}")
    return n.bit_count()


def sparse_add_pow2(n: SparseIndex, e: int) -> SparseIndex:
    """n + 2^e, resolving carries so exponents stay distinct and decreasing."""
    if e < 0:
        raise ValueError(f"exponent must be >= 0, got {e}")
    present = set(n.exponents)
    # carry chain: 2^e + 2^e = 2^{e+1}
    while e in present:
        present.remove(e)
        e += 1
    present.add(e)
    return SparseIndex(tuple(sorted(present, reverse=True)))


def sparse_sub_pow2(n: SparseIndex, e: int) -> SparseIndex:
    """n - 2^e, resolving borrows. Raises ValueError if the result is negative."""
    if e < 0:
        raise ValueError(f"exponent must be >= 0, got {e}")
    exps = n.exponents
    if e in exps:
        return SparseIndex(tuple(x for x in exps if x != e))
    # borrow from the smallest exponent above e: 2^f - 2^e = 2^{f-1}+...+2^e
    above = [x for x in exps if x > e]
    if not above:
        raise ValueError(f"{n} - 2^{e} is negative")
    f = min(above)
    kept = [x for x in exps if x != f]
    kept.extend(range(e, f))
    return SparseIndex(tuple(sorted(kept, reverse=True)))


def sparse_add_int(n: SparseIndex, c: int) -> SparseIndex:
    """n + c for a plain machine-size constant c >= 0."""
    if c < 0:
        raise ValueError(f"constant must be >= 0, got {c}")
    while c:
        e = c.bit_length() - 1
        n = sparse_add_pow2(n, e)
        c ^= 1 << e
    return n


def sparse_sub_int(n: SparseIndex, c: int) -> SparseIndex:
    """n - c for a plain machine-size constant c >= 0 (result must be >= 0)."""
    if c < 0:
        raise ValueError(f"constant must be >= 0, got {c}")
    # one borrow chain per set bit of c; partial results stay >= n - c >= 0
    for e in range(c.bit_length()):
        if (c >> e) & 1:
            n = sparse_sub_pow2(n, e)
    return n
