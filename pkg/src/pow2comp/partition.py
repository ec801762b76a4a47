"""Binary partition function b(n) and its power-of-two congruences.

b(n) counts partitions of n into powers of 2, order ignored (A018819;
A000123 is the b(2n) subsequence).  It satisfies b(2n+1) = b(2n) and
b(2n) = b(2n-1) + b(n): an odd number's partitions all contain a 1, and
an even number's partitions split by whether all parts exceed 1 (halve
them) or a 1 occurs (remove it).

Two classical congruence families are checked here: the Rødseth–Gupta
divisibility b(2^{s+2} n) ≡ b(2^s n) (mod 2^{mu(s)}) for odd n with
mu(s) = floor((3s+4)/2), sharp in the sense that the valuation is
exactly mu(s) for some n; and the closed mod-32 formula for b(4n+2)
driven by the Thue–Morse and Rudin–Shapiro bits of n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapacityError, OutOfRangeError

__all__ = [
    "DEFAULT_PARTITION_CAP",
    "PartitionTable",
    "build_partition_table",
    "brute_force_b",
    "mu_exponent",
    "RodsethGuptaReport",
    "rodseth_gupta_check",
    "thue_morse",
    "rudin_shapiro",
    "b_mod32_formula_check",
]

DEFAULT_PARTITION_CAP = 2_000_000


@dataclass(frozen=True, slots=True)
class PartitionTable:
    """b(0..limit) as exact integers."""

    limit: int
    values: tuple[int, ...]

    def value(self, i: int) -> int:
        if not 0 <= i <= self.limit:
            raise OutOfRangeError(f"index {i} outside table range 0..{self.limit}")
        return self.values[i]


def build_partition_table(limit: int, *, cap: int = DEFAULT_PARTITION_CAP) -> PartitionTable:
    if limit < 0:
        raise ValueError(f"limit must be >= 0, got {limit}")
    if limit > cap:
        raise CapacityError(
            f"partition table limit {limit} exceeds cap {cap}; raise cap= explicitly",
            requested=limit,
            cap=cap,
        )
    vals = [0] * (limit + 1)
    vals[0] = 1
    for i in range(1, limit + 1):
        vals[i] = vals[i - 1] if i % 2 else vals[i - 1] + vals[i // 2]
    return PartitionTable(limit=limit, values=tuple(vals))


def brute_force_b(n: int) -> int:
    """b(n) by direct enumeration over bounded largest parts; small n only."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > 2000:
        raise OutOfRangeError(f"brute force is for validation; {n} > 2000")

    @lru_cache(maxsize=None)
    def count(rem: int, max_exp: int) -> int:
        if rem == 0:
            return 1
        if max_exp < 0:
            return 0
        while (1 << max_exp) > rem:
            max_exp -= 1
            if max_exp < 0:
                return 0
        return count(rem - (1 << max_exp), max_exp) + count(rem, max_exp - 1)

    return count(n, n.bit_length())


def mu_exponent(s: int) -> int:
    """mu(s) = floor((3s+4)/2): 3, 5, 6, 8, 9, 11, ... for s = 1, 2, ..."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    return (3 * s + 4) // 2


@dataclass(frozen=True)
class RodsethGuptaReport:
    s: int
    mu: int
    odd_limit: int
    failures: tuple[tuple[int, int], ...]
    witness: int | None
    witness_valuation: int | None

    @property
    def all_divisible(self) -> bool:
        return not self.failures

    @property
    def exact(self) -> bool:
        return self.witness is not None

    @property
    def passed(self) -> bool:
        return self.all_divisible and self.exact


def rodseth_gupta_check(s: int, odd_limit: int, table: PartitionTable) -> RodsethGuptaReport:
    """Check 2^{mu(s)} | b(2^{s+2} n) - b(2^s n) over odd n, with sharpness.

    failures lists (n, valuation) pairs below mu(s); witness is the
    smallest odd n whose difference has valuation exactly mu(s), showing
    the exponent cannot be raised.
    """
    mu = mu_exponent(s)
    if table.limit < (1 << (s + 2)) * odd_limit:
        raise OutOfRangeError(
            f"table limit {table.limit} < 2^{s + 2} * {odd_limit}; build a larger table"
        )
    failures = []
    witness = None
    witness_val = None
    for n in range(1, odd_limit + 1, 2):
        diff = table.value((1 << (s + 2)) * n) - table.value((1 << s) * n)
        val = (diff & -diff).bit_length() - 1 if diff else None
        if val is None or val < mu:
            failures.append((n, -1 if val is None else val))
        elif val == mu and witness is None:
            witness = n
            witness_val = val
    return RodsethGuptaReport(
        s=s,
        mu=mu,
        odd_limit=odd_limit,
        failures=tuple(failures),
        witness=witness,
        witness_valuation=witness_val,
    )


def thue_morse(n: int) -> int:
    """w(n): parity of the binary digit sum; w(0)=0, w(1)=1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return n.bit_count() & 1


def rudin_shapiro(n: int) -> int:
    """tau(n): parity of the number of overlapping "11" blocks; tau(0)=0, tau(3)=1."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return (n & (n >> 1)).bit_count() & 1


def b_mod32_formula_check(n: int, table: PartitionTable) -> bool:
    """b(4n+2) ≡ 2 + 4 w(n) + 8 w(n//2) + 16 tau(n) (mod 32)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if 4 * n + 2 > table.limit:
        raise OutOfRangeError(f"4n+2 = {4 * n + 2} exceeds table limit {table.limit}")
    rhs = 2 + 4 * thue_morse(n) + 8 * thue_morse(n // 2) + 16 * rudin_shapiro(n)
    return (table.value(4 * n + 2) - rhs) % 32 == 0
