"""Exact evaluation of the binary composition count v(n) (A023359).

v(n) is the number of ordered sequences of powers of 2 summing to n, with
v(0) = 1 (the empty composition) and v(n) = 0 for n < 0.  It satisfies

    v(n) = sum over k >= 0, 2^k <= n of v(n - 2^k),   n >= 1,

which drives the dense table builder.  A memo-free depth-first enumerator
serves as an independent oracle for small n, and the convolution identity

    v(m+n) = v(m) v(n) + sum over s >= 1, a+b = m+n-2^s, a < m, b < n
             of v(a) v(b)

is implemented both per-pair and as a batched sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, OutOfRangeError

__all__ = [
    "DEFAULT_EXACT_CAP",
    "BRUTE_FORCE_CAP",
    "ExactTable",
    "build_exact_table",
    "v_exact",
    "brute_force_v",
    "check_sum_identity",
    "sum_identity_sweep",
]

DEFAULT_EXACT_CAP = 20_000

# exact values grow like 1.77^n, so enumeration is only viable for tiny n
BRUTE_FORCE_CAP = 25


@dataclass(frozen=True, slots=True)
class ExactTable:
    """Dense table of exact values v(0..limit). Immutable once built."""

    limit: int
    values: tuple[int, ...]

    def value(self, i: int) -> int:
        if not 0 <= i <= self.limit:
            raise OutOfRangeError(f"index {i} outside table range 0..{self.limit}")
        return self.values[i]

    @staticmethod
    def reduce(x: int) -> int:
        """Identity; lets exact and residue tables share identity evaluators."""
        return x


def build_exact_table(limit: int, *, cap: int = DEFAULT_EXACT_CAP) -> ExactTable:
    """Build v(0..limit) by the ascending recurrence.

    Memory is quadratic in limit (about 0.84*n bits per entry), hence the
    cap, default 20000 (about 20 MB). Pass a larger cap explicitly to go
    beyond it.
    """
    if limit < 0:
        raise ValueError(f"limit must be >= 0, got {limit}")
    if limit > cap:
        raise CapacityError(
            f"exact table limit {limit} exceeds cap {cap}; "
            f"raise cap= or use a residue table",
            requested=limit,
            cap=cap,
        )
    values = [0] * (limit + 1)
    values[0] = 1
    for i in range(1, limit + 1):
        acc = 0
        p = 1
        while p <= i:
            acc += values[i - p]
            p <<= 1
        values[i] = acc
    return ExactTable(limit=limit, values=tuple(values))


def v_exact(n: int, table: ExactTable) -> int:
    """Exact v(n) looked up from a built table."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > table.limit:
        raise OutOfRangeError(f"n={n} exceeds table limit {table.limit}")
    return table.values[n]


def brute_force_v(n: int) -> int:
    """Count compositions of n into powers of 2 by explicit enumeration.

    Walks the tree of partial compositions depth-first, branching on the
    next part, and counts completed sequences.  No recurrence, no memo:
    this is the definitional oracle the table builder is tested against.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n > BRUTE_FORCE_CAP:
        raise CapacityError(
            f"brute force enumeration capped at n={BRUTE_FORCE_CAP} (got {n}); "
            f"the count itself grows like 1.77^n",
            requested=n,
            cap=BRUTE_FORCE_CAP,
        )
    count = 0
    stack = [n]
    while stack:
        rem = stack.pop()
        if rem == 0:
            count += 1
            continue
        p = 1
        while p <= rem:
            stack.append(rem - p)
            p <<= 1
    return count


def check_sum_identity(m: int, n: int, table: ExactTable) -> bool:
    """Check v(m+n) = v(m)v(n) + sum_{a+b=m+n-2^s, a<m, b<n, s>=1} v(a)v(b).

    The index set may be empty (then the sum is 0), and pairs with a < 0 or
    b < 0 contribute nothing.  Direct double loop; this is a validator, not
    a hot path.
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be >= 1, got m={m}, n={n}")
    if m + n > table.limit:
        raise OutOfRangeError(f"m+n={m + n} exceeds table limit {table.limit}")
    vals = table.values
    rhs = vals[m] * vals[n]
    s = 1
    while (1 << s) <= m + n:
        t = m + n - (1 << s)
        # a+b = t with 0 <= a < m and 0 <= b < n
        lo = max(0, t - n + 1)
        hi = min(m - 1, t)
        for a in range(lo, hi + 1):
            rhs += vals[a] * vals[t - a]
        s += 1
    return rhs == vals[m + n]


def sum_identity_sweep(limit: int, table: ExactTable) -> list[tuple[int, int]]:
    """All (m, n) with m, n >= 1, m+n <= limit where the sum identity FAILS.

    Batched form of check_sum_identity: for each total t it precomputes the
    convolution c[t] = sum_{a+b=t} v(a)v(b) together with its suffix sums,
    so each (m, n, s) triple costs O(1) big-integer work instead of a scan.
    Returns an empty list when the identity holds everywhere (the expected
    outcome).  Spot agreement with check_sum_identity is part of the test
    suite, keeping the two routes honest against each other.
    """
    if limit > table.limit:
        raise OutOfRangeError(f"sweep limit {limit} exceeds table limit {table.limit}")
    vals = table.values
    # suffix[t][j] = sum_{a=j..t} v(a) v(t-a); suffix[t][0] is the full c[t]
    suffix: list[list[int]] = []
    for t in range(limit + 1):
        row = [0] * (t + 2)
        for a in range(t, -1, -1):
            row[a] = row[a + 1] + vals[a] * vals[t - a]
        suffix.append(row)
    failures = []
    for total in range(2, limit + 1):
        for m in range(1, total):
            n = total - m
            rhs = vals[m] * vals[n]
            s = 1
            while (1 << s) <= total:
                t = total - (1 << s)
                # sum over a+b=t, a<m, b<n: full sum minus a>=m minus b>=n
                # (a >= m and b >= n cannot both hold since t < m+n)
                part = suffix[t][0]
                if m <= t:
                    part -= suffix[t][m]
                if n <= t:
                    part -= suffix[t][0] - suffix[t][t - n + 1]
                rhs += part
                s += 1
            if rhs != vals[total]:
                failures.append((m, n))
    return failures
