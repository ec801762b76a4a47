"""Residues of v(n) mod 2^N: dense tables, support predicate, sparse evaluator.

The divisibility law behind everything here: if s2(n + 2^{N-1}) >= 2^N then
2^N divides v(n).  Its complement, the "support", is where nonzero residues
live, and it is sparse among huge integers.  The sparse evaluator exploits
that: recursing v(n) = sum v(n - 2^k) while discarding summands outside the
support keeps the reachable state set small for sparse n, so residues of
numbers like 2^1000 + 5 come out in microseconds.

Also here: residue-level forms of the doubling identities

    v(2n)   = v(n)^2 + 2*sum_{a+b=2n-2^s, 0<=a<b<n} v(a)v(b)
                     + sum_{s>=1} v(n - 2^{s-1})^2
    v(2n-1) = 2 v(n-1) v(n) - v(n-1)^2
                     + 2*sum_{a+b=2n-1-2^s, a<b<n-1} v(a)v(b)

used as cross-validators, and the square-lift property
U = V (mod 2^N)  =>  U^2 = V^2 (mod 2^{N+1}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable

import numpy as np

from .errors import BudgetError, CapacityError, OutOfRangeError
from .kernels import build_mod_residues
from .sparse import SparseIndex, s2, sparse_add_pow2

__all__ = [
    "DEFAULT_MOD_CAP",
    "DEFAULT_SPARSE_BUDGET",
    "Residue",
    "ModTable",
    "build_mod_table",
    "in_support",
    "support_mask",
    "v_mod_sparse",
    "v_even_conv",
    "v_odd_conv",
    "square_lift_holds",
    "ResidueEvaluator",
    "default_evaluator",
]

DEFAULT_MOD_CAP = 10_000_000
DEFAULT_SPARSE_BUDGET = 2_000_000

# beyond this many bits, plain-int arithmetic on states degrades; the
# classification table is the intended tool for such inputs
_SPARSE_BITS_CAP = 1_000_000

_MEMO_TAG = "__n_exp__"


@dataclass(frozen=True, slots=True)
class Residue:
    """A value in [0, 2^N) tagged with its modulus exponent N."""

    value: int
    n_exp: int

    def __post_init__(self) -> None:
        if not 1 <= self.n_exp <= 62:
            raise ValueError(f"n_exp must be in 1..62, got {self.n_exp}")
        if not 0 <= self.value < (1 << self.n_exp):
            raise ValueError(f"value {self.value} outside [0, 2^{self.n_exp})")

    @property
    def modulus(self) -> int:
        return 1 << self.n_exp

    @property
    def bits(self) -> str:
        """Fixed-width binary rendering, N digits."""
        return format(self.value, f"0{self.n_exp}b")

    def truncate(self, n_exp: int) -> Residue:
        """The same residue at a coarser precision."""
        if n_exp > self.n_exp:
            raise ValueError(f"cannot widen precision {self.n_exp} to {n_exp}")
        return Residue(self.value & ((1 << n_exp) - 1), n_exp)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class ModTable:
    """Dense residues v(0..limit) mod 2^n_exp backed by a numpy array."""

    n_exp: int
    limit: int
    residues: np.ndarray = field(repr=False)

    @property
    def mask(self) -> int:
        return (1 << self.n_exp) - 1

    def value(self, i: int) -> int:
        if not 0 <= i <= self.limit:
            raise OutOfRangeError(f"index {i} outside table range 0..{self.limit}")
        return int(self.residues[i])

    def residue(self, i: int) -> Residue:
        return Residue(self.value(i), self.n_exp)

    def reduce(self, x: int) -> int:
        return x & self.mask


def build_mod_table(
    limit: int,
    n_exp: int,
    *,
    cap: int = DEFAULT_MOD_CAP,
    backend: str | None = None,
) -> ModTable:
    """Dense DP table of v(i) mod 2^n_exp for 0 <= i <= limit."""
    if limit < 0:
        raise ValueError(f"limit must be >= 0, got {limit}")
    if not 1 <= n_exp <= 62:
        raise ValueError(f"n_exp must be in 1..62, got {n_exp}")
    if limit > cap:
        raise CapacityError(
            f"mod table limit {limit} exceeds cap {cap}; raise cap= explicitly",
            requested=limit,
            cap=cap,
        )
    return ModTable(n_exp=n_exp, limit=limit, residues=build_mod_residues(limit, n_exp, backend))


def in_support(n: SparseIndex | int, n_exp: int) -> bool:
    """True iff s2(n + 2^{N-1}) < 2^N, i.e. v(n) is not forced to 0 mod 2^N."""
    if not 1 <= n_exp <= 62:
        raise ValueError(f"n_exp must be in 1..62, got {n_exp}")
    if isinstance(n, SparseIndex):
        return s2(sparse_add_pow2(n, n_exp - 1)) < (1 << n_exp)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return (n + (1 << (n_exp - 1))).bit_count() < (1 << n_exp)


def support_mask(limit: int, n_exp: int) -> np.ndarray:
    """Boolean array m with m[i] = in_support(i, n_exp), vectorized."""
    idx = np.arange(limit + 1, dtype=np.uint64) + np.uint64(1 << (n_exp - 1))
    return np.bitwise_count(idx) < (1 << n_exp)


def v_mod_sparse(
    n: SparseIndex | int,
    n_exp: int,
    budget: int = DEFAULT_SPARSE_BUDGET,
    *,
    memo: dict | None = None,
) -> Residue:
    """v(n) mod 2^n_exp by support-pruned memoized recursion.

    Returns 0 immediately when n is outside the support.  Otherwise runs an
    iterative depth-first evaluation of v(n) = sum v(n - 2^k) restricted to
    in-support summands, memoizing states as plain integers.  The memo is
    private per call unless one is passed in; passing a shared dict across
    an ascending sweep of many n makes the whole sweep cost amortized O(1)
    states per new index.  A shared memo is only valid for a fixed n_exp
    (enforced via a tag entry).

    budget bounds the memo size; exceeding it raises BudgetError with the
    size reached, so a caller can retry with a larger budget or switch to a
    classification-table lookup.
    """
    if not 1 <= n_exp <= 62:
        raise ValueError(f"n_exp must be in 1..62, got {n_exp}")
    if budget <= 0:
        raise ValueError(f"budget must be positive, got {budget}")
    if isinstance(n, SparseIndex):
        if n.bit_length() > _SPARSE_BITS_CAP:
            raise CapacityError(
                f"n has {n.bit_length()} bits; beyond {_SPARSE_BITS_CAP} use a "
                f"classification table instead of direct evaluation",
                requested=n.bit_length(),
                cap=_SPARSE_BITS_CAP,
            )
        n_int = n.to_int()
    else:
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        n_int = n
    mask = (1 << n_exp) - 1
    off = 1 << (n_exp - 1)
    two_n = 1 << n_exp
    if (n_int + off).bit_count() >= two_n:
        return Residue(0, n_exp)
    if memo is None:
        memo = {}
    tag = memo.setdefault(_MEMO_TAG, n_exp)
    if tag != n_exp:
        raise ValueError(f"shared memo was built for n_exp={tag}, not {n_exp}")
    memo.setdefault(0, 1)
    stack = [n_int]
    while stack:
        m = stack[-1]
        if m in memo:
            stack.pop()
            continue
        acc = 0
        pending = None
        for k in range(m.bit_length()):
            c = m - (1 << k)
            if (c + off).bit_count() >= two_n:
                continue  # summand forced to 0 mod 2^N
            r = memo.get(c)
            if r is None:
                if pending is None:
                    pending = []
                pending.append(c)
            elif pending is None:
                acc += r
        if pending is None:
            memo[m] = acc & mask
            stack.pop()
            if len(memo) > budget:
                raise BudgetError(
                    f"sparse evaluation memo exceeded budget {budget}",
                    memo_size=len(memo),
                    budget=budget,
                )
        else:
            stack.extend(pending)
    return Residue(memo[n_int], n_exp)


def _conv_tables_ok(table, needed: int) -> None:
    if needed > table.limit:
        raise OutOfRangeError(f"index {needed} exceeds table limit {table.limit}")


def v_even_conv(n: int, table) -> int:
    """Right-hand side of the v(2n) doubling identity, from table values.

    Works over an ExactTable (exact integers) or a ModTable (residues),
    via the table's own reduce().
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    _conv_tables_ok(table, 2 * n)
    val = table.value
    red = table.reduce
    acc = red(val(n) * val(n))
    s = 1
    while (1 << s) <= 2 * n:
        t = 2 * n - (1 << s)
        # pairs a+b = t with 0 <= a < b < n
        for b in range(t // 2 + 1, min(n - 1, t) + 1):
            acc = red(acc + 2 * val(t - b) * val(b))
        s += 1
    sm1 = 0
    while (1 << sm1) <= n:
        acc = red(acc + val(n - (1 << sm1)) ** 2)
        sm1 += 1
    return acc


def v_odd_conv(n: int, table) -> int:
    """Right-hand side of the v(2n-1) doubling identity, from table values."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _conv_tables_ok(table, 2 * n - 1)
    val = table.value
    red = table.reduce
    acc = red(2 * val(n - 1) * val(n) - val(n - 1) ** 2)
    s = 1
    while (1 << s) <= 2 * n - 1:
        t = 2 * n - 1 - (1 << s)
        # pairs a+b = t with 0 <= a < b < n-1
        for b in range(t // 2 + 1, min(n - 2, t) + 1):
            acc = red(acc + 2 * val(t - b) * val(b))
        s += 1
    return acc


def square_lift_holds(u: int, v: int, n_exp: int) -> bool:
    """U = V (mod 2^N) implies U^2 = V^2 (mod 2^{N+1}); vacuously true otherwise.

    Always true mathematically; exposed as a property-test hook.
    """
    if n_exp < 1:
        raise ValueError(f"n_exp must be >= 1, got {n_exp}")
    if (u - v) & ((1 << n_exp) - 1):
        return True
    return ((u * u - v * v) & ((1 << (n_exp + 1)) - 1)) == 0


@runtime_checkable
class _Classifier(Protocol):
    def classify(self, n: SparseIndex | int) -> Residue: ...


@dataclass
class ResidueEvaluator:
    """Residue source dispatching on argument magnitude.

    Arguments inside the dense table are read from it; anything larger goes
    to the classification table when one is attached, else to the sparse
    recursion with a memo shared across calls.  Attach a classifier only
    for front-end use: an evaluator that feeds table synthesis must stay
    dense+sparse, or synthesis of a missing pattern would recurse into
    itself.
    """

    n_exp: int
    dense: ModTable | None = None
    classifier: _Classifier | None = None
    budget: int = DEFAULT_SPARSE_BUDGET
    memo: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.dense is not None and self.dense.n_exp != self.n_exp:
            raise ValueError(
                f"dense table is mod 2^{self.dense.n_exp}, evaluator wants 2^{self.n_exp}"
            )

    def __call__(self, n: SparseIndex | int) -> Residue:
        small: int | None = None
        if isinstance(n, SparseIndex):
            if n.bit_length() <= 63:
                small = n.to_int()
        else:
            if n < 0:
                raise ValueError(f"n must be >= 0, got {n}")
            small = n
        if small is not None and self.dense is not None and small <= self.dense.limit:
            return self.dense.residue(small)
        if self.classifier is not None:
            return self.classifier.classify(n)
        return v_mod_sparse(n, self.n_exp, self.budget, memo=self.memo)


def default_evaluator(n_exp: int, *, dense_limit: int = 1 << 20, backend: str | None = None) -> ResidueEvaluator:
    """Dense-plus-sparse evaluator with a freshly built dense table."""
    dense = build_mod_table(dense_limit, n_exp, backend=backend)
    return ResidueEvaluator(n_exp=n_exp, dense=dense)
