"""Residue classification tables: synthesis, lookup, verification.

The residue of v(n) mod 2^N depends only on the "shape" of the binary
expansion of n + 2^{N-1} = 2^{k1} + ... + 2^{kl}: the number of powers l,
the gap sizes d_i = k_i - k_{i+1}, and the lowest exponent k_l, where each
gap or low exponent at or above a cap D behaves like every larger value.
This module realizes that classification empirically:

  * a ClassPattern is (l, capped gaps, capped low exponent);
  * synthesizing a pattern instantiates its at-least-D parameters over
    [D, D+W] (axis sweeps plus the all-saturated corner), reads residues
    from an evaluator, and records whether they all agree (stabilized);
  * classify() maps any n, including astronomically large SparseIndex
    inputs, to its pattern and returns the certified residue, refusing
    with UnverifiedClassError when certification is missing.

Patterns with l >= 2^N need no table: their residue is 0 by the support
bound.  Tables serialize to JSON and re-validate a sample on load.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from .errors import CapacityError, OutOfRangeError, TableValidationError, UnverifiedClassError
from .modular import ModTable, Residue, ResidueEvaluator
from .refdata import (
    CLASS_ROWS_MOD4,
    CLASS_ROWS_MOD8,
    CLASS_ROWS_MOD16,
    ZERO_CLASS_ROWS_MOD4,
    ClassRow,
)
from .sparse import SparseIndex, sparse_add_pow2, sparse_sub_pow2

__all__ = [
    "DEFAULT_WINDOW",
    "default_cap",
    "ClassPattern",
    "TableEntry",
    "CongruenceTable",
    "enumerate_patterns",
    "pattern_count",
    "synthesize",
    "synthesize_pattern",
    "lazy_table",
    "classify",
    "save_table",
    "load_table",
    "verify_paper_tables",
    "RowReport",
    "TableVerifyReport",
    "mod4_formula_check",
    "sharpness_scan",
]

DEFAULT_WINDOW = 4

_FEATURE_ENCODING = "feature value < cap means exactly that value; value == cap means at least cap"


def default_cap(n_exp: int) -> int:
    """Default synthesis cap D = N + 4; stabilization offsets grow with N."""
    return n_exp + 4


@dataclass(frozen=True, slots=True)
class ClassPattern:
    """Shape of n + 2^{N-1}: power count, capped gaps (top-down), capped low exponent.

    A feature equal to cap means "at least cap"; features below cap are
    exact.  gaps[i] is k_{i+1}..k_i spacing reading from the largest
    exponent down, so patterns round-trip with instance construction.
    """

    ell: int
    gaps: tuple[int, ...]
    low_exp: int
    n_exp: int
    cap: int

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ValueError(f"ell must be >= 1, got {self.ell}")
        if len(self.gaps) != self.ell - 1:
            raise ValueError(f"expected {self.ell - 1} gaps, got {len(self.gaps)}")
        if self.cap < 2:
            raise ValueError(f"cap must be >= 2, got {self.cap}")
        if any(not 1 <= g <= self.cap for g in self.gaps):
            raise ValueError(f"gaps must lie in 1..cap={self.cap}, got {self.gaps}")
        if not 0 <= self.low_exp <= self.cap:
            raise ValueError(f"low_exp must lie in 0..cap={self.cap}, got {self.low_exp}")

    @property
    def key(self) -> tuple:
        return (self.ell, self.gaps, self.low_exp)

    @classmethod
    def from_index(cls, n: SparseIndex | int, n_exp: int, cap: int) -> ClassPattern:
        """Pattern of n's class: shape of n + 2^{N-1} with features capped."""
        if isinstance(n, SparseIndex):
            exps = sparse_add_pow2(n, n_exp - 1).exponents
        else:
            if n < 0:
                raise ValueError(f"n must be >= 0, got {n}")
            m = n + (1 << (n_exp - 1))
            exps = []
            while m:
                e = m.bit_length() - 1
                exps.append(e)
                m ^= 1 << e
        gaps = tuple(min(exps[i] - exps[i + 1], cap) for i in range(len(exps) - 1))
        return cls(len(exps), gaps, min(exps[-1], cap), n_exp, cap)

    def exponents_for(self, values: dict[int, int]) -> tuple[int, ...]:
        """Concrete exponent tuple with at-least features set per `values`.

        Slots 0..ell-2 are the gaps, slot ell-1 is the low exponent; only
        at-least slots (feature == cap) may appear in `values`, the rest
        keep their exact feature.
        """
        low = values.get(self.ell - 1, self.low_exp)
        exps = [0] * self.ell
        exps[-1] = low
        for i in range(self.ell - 2, -1, -1):
            exps[i] = exps[i + 1] + values.get(i, self.gaps[i])
        return tuple(exps)

    def saturated_slots(self) -> tuple[int, ...]:
        """Slot indices whose feature means "at least cap"."""
        slots = [i for i, g in enumerate(self.gaps) if g == self.cap]
        if self.low_exp == self.cap:
            slots.append(self.ell - 1)
        return tuple(slots)


@dataclass(frozen=True, slots=True)
class TableEntry:
    """Certified residue for one pattern.

    stabilized means every instantiation of the at-least parameters over
    [cap, cap + window] produced the same residue; window_checked records
    that range.  A non-stabilized entry keeps the residue of its largest
    checked instance, purely as a diagnostic.
    """

    pattern: ClassPattern
    residue: Residue
    stabilized: bool
    window_checked: tuple[int, int]
    instances_checked: int


def _instance_assignments(
    slots: tuple[int, ...], cap: int, window: int, grid: bool
) -> list[dict[int, int]]:
    if not slots:
        return [{}]
    if grid:
        return [dict(zip(slots, vals)) for vals in product(range(cap, cap + window + 1), repeat=len(slots))]
    seen: list[dict[int, int]] = []
    keys = set()

    def push(assign: dict[int, int]) -> None:
        key = tuple(sorted(assign.items()))
        if key not in keys:
            keys.add(key)
            seen.append(assign)

    push({s: cap for s in slots})
    for s in slots:
        for val in range(cap + 1, cap + window + 1):
            assign = {t: cap for t in slots}
            assign[s] = val
            push(assign)
    push({s: cap + window for s in slots})
    return seen


def synthesize_pattern(
    pattern: ClassPattern,
    evaluator: Callable[[SparseIndex | int], Residue],
    window: int,
    *,
    grid: bool = False,
) -> TableEntry | None:
    """Certify one pattern by evaluating its instances.

    Returns None for vacuous patterns (no instance denotes an n >= 0),
    which only happens for all-exact shapes below 2^{N-1}; no actual n
    ever maps to such a pattern.
    """
    n_exp = pattern.n_exp
    cap = pattern.cap
    results: list[tuple[tuple[int, ...], Residue]] = []
    for assign in _instance_assignments(pattern.saturated_slots(), cap, window, grid):
        exps = pattern.exponents_for(assign)
        if exps[0] < n_exp - 1:
            continue  # sum of powers below 2^{N-1}: n would be negative
        if exps[0] <= 62:
            n: SparseIndex | int = sum(1 << e for e in exps) - (1 << (n_exp - 1))
        else:
            n = sparse_sub_pow2(SparseIndex(exps), n_exp - 1)
        results.append((exps, evaluator(n)))
    if not results:
        return None
    values = {r.value for _, r in results}
    largest = max(results, key=lambda item: item[0])
    return TableEntry(
        pattern=pattern,
        residue=largest[1],
        stabilized=len(values) == 1,
        window_checked=(cap, cap + window),
        instances_checked=len(results),
    )


@dataclass
class CongruenceTable:
    """Pattern -> certified residue map for one modulus 2^n_exp.

    entries is keyed by ClassPattern.key.  When an evaluator is attached,
    classify() synthesizes missing patterns on demand under a lock and
    memoizes them; without one, unknown patterns raise UnverifiedClassError.
    """

    n_exp: int
    cap: int
    window: int
    entries: dict[tuple, TableEntry] = field(default_factory=dict)
    evaluator: Callable[[SparseIndex | int], Residue] | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def classify(self, n: SparseIndex | int) -> Residue:
        return classify(n, self)

    @property
    def stats(self) -> dict[str, int]:
        stabilized = sum(1 for e in self.entries.values() if e.stabilized)
        return {
            "entries": len(self.entries),
            "stabilized": stabilized,
            "unstabilized": len(self.entries) - stabilized,
        }


def enumerate_patterns(n_exp: int, cap: int) -> Iterator[ClassPattern]:
    """Yield every pattern with 1 <= ell < 2^N, lazily.

    Per ell there are cap^(ell-1) * (cap+1) patterns: each of the ell-1
    gaps takes a value in 1..cap (cap meaning "at least"), the low
    exponent one in 0..cap.  The count explodes combinatorially for
    N >= 3, hence the iterator; materialize only what you consume.
    """
    if not 1 <= n_exp <= 5:
        raise ValueError(f"n_exp must be in 1..5, got {n_exp}")
    if cap < 2:
        raise ValueError(f"cap must be >= 2, got {cap}")
    for ell in range(1, 1 << n_exp):
        for low in range(cap + 1):
            for gaps in product(range(1, cap + 1), repeat=ell - 1):
                yield ClassPattern(ell, gaps, low, n_exp, cap)


def pattern_count(n_exp: int, cap: int) -> int:
    """Number of patterns enumerate_patterns yields."""
    return sum(cap ** (ell - 1) * (cap + 1) for ell in range(1, 1 << n_exp))


def synthesize(
    n_exp: int,
    cap: int,
    window: int,
    mod_table: ModTable,
    *,
    evaluator: Callable[[SparseIndex | int], Residue] | None = None,
    patterns: Iterator[ClassPattern] | None = None,
    grid: bool = False,
    max_patterns: int = 500_000,
) -> CongruenceTable:
    """Build a table by certifying patterns up front.

    Residues come from the given mod_table when an instance fits in it and
    from the support-pruned sparse evaluator otherwise, so saturated
    instances far beyond any dense table are no obstacle.  With patterns
    omitted, the full enumeration is used, guarded by max_patterns: the
    full pattern space is astronomically large for N >= 3, where the lazy
    classify-time route (lazy_table) is the practical choice.
    """
    if mod_table.n_exp != n_exp:
        raise ValueError(f"mod_table is mod 2^{mod_table.n_exp}, expected 2^{n_exp}")
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if evaluator is None:
        evaluator = ResidueEvaluator(n_exp=n_exp, dense=mod_table)
    if patterns is None:
        total = pattern_count(n_exp, cap)
        if total > max_patterns:
            raise CapacityError(
                f"full enumeration for n_exp={n_exp}, cap={cap} has {total} patterns "
                f"(> {max_patterns}); use lazy_table() or pass an explicit pattern set",
                requested=total,
                cap=max_patterns,
            )
        patterns = enumerate_patterns(n_exp, cap)
    table = CongruenceTable(n_exp=n_exp, cap=cap, window=window, evaluator=evaluator)
    for pattern in patterns:
        if pattern.n_exp != n_exp or pattern.cap != cap:
            raise ValueError(f"pattern {pattern} does not match table (n_exp={n_exp}, cap={cap})")
        entry = synthesize_pattern(pattern, evaluator, window, grid=grid)
        if entry is not None:
            table.entries[pattern.key] = entry
    return table


def lazy_table(
    n_exp: int,
    cap: int | None = None,
    window: int = DEFAULT_WINDOW,
    *,
    evaluator: Callable[[SparseIndex | int], Residue] | None = None,
    mod_table: ModTable | None = None,
) -> CongruenceTable:
    """Empty table that certifies patterns the first time classify meets them."""
    if cap is None:
        cap = default_cap(n_exp)
    if evaluator is None:
        evaluator = ResidueEvaluator(n_exp=n_exp, dense=mod_table)
    return CongruenceTable(n_exp=n_exp, cap=cap, window=window, evaluator=evaluator)


def classify(n: SparseIndex | int, table: CongruenceTable) -> Residue:
    """Residue of v(n) mod 2^n_exp via pattern lookup.

    Returns 0 outright when the power count of n + 2^{N-1} reaches 2^N
    (the support bound).  Raises UnverifiedClassError when the matched
    entry is not stabilized, or when the pattern is unknown and no
    evaluator is attached: either way a returned value would be a guess.
    """
    n_exp = table.n_exp
    pattern = ClassPattern.from_index(n, n_exp, table.cap)
    if pattern.ell >= (1 << n_exp):
        return Residue(0, n_exp)
    entry = table.entries.get(pattern.key)
    if entry is None:
        if table.evaluator is None:
            raise UnverifiedClassError(
                f"pattern {pattern.key} not in table and no evaluator attached",
                pattern=pattern,
            )
        with table._lock:
            entry = table.entries.get(pattern.key)
            if entry is None:
                entry = synthesize_pattern(pattern, table.evaluator, table.window)
                if entry is None:
                    raise UnverifiedClassError(
                        f"pattern {pattern.key} has no realizable instance", pattern=pattern
                    )
                table.entries[pattern.key] = entry
    if not entry.stabilized:
        raise UnverifiedClassError(
            f"pattern {pattern.key} did not stabilize over window "
            f"{entry.window_checked}; residue would be a guess",
            pattern=entry.pattern,
        )
    return entry.residue


def _table_payload(table: CongruenceTable) -> dict:
    entries = []
    for key in sorted(table.entries):
        e = table.entries[key]
        entries.append(
            {
                "ell": e.pattern.ell,
                "gaps": list(e.pattern.gaps),
                "low_exp": e.pattern.low_exp,
                "residue": e.residue.value,
                "stabilized": e.stabilized,
                "window_checked": list(e.window_checked),
            }
        )
    return {
        "n_exp": table.n_exp,
        "cap": table.cap,
        "window": table.window,
        "feature_encoding": _FEATURE_ENCODING,
        "entries": entries,
    }


def save_table(table: CongruenceTable, path: str | Path) -> None:
    """Serialize to JSON (deterministic layout, unstabilized entries flagged)."""
    Path(path).write_text(json.dumps(_table_payload(table), indent=2, sort_keys=True) + "\n")


def load_table(
    path: str | Path,
    *,
    evaluator: Callable[[SparseIndex | int], Residue] | None = None,
    validate: bool = True,
    sample: int = 8,
) -> CongruenceTable:
    """Load a serialized table, re-checking a sample of entries.

    Validation re-synthesizes up to `sample` stabilized entries (smallest
    instances first) and requires identical residues; a mismatch raises
    TableValidationError, protecting classify from a stale or corrupted
    cache.  Requires an evaluator when validating; pass validate=False to
    skip (e.g. for inspection only).
    """
    data = json.loads(Path(path).read_text())
    try:
        n_exp = data["n_exp"]
        cap = data["cap"]
        window = data["window"]
        raw_entries = data["entries"]
    except (KeyError, TypeError) as exc:
        raise TableValidationError(f"malformed table file {path}: {exc}") from exc
    table = CongruenceTable(n_exp=n_exp, cap=cap, window=window, evaluator=evaluator)
    for raw in raw_entries:
        pattern = ClassPattern(raw["ell"], tuple(raw["gaps"]), raw["low_exp"], n_exp, cap)
        entry = TableEntry(
            pattern=pattern,
            residue=Residue(raw["residue"], n_exp),
            stabilized=raw["stabilized"],
            window_checked=tuple(raw["window_checked"]),
            instances_checked=0,
        )
        table.entries[pattern.key] = entry
    if validate:
        if evaluator is None:
            raise ValueError("validation requires an evaluator; pass validate=False to skip")
        candidates = sorted(
            (e for e in table.entries.values() if e.stabilized),
            key=lambda e: sum(e.pattern.gaps) + e.pattern.low_exp,
        )
        for entry in candidates[:sample]:
            fresh = synthesize_pattern(entry.pattern, evaluator, window)
            if fresh is None or fresh.residue.value != entry.residue.value:
                got = None if fresh is None else fresh.residue.value
                raise TableValidationError(
                    f"stored residue {entry.residue.value} for pattern "
                    f"{entry.pattern.key} disagrees with recomputation {got}"
                )
    return table


@dataclass(frozen=True)
class RowReport:
    """Verification outcome for one published class row."""

    label: str
    expected: int
    checked: tuple[tuple[tuple[int, ...], int], ...]
    failures: tuple[tuple[tuple[int, ...], int], ...]
    boundary_below: tuple[tuple[tuple[int, ...], int | str], ...]

    @property
    def passed(self) -> bool:
        return not self.failures and bool(self.checked)


@dataclass(frozen=True)
class TableVerifyReport:
    n_exp: int
    rows: tuple[RowReport, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "n_exp": self.n_exp,
            "passed": self.passed,
            "rows": [
                {
                    "label": r.label,
                    "expected": r.expected,
                    "passed": r.passed,
                    "samples": len(r.checked),
                    "failures": [
                        {"params": list(p), "got": got} for p, got in r.failures
                    ],
                    "boundary_below": [
                        {"params": list(p), "got": got} for p, got in r.boundary_below
                    ],
                }
                for r in self.rows
            ],
        }


def _row_param_tuples(row: ClassRow, *, saturate: tuple[int, ...] = (12, 24, 45, 61)) -> list[tuple[int, ...]]:
    """Small, mixed, and saturated parameter tuples respecting row constraints.

    Parameters are top-down exponents (k, l, m); built from the smallest
    one up so mins and minimum gaps hold by construction.
    """
    mins = row.mins
    gaps = row.gaps()
    arity = row.arity

    def complete(last: int, bumps: tuple[int, ...]) -> tuple[int, ...]:
        vals = [0] * arity
        vals[-1] = last
        for i in range(arity - 2, -1, -1):
            vals[i] = max(mins[i], vals[i + 1] + gaps[i]) + bumps[i]
        return tuple(vals)

    bump_sets: list[tuple[int, ...]]
    if arity == 1:
        bump_sets = [()]
    elif arity == 2:
        bump_sets = [(0,), (2,), (9,)]
    else:
        bump_sets = [(0, 0), (0, 2), (5, 1)]
    tuples: list[tuple[int, ...]] = []
    for last in (mins[-1], mins[-1] + 1, mins[-1] + 2, mins[-1] + 6):
        for bumps in bump_sets:
            tuples.append(complete(last, bumps))
    minimal = complete(mins[-1], (0,) * max(arity - 1, 0))
    for top in saturate:
        shift = top - minimal[0]
        if shift > 0:
            # whole chain pushed high: every exponent large
            tuples.append(tuple(v + shift for v in minimal))
        if arity >= 2 and top > minimal[0]:
            # top-only high: large leading gap over small low exponents
            tuples.append((top,) + minimal[1:])
    seen = set()
    out = []
    for t in tuples:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def _verify_row(
    row: ClassRow,
    table: CongruenceTable,
    n_min: int,
) -> RowReport:
    checked = []
    failures = []
    for params in _row_param_tuples(row):
        n = row.build(*params)
        if n < n_min:
            continue
        got = classify(n, table).value
        checked.append((params, got))
        if got != row.residue:
            failures.append((params, got))
    boundary = []
    mins = row.mins
    if mins[-1] >= 1:
        below = list(mins)
        below[-1] = mins[-1] - 1
        for i in range(row.arity - 2, -1, -1):
            below[i] = max(mins[i], below[i + 1] + row.gaps()[i])
        n = row.build(*below)
        if n >= 1:
            try:
                got: int | str = classify(n, table).value
            except UnverifiedClassError:
                got = "unverified"
            boundary.append((tuple(below), got))
    return RowReport(
        label=row.label,
        expected=row.residue,
        checked=tuple(checked),
        failures=tuple(failures),
        boundary_below=tuple(boundary),
    )


def _other_samples(
    listed: tuple[ClassRow, ...], n_min: int, scan_limit: int, *, relax: int = 0
) -> tuple[list[int], list[int]]:
    """(even, odd) integers in [n_min, scan_limit] belonging to no listed class.

    Parameters run top-down (k > l > m with the row's minimum gaps), so at
    each position the admissible exponents are bounded above by the
    previous one minus its gap, and by the magnitude bound from scan_limit.

    relax widens membership by lowering every parameter bound that much:
    with relax=1 the complement also omits numbers sitting one below a
    row's stated bounds, whose residues the rows leave unconstrained.
    """
    members = set()
    top_bound = scan_limit.bit_length() + 1
    for row in listed:
        gaps = row.gaps()
        stack: list[tuple[int, tuple[int, ...]]] = [(0, ())]
        while stack:
            pos, prefix = stack.pop()
            if pos == row.arity:
                n = row.build(*prefix)
                if 0 <= n <= scan_limit:
                    members.add(n)
                continue
            lo = max(row.mins[pos] - relax, 0)
            if pos == 0:
                hi = top_bound
            else:
                hi = prefix[-1] - max(gaps[pos - 1] - relax, 1)
            for val in range(lo, hi + 1):
                stack.append((pos + 1, prefix + (val,)))
    evens = []
    odds = []
    for n in range(n_min, scan_limit + 1):
        if n in members:
            continue
        (evens if n % 2 == 0 else odds).append(n)
    return evens, odds


def _other_row_report(
    label: str,
    table: CongruenceTable,
    dense_samples: list[int],
    sparse_samples: list[SparseIndex],
) -> RowReport:
    checked = []
    failures = []
    for n in dense_samples:
        got = classify(n, table).value
        checked.append(((n,), got))
        if got != 0:
            failures.append(((n,), got))
    for idx in sparse_samples:
        got = classify(idx, table).value
        key = idx.exponents
        checked.append((key, got))
        if got != 0:
            failures.append((key, got))
    return RowReport(
        label=label,
        expected=0,
        checked=tuple(checked),
        failures=tuple(failures),
        boundary_below=(),
    )


def _sparse_other(values: list[int]) -> list[SparseIndex]:
    return [SparseIndex.from_int(v) for v in values]


def verify_paper_tables(table: CongruenceTable, *, other_scan_limit: int = 3000) -> TableVerifyReport:
    """Check the published mod-4 / mod-8 / mod-16 class residues by sampling.

    Every published row is exercised through classify() on parameter
    tuples that cover the stated minima, shifted values, mixed
    large-top/small-low shapes, and fully saturated chains; the value one
    below each row's final lower bound is evaluated and reported but not
    asserted, since the rows say nothing about it.  The catch-all rows
    (residue 0) are checked exhaustively below other_scan_limit and on
    hand-picked huge sparse members.  Only n_exp in {2, 3, 4} has
    published rows.

    The samples are chosen so every capped pattern carries at most two
    at-least parameters, keeping synthesis instances below 2^26; attach
    an evaluator whose dense table reaches that far or synthesis falls
    back to sparse evaluation and may exhaust its budget.
    """
    if table.n_exp not in (2, 3, 4):
        raise ValueError(f"published class tables exist for n_exp in 2..4, got {table.n_exp}")
    rows: list[RowReport] = []
    if table.n_exp == 2:
        n_min = 2
        for row in CLASS_ROWS_MOD4 + ZERO_CLASS_ROWS_MOD4:
            rows.append(_verify_row(row, table, n_min))
        evens, odds = _other_samples(CLASS_ROWS_MOD4, n_min, other_scan_limit)
        # 4 set bits in n+2, resp. 3 set bits in n+1: matches no listed row
        sparse_even = _sparse_other(
            [
                (1 << 40) + (1 << 30) + (1 << 20) + (1 << 10) - 2,
                (1 << 9) + (1 << 7) + (1 << 5) + (1 << 2) - 2,
            ]
        )
        sparse_odd = _sparse_other(
            [
                (1 << 40) + (1 << 20) + (1 << 10) - 1,
                (1 << 6) + (1 << 4) + (1 << 1) - 1,
            ]
        )
        rows.append(_other_row_report("other even", table, evens, sparse_even))
        rows.append(_other_row_report("other odd", table, odds, sparse_odd))
    elif table.n_exp == 3:
        n_min = 7
        for row in CLASS_ROWS_MOD8:
            rows.append(_verify_row(row, table, n_min))
        # the catch-all skips numbers one below a row's bounds: their
        # residues are unconstrained, and 9 = 2^3+1 (one below both
        # "2^k+1, k>=4" and "3*2^k-3, k>=3") indeed has residue 2, the
        # lone nonzero complement value below 10^6 under literal bounds
        evens, odds = _other_samples(CLASS_ROWS_MOD8, n_min, other_scan_limit, relax=1)
        nine = classify(9, table).value
        rows.append(
            RowReport(
                label="boundary exception 9 (below 2^k+1 and 3*2^k-3 bounds)",
                expected=2,
                checked=(((9,), nine),),
                failures=(((9,), nine),) if nine != 2 else (),
                boundary_below=(),
            )
        )
        # n + 2 = 2^k + 2^l with k > l + 1 matches no listed even row;
        # tight exponent chains keep the capped patterns instance-light
        sparse_even = _sparse_other(
            [
                (1 << 45) + (1 << 43) - 2,
                (1 << 45) + (1 << 7) - 2,
                (1 << 450) + (1 << 448) - 2,
            ]
        )
        # n = 2^k+2^l+2^m-1 with m >= 2: n+1 has 3 set bits, n+3 at least 3
        sparse_odd = _sparse_other(
            [
                (1 << 40) + (1 << 39) + (1 << 38) - 1,
                (1 << 40) + (1 << 13) + (1 << 12) - 1,
                (1 << 400) + (1 << 399) + (1 << 398) - 1,
            ]
        )
        rows.append(_other_row_report("other even", table, evens, sparse_even))
        rows.append(_other_row_report("other odd", table, odds, sparse_odd))
    else:
        for row in CLASS_ROWS_MOD16:
            rows.append(_verify_row(row, table, 1))
    return TableVerifyReport(n_exp=table.n_exp, rows=tuple(rows))


def mod4_formula_check(n: int, table) -> bool:
    """Check v(2n) mod 4 against the three-term counting formula.

    v(2n) == 2*t3 + t2 + t1 (mod 4) where, writing M = n + 1:
      t1 counts representations M = 2^s;
      t2 counts ordered pairs (s, u) with 2^s + 2^u = M (so a two-bit M
         gives 2 and M = 2^{e+1} gives the doubled pair once);
      t3 counts triples s >= v > u >= 0 with 2^s + 2^v + 2^u = M.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    m = n + 1
    t1 = 1 if m & (m - 1) == 0 else 0
    bits = m.bit_count()
    if bits == 2:
        t2 = 2
    elif t1 and m >= 2:
        t2 = 1  # 2^e = 2^{e-1} + 2^{e-1}, one ordered pair with s == u
    else:
        t2 = 0
    t3 = 0
    blen = m.bit_length()
    for u in range(blen):
        for v_ in range(u + 1, blen):
            rem = m - (1 << v_) - (1 << u)
            if rem <= 0:
                continue
            if rem & (rem - 1) == 0 and rem.bit_length() - 1 >= v_:
                t3 += 1
    # works for exact and mod-2^N tables alike as long as 4 divides the modulus
    return (table.value(2 * n) - (2 * t3 + t2 + t1)) % 4 == 0


def sharpness_scan(n_exp: int, limit: int, mod_table: ModTable) -> int:
    """Smallest t such that s2(n + 2^{N-1}) >= t forces 2^N | v(n) on [0, limit].

    Equals 1 + max digit sum over the nonzero residues, so the divisibility
    criterion's threshold 2^N can be compared against what the data shows.
    """
    if n_exp < 1:
        raise ValueError(f"n_exp must be >= 1, got {n_exp}")
    if mod_table.n_exp != n_exp:
        raise ValueError(f"mod_table is mod 2^{mod_table.n_exp}, expected 2^{n_exp}")
    if limit > mod_table.limit:
        raise OutOfRangeError(f"limit {limit} exceeds table limit {mod_table.limit}")
    idx = np.arange(limit + 1, dtype=np.uint64) + np.uint64(1 << (n_exp - 1))
    digit_sums = np.bitwise_count(idx)
    nonzero = mod_table.residues[: limit + 1] != 0
    if not nonzero.any():
        return 0
    return int(digit_sums[nonzero].max()) + 1
