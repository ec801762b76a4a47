"""2-adic limits of v along power-of-two towers.

v(2^k + a) is eventually constant mod 2^N as k grows (the classification
of residues by exponent shape forces 2^k + a and 2^{k+1} + a into the
same class once k clears the offsets in a), so the limit Theta(a) exists
in the 2-adic integers.  theta() certifies one residue digit window of
that limit by direct stabilization: a run of identical residues long
enough to end at kmax.  The same machinery covers v(P(2^k)) for
polynomial arguments, including the collapse to 0 when P has a negative
non-constant coefficient (the digit sum of P(2^k) then grows without
bound, leaving the support).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import StabilizationError
from .modular import ModTable, Residue, ResidueEvaluator, build_mod_table, in_support, v_mod_sparse
from .sparse import SparseIndex

__all__ = [
    "MIN_RUN",
    "TwoAdicApprox",
    "PolynomialSpec",
    "theta",
    "theta0_mod32",
    "PolyLimitReport",
    "poly_limit_check",
    "PolyNullityReport",
    "poly_nullity_check",
]

# agreements required before a trailing constant run counts as stabilized
MIN_RUN = 4


@dataclass(frozen=True, slots=True)
class TwoAdicApprox:
    """One precision window of Theta(a): v(2^k + a) ≡ value (mod 2^N) for k in [k0, kmax]."""

    a: int
    n_exp: int
    value: Residue
    k0: int
    kmax: int

    def truncate(self, n_exp: int) -> "TwoAdicApprox":
        """Drop to a coarser precision; the residue prefix carries over."""
        return TwoAdicApprox(self.a, n_exp, self.value.truncate(n_exp), self.k0, self.kmax)


@dataclass(frozen=True, slots=True)
class PolynomialSpec:
    """Integer polynomial a0 + a1 x + ... + ad x^d with d >= 1 and ad >= 1."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) < 2:
            raise ValueError("polynomial must have degree >= 1")
        if coeffs[-1] < 1:
            raise ValueError(f"leading coefficient must be >= 1, got {coeffs[-1]}")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def eval_pow2(self, k: int) -> int:
        """P(2^k), exactly."""
        x = 1 << k
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def has_negative_tail(self) -> bool:
        """Some a_i < 0 with i >= 1 (the constant term does not count)."""
        return any(c < 0 for c in self.coefficients[1:])

    def __str__(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}x^{i}" if i > 1 else f"{mag}x"
            parts.append(("-" if c < 0 else "+", term))
        if not parts:
            return "0"
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out


def _tower_evaluator(a: int, n_exp: int, kmax: int) -> ResidueEvaluator:
    # all tower members fit a dense table, which the mod-2^N DP fills in
    # milliseconds at these sizes; sparse fallback never triggers
    limit = (1 << kmax) + max(a, 0) + 1
    return ResidueEvaluator(n_exp=n_exp, dense=build_mod_table(limit, n_exp, cap=max(limit, 1)))


def theta(
    a: int,
    n_exp: int,
    kmax: int = 16,
    evaluator: Callable[[SparseIndex | int], Residue] | None = None,
) -> TwoAdicApprox:
    """Stabilized residue of v(2^k + a) mod 2^n_exp.

    Checks k = 0..kmax, skipping k with 2^k + a < 1 (the limit concerns
    large k), and demands a constant run of at least MIN_RUN residues
    ending at kmax; k0 is the smallest index where that run begins.
    Raises StabilizationError with the full (k, residue) trace otherwise,
    in which case retry with a larger kmax.
    """
    if not 1 <= n_exp <= 62:
        raise ValueError(f"n_exp must be in 1..62, got {n_exp}")
    if kmax < MIN_RUN:
        raise ValueError(f"kmax must be >= {MIN_RUN}, got {kmax}")
    if evaluator is None:
        evaluator = _tower_evaluator(a, n_exp, kmax)
    trace: list[tuple[int, int]] = []
    for k in range(kmax + 1):
        n = (1 << k) + a
        if n < 1:
            continue
        trace.append((k, evaluator(n).value))
    if len(trace) < MIN_RUN:
        raise StabilizationError(
            f"only {len(trace)} valid indices up to kmax={kmax} for a={a}", trace=trace
        )
    final = trace[-1][1]
    run_start = len(trace) - 1
    while run_start > 0 and trace[run_start - 1][1] == final:
        run_start -= 1
    if len(trace) - run_start < MIN_RUN:
        raise StabilizationError(
            f"residues of v(2^k + {a}) mod 2^{n_exp} not constant on a run of "
            f"{MIN_RUN} ending at kmax={kmax}",
            trace=trace,
        )
    return TwoAdicApprox(
        a=a, n_exp=n_exp, value=Residue(final, n_exp), k0=trace[run_start][0], kmax=kmax
    )


def theta0_mod32(
    kmax: int = 16, evaluator: Callable[[SparseIndex | int], Residue] | None = None
) -> Residue:
    """Theta(0) mod 32, certified to equal 8 with stabilization by k = 8.

    v(2^k) ≡ 8 (mod 16) holds from k = 3 on; this checks the sharper
    mod-32 form, which needs k >= 8.  Raises StabilizationError when the
    tower does not show that behavior (it does).
    """
    if kmax < 12:
        raise ValueError(f"kmax must be >= 12, got {kmax}")
    approx = theta(0, 5, kmax, evaluator)
    if approx.value.value != 8 or approx.k0 > 8:
        raise StabilizationError(
            f"expected v(2^k) ≡ 8 (mod 32) from k <= 8, got value "
            f"{approx.value.value} with k0={approx.k0}",
            trace=[(approx.k0, approx.value.value)],
        )
    return approx.value


@dataclass(frozen=True)
class PolyLimitReport:
    """Stabilization of v(P(2^k)) mod 2^n_exp over a k-window."""

    poly: PolynomialSpec
    n_exp: int
    k_window: tuple[int, int]
    trace: tuple[tuple[int, int], ...]
    stabilized: bool
    k0: int | None
    residue: Residue | None


def poly_limit_check(
    p: PolynomialSpec,
    n_exp: int,
    k_window: tuple[int, int],
    evaluator: Callable[[SparseIndex | int], Residue] | None = None,
) -> PolyLimitReport:
    """Check that v(P(2^k)) mod 2^n_exp goes constant within the window.

    Requires nonnegative coefficients (the tower then stays in the
    support's reach and the limit exists).  Reports the smallest
    in-window k0 from which all later residues agree; stabilized=False
    with the full trace when the window is too short to show a MIN_RUN
    tail.
    """
    if any(c < 0 for c in p.coefficients):
        raise ValueError(f"coefficients must be nonnegative, got {p.coefficients}")
    lo, hi = k_window
    if lo < 0 or hi < lo:
        raise ValueError(f"bad window {k_window}")
    if evaluator is None:
        evaluator = ResidueEvaluator(
            n_exp=n_exp,
            dense=build_mod_table(1 << 20, n_exp) if hi >= 10 else None,
        )
    trace: list[tuple[int, int]] = []
    for k in range(lo, hi + 1):
        n = p.eval_pow2(k)
        arg: SparseIndex | int = n if n.bit_length() <= 63 else SparseIndex.from_int(n)
        trace.append((k, evaluator(arg).value))
    final = trace[-1][1]
    run_start = len(trace) - 1
    while run_start > 0 and trace[run_start - 1][1] == final:
        run_start -= 1
    stabilized = len(trace) - run_start >= MIN_RUN
    return PolyLimitReport(
        poly=p,
        n_exp=n_exp,
        k_window=(lo, hi),
        trace=tuple(trace),
        stabilized=stabilized,
        k0=trace[run_start][0] if stabilized else None,
        residue=Residue(final, n_exp) if stabilized else None,
    )


@dataclass(frozen=True)
class PolyNullityReport:
    """Support exit of P(2^k) towers for polynomials with a negative tail coefficient."""

    poly: PolynomialSpec
    n_exp: int
    k_window: tuple[int, int]
    support_trace: tuple[tuple[int, bool], ...]
    first_off_support: int | None
    stays_off: bool
    sampled_residues: tuple[tuple[int, int], ...]

    @property
    def passed(self) -> bool:
        return (
            self.first_off_support is not None
            and self.stays_off
            and all(r == 0 for _, r in self.sampled_residues)
        )


def poly_nullity_check(
    p: PolynomialSpec, n_exp: int, k_window: tuple[int, int]
) -> PolyNullityReport:
    """Verify v(P(2^k)) → 0 (2-adically) when some a_i < 0 with i >= 1.

    Such a negative coefficient forces a long borrow block in the binary
    expansion of P(2^k), so the digit sum of P(2^k) + 2^{N-1} grows with
    k and the tower leaves the support: residue 0 from that point on.
    The report records where the support test first fails, that it stays
    failed through the window, and direct zero residues on up to three
    off-support samples.
    """
    if not p.has_negative_tail():
        raise ValueError(
            f"polynomial {p} has no negative coefficient a_i with i >= 1; "
            "nullity applies only to that shape"
        )
    lo, hi = k_window
    if lo < 0 or hi < lo:
        raise ValueError(f"bad window {k_window}")
    support_trace: list[tuple[int, bool]] = []
    off_ks: list[int] = []
    for k in range(lo, hi + 1):
        n = p.eval_pow2(k)
        if n < 1:
            continue
        arg: SparseIndex | int = n if n.bit_length() <= 63 else SparseIndex.from_int(n)
        inside = in_support(arg, n_exp)
        support_trace.append((k, inside))
        if not inside:
            off_ks.append(k)
    first_off = off_ks[0] if off_ks else None
    stays_off = bool(off_ks) and all(
        not inside for k, inside in support_trace if k >= off_ks[0]
    )
    sampled: list[tuple[int, int]] = []
    # off-support arguments short-circuit to 0 in the sparse evaluator,
    # so direct confirmation is cheap even for enormous towers
    for k in off_ks[:3]:
        n = p.eval_pow2(k)
        arg = n if n.bit_length() <= 63 else SparseIndex.from_int(n)
        sampled.append((k, v_mod_sparse(arg, n_exp).value))
    return PolyNullityReport(
        poly=p,
        n_exp=n_exp,
        k_window=(lo, hi),
        support_trace=tuple(support_trace),
        first_off_support=first_off,
        stays_off=stays_off,
        sampled_residues=tuple(sampled),
    )
