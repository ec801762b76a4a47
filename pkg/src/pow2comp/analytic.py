"""Real asymptotics of v via the lacunary series f(x) = 1 - sum x^(2^k).

v has ordinary generating function 1/f(x), whose dominant singularity is
the unique root rho of f in (0, 1); consequently v(n) ~ c / rho^(n+1)
with c = -1/f'(rho).  The series is lacunary (natural boundary on the
unit circle) but converges geometrically fast inside, so honest tail
bounds are one inequality: past the K-th term the exponents at least
double, and the tail is below x^(2^(K+1)) / (1 - x).

Everything here runs in mpmath extended precision with explicitly
propagated error bounds; bisection rather than Newton, because the sign
bracket IS the correctness certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .errors import BracketError
from .exact import ExactTable

__all__ = [
    "WORKING_PRECISION_BITS",
    "RealApprox",
    "eval_f",
    "eval_f_prime",
    "find_rho",
    "find_c",
    "AsymptoticReport",
    "asymptotic_report",
    "log_big",
]

# >= 80-bit effective mantissa required; 120 leaves headroom over the
# 1e-12 bracket targets
WORKING_PRECISION_BITS = 120

_BRACKET_LO = "0.5"
_BRACKET_HI = "0.7"


@dataclass(frozen=True, slots=True)
class RealApprox:
    """A real number known to lie within error_bound of value."""

    value: mp.mpf
    error_bound: mp.mpf

    def __float__(self) -> float:
        return float(self.value)


def _tail_terms(x: mp.mpf, tail_tol: mp.mpf) -> int:
    """Smallest K with x^(2^(K+1)) / (1 - x) < tail_tol."""
    k = 0
    while x ** (1 << (k + 1)) / (1 - x) >= tail_tol:
        k += 1
        if k > 60:  # 2^61 exponent: unreachable for x bounded away from 1
            raise ValueError(f"tail does not shrink for x={x}")
    return k


def eval_f(x, tail_tol=1e-30):
    """f(x) = 1 - sum_k x^(2^k), truncated once the geometric tail is below tail_tol."""
    with mp.workprec(WORKING_PRECISION_BITS):
        xm = mp.mpf(x)
        if not 0 < xm < 1:
            raise ValueError(f"x must lie in (0, 1), got {x}")
        tol = mp.mpf(tail_tol)
        if tol <= 0:
            raise ValueError(f"tail_tol must be > 0, got {tail_tol}")
        acc = mp.mpf(1)
        for k in range(_tail_terms(xm, tol) + 1):
            acc -= xm ** (1 << k)
        return acc


def eval_f_prime(x, tail_tol=1e-30):
    """f'(x) = -sum_k 2^k x^(2^k - 1), with the same tail discipline."""
    with mp.workprec(WORKING_PRECISION_BITS):
        xm = mp.mpf(x)
        if not 0 < xm < 1:
            raise ValueError(f"x must lie in (0, 1), got {x}")
        tol = mp.mpf(tail_tol)
        # term ratio beyond K is below 2 x^(2^K), so the same K plus a
        # couple of safety terms covers the derivative tail too
        terms = _tail_terms(xm, tol) + 3
        acc = mp.mpf(0)
        for k in range(terms + 1):
            acc -= (1 << k) * xm ** ((1 << k) - 1)
        return acc


def find_rho(tol=1e-13) -> RealApprox:
    """The root of f in (0, 1), by sign-checked bisection on [0.5, 0.7].

    The bracket is validated first (f(0.5) > 0 > f(0.7)); BracketError
    would mean eval_f itself is broken.  error_bound is half the final
    bracket width plus the series tail allowance.
    """
    with mp.workprec(WORKING_PRECISION_BITS):
        tol_m = mp.mpf(tol)
        if tol_m <= 0:
            raise ValueError(f"tol must be > 0, got {tol}")
        tail = tol_m / 16
        lo = mp.mpf(_BRACKET_LO)
        hi = mp.mpf(_BRACKET_HI)
        f_lo = eval_f(lo, tail)
        f_hi = eval_f(hi, tail)
        if not (f_lo > 0 > f_hi):
            raise BracketError(
                f"sign check failed: f({lo}) = {f_lo}, f({hi}) = {f_hi}"
            )
        while hi - lo >= tol_m:
            mid = (lo + hi) / 2
            if eval_f(mid, tail) > 0:
                lo = mid
            else:
                hi = mid
        return RealApprox(value=(lo + hi) / 2, error_bound=(hi - lo) / 2 + tail)


def find_c(rho: RealApprox) -> RealApprox:
    """c = -1/f'(rho), with the root uncertainty pushed through the derivative.

    f' moves slowly near rho, so evaluating at both ends of the rho
    interval and taking the half-spread (plus the tail allowance) bounds
    the propagated error.
    """
    with mp.workprec(WORKING_PRECISION_BITS):
        tail = mp.mpf(1e-25)
        lo = rho.value - rho.error_bound
        hi = rho.value + rho.error_bound
        c_mid = -1 / eval_f_prime(rho.value, tail)
        c_lo = -1 / eval_f_prime(lo, tail)
        c_hi = -1 / eval_f_prime(hi, tail)
        spread = max(abs(c_mid - c_lo), abs(c_mid - c_hi))
        return RealApprox(value=c_mid, error_bound=spread + tail)


def log_big(n: int) -> float:
    """Natural log of a positive integer of any size, via bit-shift normalization."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    shift = max(0, n.bit_length() - 64)
    return math.log(n >> shift) + shift * math.log(2)


@dataclass(frozen=True)
class AsymptoticReport:
    """Log-space deviations Delta(n) = |log v(n) + (n+1) log rho - log c|."""

    n_range: tuple[int, int]
    max_delta: float
    argmax: int
    first_delta: float
    last_delta: float
    trend_decreasing: bool
    deltas: tuple[float, ...]


def asymptotic_report(
    table: ExactTable, rho: RealApprox, c: RealApprox, n_range: tuple[int, int]
) -> AsymptoticReport:
    """Measure v(n) against c / rho^(n+1) over n_range, in log space.

    v(2000) has ~1650 bits, so the comparison must stay logarithmic.
    trend_decreasing compares the average deviation of the first and
    last quarters of the range.
    """
    lo, hi = n_range
    if not 1 <= lo <= hi:
        raise ValueError(f"bad range {n_range}")
    if hi > table.limit:
        raise ValueError(f"range end {hi} exceeds table limit {table.limit}")
    log_rho = float(mp.log(rho.value))
    log_c = float(mp.log(c.value))
    deltas = tuple(
        abs(log_big(table.value(n)) + (n + 1) * log_rho - log_c) for n in range(lo, hi + 1)
    )
    max_delta = max(deltas)
    argmax = lo + deltas.index(max_delta)
    quarter = max(1, len(deltas) // 4)
    head = sum(deltas[:quarter]) / quarter
    tail = sum(deltas[-quarter:]) / quarter
    return AsymptoticReport(
        n_range=(lo, hi),
        max_delta=max_delta,
        argmax=argmax,
        first_delta=deltas[0],
        last_delta=deltas[-1],
        trend_decreasing=tail < head,
        deltas=deltas,
    )
