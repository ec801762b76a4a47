"""Dense residue-table kernels with selectable backends.

The hot loop of the whole package is the dense DP that fills
res[i] = sum over 2^k <= i of res[i - 2^k], reduced mod 2^N, for i up to
10^6..10^7.  Two interchangeable backends implement it:

  numba  - an @njit scalar loop (default when numba imports cleanly)
  numpy  - a block-convolution scheme with no JIT dependency

Selection order: explicit argument, then the POW2COMP_BACKEND environment
variable, then numba if available.  Residues are stored in the smallest
unsigned dtype that fits 2^N - 1; arithmetic runs in uint64, whose natural
wraparound is harmless because 2^N divides 2^64 for N <= 62.

The numpy path works block-by-block.  Within a block starting at m, the
recurrence u[t] = cross[t] + sum_{2^k <= t} u[t - 2^k] has the closed
solution u = cross (*) v-prefix (truncated convolution), because the number
of ways to climb from offset j to offset t by steps of 2^k is exactly
v(t - j).  The cross vector collects contributions from earlier blocks with
a handful of slice additions, since every step 2^k >= blocksize lands on a
block boundary.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "BACKENDS",
    "BACKEND_ENV_VAR",
    "numba_available",
    "resolve_backend",
    "residue_dtype",
    "mod_dp_python",
    "mod_dp_numpy",
    "mod_dp_numba",
    "build_mod_residues",
]

BACKENDS = ("numba", "numpy")
BACKEND_ENV_VAR = "POW2COMP_BACKEND"

_BLOCK = 256  # power of two; block-convolution granularity of the numpy path

_numba_fill = None
_numba_import_failed = False


def numba_available() -> bool:
    """True if the numba backend can be used (import succeeds)."""
    global _numba_import_failed
    if _numba_fill is not None:
        return True
    if _numba_import_failed:
        return False
    try:
        import numba  # noqa: F401
    except Exception:
        _numba_import_failed = True
        return False
    return True


def resolve_backend(backend: str | None = None) -> str:
    """Pick the backend: argument > POW2COMP_BACKEND > numba-if-available."""
    choice = backend or os.environ.get(BACKEND_ENV_VAR) or None
    if choice is None:
        return "numba" if numba_available() else "numpy"
    if choice not in BACKENDS:
        raise ValueError(f"unknown backend {choice!r}, expected one of {BACKENDS}")
    if choice == "numba" and not numba_available():
        raise RuntimeError("numba backend requested but numba is not importable")
    return choice


def residue_dtype(n_exp: int):
    """Smallest unsigned dtype holding residues mod 2^n_exp."""
    if n_exp <= 8:
        return np.uint8
    if n_exp <= 16:
        return np.uint16
    if n_exp <= 32:
        return np.uint32
    return np.uint64


def mod_dp_python(limit: int, n_exp: int) -> np.ndarray:
    """Plain-Python reference filler. Slow; used for bootstrap and tests."""
    mask = (1 << n_exp) - 1
    res = np.zeros(limit + 1, dtype=residue_dtype(n_exp))
    buf = [0] * (limit + 1)
    buf[0] = 1
    for i in range(1, limit + 1):
        acc = 0
        p = 1
        while p <= i:
            acc += buf[i - p]
            p <<= 1
        buf[i] = acc & mask
    res[:] = buf
    return res


def _numba_kernel():
    global _numba_fill
    if _numba_fill is None:
        import numba as nb

        @nb.njit(cache=True)
        def fill(res, mask):
            res[0] = 1
            for i in range(1, res.shape[0]):
                acc = np.uint64(0)
                p = 1
                while p <= i:
                    acc += np.uint64(res[i - p])
                    p <<= 1
                res[i] = acc & mask
        _numba_fill = fill
    return _numba_fill


def mod_dp_numba(limit: int, n_exp: int) -> np.ndarray:
    """Fill residues v(0..limit) mod 2^n_exp with the @njit scalar loop."""
    res = np.zeros(limit + 1, dtype=residue_dtype(n_exp))
    _numba_kernel()(res, np.uint64((1 << n_exp) - 1))
    return res


def mod_dp_numpy(limit: int, n_exp: int) -> np.ndarray:
    """Fill residues v(0..limit) mod 2^n_exp by block convolution."""
    mask = np.uint64((1 << n_exp) - 1)
    res = np.zeros(limit + 1, dtype=residue_dtype(n_exp))
    boot = min(limit, _BLOCK - 1)
    res[: boot + 1] = mod_dp_python(boot, n_exp)
    if limit < _BLOCK:
        return res
    v0 = res[:_BLOCK].astype(np.uint64)  # v-prefix, the convolution kernel
    n_blocks = (limit + 1 - _BLOCK) // _BLOCK
    tail_start = _BLOCK * (1 + n_blocks)
    for blk in range(n_blocks):
        m = _BLOCK * (1 + blk)
        cross = np.zeros(_BLOCK, dtype=np.uint64)
        p = 1
        while p < _BLOCK:
            # short steps reach back across the boundary for offsets < p
            cross[:p] += res[m - p : m]
            p <<= 1
        while p <= m:
            # every long step is a multiple of the block size, so it
            # shifts the whole block uniformly
            cross += res[m - p : m - p + _BLOCK]
            p <<= 1
        u = np.convolve(cross, v0)[:_BLOCK] & mask
        res[m : m + _BLOCK] = u
    if tail_start <= limit:
        # ragged tail, shorter than one block: scalar recurrence
        imask = int(mask)
        for i in range(tail_start, limit + 1):
            acc = 0
            p = 1
            while p <= i:
                acc += int(res[i - p])
                p <<= 1
            res[i] = acc & imask
    return res


def build_mod_residues(limit: int, n_exp: int, backend: str | None = None) -> np.ndarray:
    """Residue array v(0..limit) mod 2^n_exp using the resolved backend."""
    if limit < 0:
        raise ValueError(f"limit must be >= 0, got {limit}")
    if not 1 <= n_exp <= 62:
        raise ValueError(f"n_exp must be in 1..62, got {n_exp}")
    if resolve_backend(backend) == "numba":
        return mod_dp_numba(limit, n_exp)
    return mod_dp_numpy(limit, n_exp)
