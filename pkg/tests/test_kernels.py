"""Residue DP kernels: backend agreement and selection."""

import numpy as np
import pytest

from pow2comp.kernels import (
    BACKEND_ENV_VAR,
    build_mod_residues,
    mod_dp_numba,
    mod_dp_numpy,
    mod_dp_python,
    numba_available,
    residue_dtype,
    resolve_backend,
)


@pytest.mark.parametrize("limit", [0, 1, 2, 17, 300, 10_000])
@pytest.mark.parametrize("n_exp", [1, 3, 6, 9, 17, 33])
def test_numpy_matches_python_reference(limit, n_exp):
    np.testing.assert_array_equal(mod_dp_numpy(limit, n_exp), mod_dp_python(limit, n_exp))


@pytest.mark.skipif(not numba_available(), reason="numba not importable")
@pytest.mark.parametrize("limit", [0, 1, 255, 256, 257, 4096, 100_000])
def test_numba_matches_numpy(limit):
    for n_exp in (1, 5, 12, 40):
        np.testing.assert_array_equal(mod_dp_numba(limit, n_exp), mod_dp_numpy(limit, n_exp))


def test_prefix_mod_8():
    res = mod_dp_numpy(10, 3)
    assert list(res) == [v % 8 for v in [1, 1, 2, 3, 6, 10, 18, 31, 56, 98, 174]]


def test_residue_dtype_widths():
    assert residue_dtype(1) == np.uint8
    assert residue_dtype(8) == np.uint8
    assert residue_dtype(9) == np.uint16
    assert residue_dtype(16) == np.uint16
    assert residue_dtype(17) == np.uint32
    assert residue_dtype(33) == np.uint64


def test_resolve_backend_explicit():
    assert resolve_backend("numpy") == "numpy"
    with pytest.raises(ValueError):
        resolve_backend("fortran")


def test_resolve_backend_env(monkeypatch):
    monkeypatch.setenv(BACKEND_ENV_VAR, "numpy")
    assert resolve_backend() == "numpy"
    monkeypatch.setenv(BACKEND_ENV_VAR, "bogus")
    with pytest.raises(ValueError):
        resolve_backend()


def test_build_respects_backend(monkeypatch):
    monkeypatch.setenv(BACKEND_ENV_VAR, "numpy")
    a = build_mod_residues(1000, 4)
    monkeypatch.delenv(BACKEND_ENV_VAR)
    b = build_mod_residues(1000, 4)
    np.testing.assert_array_equal(a, b)
