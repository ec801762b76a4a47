"""Shared fixtures and the acceptance result summary.

The heavy tables are session-scoped so the acceptance tests and unit
tests share one build.  Acceptance tests report through the `acceptance`
recorder, and the terminal summary prints one PASS/FAIL line per
recorded criterion after the normal pytest output.
"""

from __future__ import annotations

import pytest

from pow2comp.exact import build_exact_table
from pow2comp.modular import build_mod_table

_RESULTS: list[tuple[str, bool, str]] = []


class AcceptanceRecorder:
    def record(self, name: str, passed: bool, detail: str = "") -> None:
        _RESULTS.append((name, bool(passed), detail))


@pytest.fixture(scope="session")
def acceptance() -> AcceptanceRecorder:
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _RESULTS:
        line = f"[acceptance] {name}: {'PASS' if passed else 'FAIL'}"
        if detail:
            line += f" - {detail}"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def exact_2001():
    """Exact values v(0..2001); v(2000) has about 1650 bits."""
    return build_exact_table(2001)


@pytest.fixture(scope="session")
def mod_tables_1e6():
    """Dense residue tables to 10^6 for N = 1..5."""
    return {n_exp: build_mod_table(1_000_000, n_exp) for n_exp in range(1, 6)}


@pytest.fixture(scope="session")
def dense26():
    """On-demand dense tables to 2^26, the evaluator base for classification.

    Synthesis instances with up to two saturated parameters stay inside
    2^26, so evaluators built on these never push a dense-support midsize
    argument into the sparse walker.
    """
    cache: dict[int, object] = {}

    def get(n_exp: int):
        if n_exp not in cache:
            cache[n_exp] = build_mod_table(1 << 26, n_exp, cap=1 << 27)
        return cache[n_exp]

    return get
