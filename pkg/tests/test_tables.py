"""Pattern classification: synthesis, persistence, and the published rows."""

import json

import pytest

from pow2comp.errors import (
    OutOfRangeError,
    TableValidationError,
    UnverifiedClassError,
)
from pow2comp.exact import build_exact_table
from pow2comp.modular import ResidueEvaluator, build_mod_table, in_support
from pow2comp.sparse import SparseIndex
from pow2comp.tables import (
    ClassPattern,
    classify,
    default_cap,
    enumerate_patterns,
    lazy_table,
    load_table,
    mod4_formula_check,
    pattern_count,
    save_table,
    sharpness_scan,
    synthesize,
    synthesize_pattern,
    verify_paper_tables,
)

CAP2 = default_cap(2)


def _evaluator(n_exp, limit=1 << 21):
    return ResidueEvaluator(n_exp=n_exp, dense=build_mod_table(limit, n_exp, cap=limit))


def test_default_cap():
    assert default_cap(2) == 6
    assert default_cap(5) == 9


def test_pattern_from_index_int_vs_sparse():
    for n in (0, 1, 5, 98, 4095, 2**40 - 3):
        a = ClassPattern.from_index(n, 3, CAP2 + 1)
        b = ClassPattern.from_index(SparseIndex.from_int(n), 3, CAP2 + 1)
        assert a == b


def test_pattern_feature_capping():
    # n + 4 = 2^50 + 2^10: gap 40 and low exponent 10 both clip to the cap
    p = ClassPattern.from_index((1 << 50) + (1 << 10) - 4, 3, 7)
    assert p.ell == 2
    assert p.gaps == (7,)
    assert p.low_exp == 7


def test_exponents_for_rebuilds_shape():
    p = ClassPattern.from_index((1 << 20) + (1 << 8) + (1 << 2) - 4, 3, 7)
    exps = p.exponents_for({})
    assert len(exps) == 3
    assert exps[-1] == 2  # exact low exponent survives
    rebuilt = ClassPattern.from_index(
        SparseIndex(tuple(exps)).to_int() - 4, 3, 7
    )
    assert rebuilt == p


def test_enumerate_count_agree():
    for n_exp, cap in [(1, 3), (2, 4), (2, 6)]:
        patterns = list(enumerate_patterns(n_exp, cap))
        assert len(patterns) == pattern_count(n_exp, cap)
        assert len(set(p.key for p in patterns)) == len(patterns)


def test_synthesize_full_mod4_matches_dense():
    mt = build_mod_table(1 << 21, 2, cap=1 << 21)
    table = synthesize(2, CAP2, 4, mt)
    for n in range(5000):
        assert classify(n, table).value == mt.value(n)


def test_lazy_equals_eager_mod4():
    mt = build_mod_table(1 << 21, 2, cap=1 << 21)
    eager = synthesize(2, CAP2, 4, mt)
    lazy = lazy_table(2, evaluator=ResidueEvaluator(n_exp=2, dense=mt))
    for n in range(2000):
        assert classify(n, lazy).value == classify(n, eager).value


def test_classify_zero_off_support():
    table = lazy_table(2, evaluator=_evaluator(2))
    # 5 ones after the shift: power count reaches 2^2
    n = 0b11110111 - 2
    assert classify(n, table).value == 0


def test_classify_huge_sparse_input():
    table = lazy_table(3, evaluator=_evaluator(3))
    r = classify(SparseIndex.from_int((1 << 900) - 2), table)
    assert r.value == 2  # the 2^k - 2 class, far beyond direct evaluation


def test_save_load_roundtrip(tmp_path):
    mt = build_mod_table(1 << 21, 2, cap=1 << 21)
    table = synthesize(2, CAP2, 4, mt)
    path = tmp_path / "t.json"
    save_table(table, path)
    loaded = load_table(path, evaluator=ResidueEvaluator(n_exp=2, dense=mt))
    assert loaded.entries.keys() == table.entries.keys()
    for key, entry in table.entries.items():
        assert loaded.entries[key].residue == entry.residue


def test_load_detects_tampering(tmp_path):
    mt = build_mod_table(1 << 21, 2, cap=1 << 21)
    table = synthesize(2, CAP2, 4, mt)
    path = tmp_path / "t.json"
    save_table(table, path)
    data = json.loads(path.read_text())
    victim = min(
        (e for e in data["entries"] if e["stabilized"]),
        key=lambda e: sum(e["gaps"]) + e["low_exp"],
    )
    victim["residue"] = (victim["residue"] + 1) % 4
    path.write_text(json.dumps(data))
    with pytest.raises(TableValidationError):
        load_table(path, evaluator=ResidueEvaluator(n_exp=2, dense=mt))


def test_load_requires_evaluator(tmp_path):
    mt = build_mod_table(1 << 21, 2, cap=1 << 21)
    save_table(synthesize(2, CAP2, 4, mt), tmp_path / "t.json")
    with pytest.raises(ValueError):
        load_table(tmp_path / "t.json")
    load_table(tmp_path / "t.json", validate=False)  # inspection mode


def test_unstabilized_entry_raises(tmp_path):
    mt = build_mod_table(1 << 21, 2, cap=1 << 21)
    table = synthesize(2, CAP2, 4, mt)
    path = tmp_path / "t.json"
    save_table(table, path)
    data = json.loads(path.read_text())
    for e in data["entries"]:
        if e["ell"] == 1 and e["gaps"] == [] and e["low_exp"] == CAP2:
            e["stabilized"] = False
    path.write_text(json.dumps(data))
    loaded = load_table(path, evaluator=ResidueEvaluator(n_exp=2, dense=mt))
    with pytest.raises(UnverifiedClassError):
        classify(SparseIndex.from_int((1 << 300) - 2), loaded)


def test_synthesize_pattern_vacuous_skip():
    # top exponent below N-1 cannot come from any real index
    p = ClassPattern(ell=1, gaps=(), low_exp=0, n_exp=3, cap=7)
    assert synthesize_pattern(p, _evaluator(3), 4) is None


def test_verify_paper_tables_mod4():
    table = lazy_table(2, evaluator=_evaluator(2, limit=1 << 22))
    report = verify_paper_tables(table, other_scan_limit=500)
    assert report.passed
    labels = [row.label for row in report.rows]
    assert "2^k-2" in labels
    assert any("other" in lab for lab in labels)


def test_mod4_formula_small(exact_2001):
    for n in range(3, 500):
        assert mod4_formula_check(n, exact_2001)


def test_mod4_formula_rejects_tiny(exact_2001):
    with pytest.raises(ValueError):
        mod4_formula_check(2, exact_2001)


def test_sharpness_scan_small():
    mt = build_mod_table(100_000, 4)
    thr = sharpness_scan(4, 100_000, mt)
    assert thr <= 9
    with pytest.raises(OutOfRangeError):
        sharpness_scan(4, 200_000, mt)
