from __future__ import annotations

import pytest

from rkcodes.analysis import (
    SearchConfig,
    bound_check,
    build_row_code,
    config_hash,
    griesmer_sum,
    load_table_rows,
    repetition_code_family,
    search,
    six_m_family,
    table1_qc6_report,
    verify_tables,
)
from rkcodes.codes import BudgetError, QTCode, binary_image, enumerate_codewords

MISPRINT_GENERATOR = "aaa2|4e4e"  # published as [64,5,32]; actually [64,6,16]


def test_fixture_row_counts_and_notes():
    rows = load_table_rows()
    assert len(rows) == 45
    assert sum(1 for r in rows if r.table == 1) == 21
    assert sum(1 for r in rows if r.table == 2) == 14
    assert sum(1 for r in rows if r.table == 3) == 10
    assert sum(1 for r in rows if r.notes == "---") == 3  # blanks preserved
    assert any(r.notes == "best-known" for r in rows if r.table == 1)
    assert load_table_rows((2,)) == tuple(r for r in rows if r.table == 2)


def test_verify_tables_matches_except_known_misprint():
    reports = verify_tables()
    assert len(reports) == 45
    mismatched = [r for r in reports if r["status"] != "MATCH"]
    assert [r["generator"] for r in mismatched] == [MISPRINT_GENERATOR]
    assert mismatched[0]["computed"] == [64, 6, 16]
    for r in reports:
        if r["k"] == 2:
            assert r["self_orthogonal"]
            assert r["qc_index"] == 8 * r["ell"]
        else:
            assert r["qc_index"] is None  # twist != 1: only QC up to equivalence


def test_repetition_family_predictions():
    for k, n_max in ((1, 8), (2, 8), (3, 2)):
        for n in range(1, n_max + 1):
            code, expected = repetition_code_family(k, n)
            img = binary_image(code)
            assert (img.length, img.rank, img.min_distance()) == expected
            if k >= 2:
                assert img.is_self_orthogonal()


def test_six_m_family():
    for m in range(1, 11):
        code, expected = six_m_family(m)
        words = list(enumerate_codewords(code))
        assert len(words) == 4
        img = binary_image(code)
        assert (img.length, img.rank, img.min_distance()) == expected
        assert str(img.weight_enumerator()) == f"1 + 3z^{4 * m}"
        # Griesmer equality: 6m = ceil(4m) + ceil(4m/2)
        assert griesmer_sum(2, 4 * m) == 6 * m


def test_six_m_matches_table_rows():
    code, _ = six_m_family(2)
    assert code.generator_strings() == ["0u|0u|uu"]
    code, _ = six_m_family(5)
    table_row = build_row_code(load_table_rows((1,))[13])  # (13131|uuuuu|13131)
    img = binary_image(code)
    img_row = binary_image(table_row)
    assert (img.length, img.rank, img.min_distance()) == \
        (img_row.length, img_row.rank, img_row.min_distance()) == (30, 2, 20)


def test_bound_check_reports():
    code, _ = repetition_code_family(2, 1)
    report = bound_check(code)
    assert report == {
        "residue_distance": 1,
        "hom_distance": 4,
        "nonkernel_distance": 4,
        "lower_bound": 4,
        "upper_bound": 8,
        "generator_bound": 8,
        "lemma_lower_holds": True,
        "ok": True,
    }
    degenerate = QTCode.from_strings(1, ["0u|0u|uu"], lam="3")
    report = bound_check(degenerate)
    assert report["residue_distance"] is None
    assert report["lower_bound"] is None and report["upper_bound"] is None
    assert report["generator_bound"] is None  # no unit coefficients
    assert report["ok"]
    report = bound_check(QTCode.from_strings(2, ["231|f87|bc7"]))
    assert report["hom_distance"] == 32 and report["lemma_lower_holds"] and report["ok"]


def test_bound_check_all_fixture_rows():
    for row in load_table_rows():
        assert bound_check(build_row_code(row))["ok"], row.generator


def test_literal_lower_bound_counterexample_from_table_2():
    # The (135) cyclic code's image is the published [24,8,8], but its
    # residue code has distance 3: the weight-8 words lie in the residue
    # kernel, so the literal gamma*d lower bound fails while the sound
    # bound (over codewords with nonzero residue) is met with equality.
    report = bound_check(QTCode.from_strings(2, ["135"]))
    assert report["hom_distance"] == 8
    assert report["lower_bound"] == 12
    assert report["lemma_lower_holds"] is False
    assert report["nonkernel_distance"] == 12
    assert report["ok"]


def test_table1_qc6_report():
    report = table1_qc6_report()
    assert len(report) == 21
    for entry in report:
        if entry["m"] % 2 == 1:
            assert entry["qc6_after_scaling"], entry


def test_search_exhaustive_recovers_table_cells():
    cfg = SearchConfig(k=1, lam="3", ell=3, m_values=(2,), seed=1)
    records = search(cfg)
    by_cell = {(r["image"]["length"], r["image"]["dimension"]): r for r in records}
    assert by_cell[(12, 2)]["image"]["min_distance"] == 8
    assert by_cell[(12, 4)]["image"]["min_distance"] == 6
    for r in records:
        assert r["provenance"] == {"seed": 1, "config_hash": config_hash(cfg)}


def test_search_exhaustive_recovers_cyclic_16_4_8():
    cfg = SearchConfig(k=2, lam="1", ell=1, m_values=(2,), seed=0)
    records = search(cfg)
    by_cell = {(r["image"]["length"], r["image"]["dimension"]): r for r in records}
    assert by_cell[(16, 4)]["image"]["min_distance"] == 8


def test_search_determinism_and_jobs_independence():
    cfg = SearchConfig(k=1, lam="3", ell=3, m_values=(2,), seed=7)
    assert search(cfg, jobs=1) == search(cfg, jobs=1)
    assert search(cfg, jobs=1) == search(cfg, jobs=4)
    rnd = SearchConfig(k=1, lam="3", ell=3, m_values=(3,), mode="random",
                       samples=150, seed=9)
    assert search(rnd, jobs=1) == search(rnd, jobs=4)
    different_seed = SearchConfig(k=1, lam="3", ell=3, m_values=(3,),
                                  mode="random", samples=150, seed=10)
    assert config_hash(rnd) != config_hash(different_seed)


def test_search_exhaustive_cap():
    cfg = SearchConfig(k=2, lam="1", ell=1, m_values=(8,), max_candidates_log2=28)
    with pytest.raises(BudgetError):
        search(cfg)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(k=1, mode="stochastic")
    with pytest.raises(ValueError):
        SearchConfig(k=1, m_values=())
