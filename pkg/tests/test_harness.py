import csv
import io
import json

import jsonschema
import pytest

from critgroup import harness
from critgroup.exactlin import AbelianGroup, IntMatrix, canonicalize
from critgroup.graphs import family, reduced_laplacian

R = IntMatrix.from_rows

CLAIM_IDS = [
    "THM21_T", "THM21_P", "THM21_K", "THM21_C", "COR23",
    "LEMMA22_i", "LEMMA22_ii", "LEMMA22_iii", "LEMMA22_iv",
    "LEMMA31", "THM32", "COR33", "COR34", "COR35",
    "COR39_i", "COR39_ii", "COR39_iii", "COR39_iv",
    "COR310_i", "COR310_ii", "COR310_iii",
    "G1", "G2", "G3", "G4", "G5", "G6", "G7",
    "REMARK_fnx0", "REMARK_pmn", "REMARK_lorenzini",
]


@pytest.fixture(scope="module")
def all_reports():
    return harness.verify_all()


def test_registry_covers_every_claim_once():
    assert sorted(harness.CLAIMS) == sorted(CLAIM_IDS)


def test_verify_all_covers_every_claim_once(all_reports):
    names = [r.claim for r in all_reports]
    assert sorted(names) == sorted(CLAIM_IDS) and len(names) == len(set(names))


def test_verdicts_match_expectations(all_reports):
    assert harness.unexpected(all_reports, harness.load_expectations()) == []


def test_report_invariants(all_reports):
    for r in all_reports:
        assert r.failures == sum(not p.match for p in r.points)
        if r.verdict in (harness.REFUTED, harness.PARTIAL):
            assert r.counterexamples
            assert all(c.confirmed for c in r.counterexamples), r.claim
        else:
            assert r.failures == 0
        assert len(r.counterexamples) <= harness.COUNTEREXAMPLE_CAP


def test_report_validates_against_schema(all_reports):
    doc = json.loads(harness.report_json(all_reports, include_timing=True))
    jsonschema.validate(doc, harness.report_schema())
    doc = json.loads(harness.report_json(all_reports))
    jsonschema.validate(doc, harness.report_schema())
    assert all("timing" not in r for r in doc["reports"])


def test_schema_rejects_bad_documents():
    schema = harness.report_schema()
    good = json.loads(harness.report_json([harness.verify("G2", {"m": (3, 3), "l": (1, 1), "n": (1, 1)})]))
    jsonschema.validate(good, schema)
    for mutate in (
        lambda d: d.update(schema_version=2),
        lambda d: d["reports"][0].update(verdict="MAYBE"),
        lambda d: d["reports"][0].update(counterexamples=[]),
        lambda d: d["reports"][0]["counterexamples"][0].update(oracle_order=320),
    ):
        bad = json.loads(json.dumps(good))
        mutate(bad)
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(bad, schema)


def test_reports_are_deterministic():
    first = harness.report_json(harness.verify_all(["G2", "COR35", "LEMMA22_iv", "THM32"]))
    second = harness.report_json(harness.verify_all(["G2", "COR35", "LEMMA22_iv", "THM32"]))
    assert first == second
    assert harness.report_csv(harness.verify_all(["G5"])) == harness.report_csv(harness.verify_all(["G5"]))


def test_parallel_run_matches_serial():
    names = ["G2", "G4", "COR34"]
    assert harness.report_json(harness.verify_all(names, jobs=2)) == harness.report_json(harness.verify_all(names))


# --- required anchors ----------------------------------------------------------


def test_cycle_family_cone_anchors():
    r = harness.verify("G2", {"m": (3, 3), "l": (1, 1), "n": (0, 1)})
    assert r.verdict == harness.REFUTED
    by_n = {c.params["n"]: c for c in r.counterexamples}
    assert by_n[1].claimed_order == "432" and by_n[1].oracle_order == "320"
    assert by_n[1].kind == "order" and by_n[1].confirmed
    assert by_n[0].kind == "finite-vs-infinite" and by_n[0].confirmed
    assert by_n[0].oracle == ["6", "0"]


def test_examples_from_the_operation_list():
    assert harness.verify("COR35", {"n": (2, 8), "l": (1, 3), "k": (1, 3)}).verdict == harness.VERIFIED
    assert harness.verify("REMARK_lorenzini", {"m": (2, 6)}).verdict == harness.VERIFIED


def test_identity_reports_have_definitive_verdicts(all_reports):
    verdicts = {r.claim: r for r in all_reports}
    for name in ("LEMMA22_ii", "LEMMA22_iv"):
        assert verdicts[name].verdict == harness.REFUTED
        assert any("holds" in note for note in verdicts[name].notes), verdicts[name].notes


# --- oracle confirmation ------------------------------------------------------


def test_confirm_flags_a_wrong_claim():
    M = reduced_laplacian(family("Lmm", 3, 1, 1))
    group, confirmed, notes = harness.confirm(M, AbelianGroup((2, 216)))
    assert group == AbelianGroup((8, 40)) and confirmed
    assert "det gives order 320" in notes


def test_confirm_structure_only_mismatch_uses_local_oracle():
    # same order, different structure: det cannot tell, local elimination at 2 can
    M = R([[4, 0], [0, 1]])
    group, confirmed, notes = harness.confirm(M, AbelianGroup((2, 2)))
    assert group == AbelianGroup((4,)) and confirmed
    assert "p=2" in notes


def test_confirm_correct_claim_is_not_a_counterexample():
    M = R([[2, 0], [0, 3]])
    _, confirmed, _ = harness.confirm(M, AbelianGroup((6,)))
    assert not confirmed


def test_compare_group_reports_inexact_division():
    from critgroup.closedform import FormulaViolation

    def boom():
        raise FormulaViolation("demo", {"a": 1}, "1/2", 1, 2)

    pt = harness.compare_group({"a": 1}, boom, R([[2]]))
    assert not pt.match and pt.kind == "inexact-division" and pt.claimed is None


# --- verdict classification ----------------------------------------------------


def _fake_claim(points):
    return harness.Claim("FAKE", "synthetic", {"n": (0, 3)}, {"n": (0, None)}, lambda sweep: iter(points), None)


def test_boundary_only_failures_are_partial(monkeypatch):
    good = harness.PointResult({"n": 1}, ["2"], ["2"], True)
    edge = harness.PointResult({"n": 0}, ["2"], ["0"], False, boundary=True, kind="finite-vs-infinite")
    monkeypatch.setitem(harness.CLAIMS, "FAKE", _fake_claim([edge, good]))
    assert harness.verify("FAKE").verdict == harness.PARTIAL
    inner = harness.PointResult({"n": 2}, ["2"], ["3"], False, kind="order")
    monkeypatch.setitem(harness.CLAIMS, "FAKE", _fake_claim([edge, good, inner]))
    assert harness.verify("FAKE").verdict == harness.REFUTED


def test_counterexamples_are_capped(monkeypatch):
    bad = [harness.PointResult({"n": i}, ["2"], ["3"], False, kind="order") for i in range(250)]
    monkeypatch.setitem(harness.CLAIMS, "FAKE", _fake_claim(bad))
    r = harness.verify("FAKE")
    assert r.failures == 250 and len(r.counterexamples) == harness.COUNTEREXAMPLE_CAP
    assert any("250" in n for n in r.notes)


# --- sweeps -----------------------------------------------------------------


def test_parse_sweep():
    assert harness.parse_sweep("m=3:3,l=1:2,samples=50") == {"m": (3, 3), "l": (1, 2), "samples": 50}
    assert harness.parse_sweep("") == {}
    with pytest.raises(harness.SweepError):
        harness.parse_sweep("m3")
    with pytest.raises(harness.SweepError):
        harness.parse_sweep("m=a:b")


@pytest.mark.parametrize(
    "claim, sweep",
    [
        ("G2", {"m": (2, 4)}),
        ("G1", {"l": (0, 2)}),
        ("COR34", {"n": (3, 5)}),
        ("G1", {"q": (1, 2)}),
        ("G1", {"m": 3}),
        ("G1", {"m": (4, 3)}),
        ("THM32", {"samples": (1, 2)}),
    ],
)
def test_bad_sweeps_are_rejected(claim, sweep):
    with pytest.raises(harness.SweepError):
        harness.verify(claim, sweep)


def test_unknown_claim():
    with pytest.raises(harness.UnknownClaim):
        harness.verify("THM99")


def test_csv_has_one_row_per_point():
    reports = harness.verify_all(["COR33", "G2"])
    rows = list(csv.reader(io.StringIO(harness.report_csv(reports))))
    assert rows[0][:2] == ["claim", "params"]
    assert len(rows) - 1 == sum(r.points_checked for r in reports)
    g2 = [row for row in rows[1:] if row[0] == "G2"]
    assert all(row[4] == "MISMATCH" for row in g2)


def test_canonical_and_raw_factors_both_reported():
    r = harness.verify("G2", {"m": (3, 3), "l": (1, 1), "n": (1, 1)})
    c = r.counterexamples[0]
    assert c.claimed == canonicalize([1, 1, 1, 8, 1, 54]).as_strings()
    assert "raw factors [1, 1, 1, 8, 1, 54]" in c.detail


def test_complete_cone_reports_effective_range():
    notes = harness.verify("COR35", {"n": (2, 5), "l": (1, 2), "k": (0, 2)}).notes
    assert any("effective range starts at n = 2" in n for n in notes)
    assert harness.verify("COR35", {"n": (4, 5), "l": (1, 1), "k": (1, 1)}).notes == []
