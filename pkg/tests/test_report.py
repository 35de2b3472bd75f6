import json

from pvzeta.report import CheckReport, sort_reports


def make(check="c", s=0.5, lhs=1.0, rhs=1.0 + 1e-9):
    return CheckReport(check=check, params={"s": s}, lhs=lhs, rhs=rhs, tolerance=1e-6, anchor="Eq1")


def test_pass_fail_threshold():
    assert make().passed
    assert not make(rhs=2.0).passed


def test_json_round_trip_and_schema():
    rep = make()
    d = json.loads(rep.to_json())
    assert d["schema"] == "1"
    assert d["status"] == "pass"
    assert d["anchor"] == "Eq1"
    assert "lhs" in d and "rhs" in d and "rel_residual" in d


def test_json_deterministic():
    assert make().to_json() == make().to_json()


def test_complex_serialization():
    rep = make(lhs=1 + 2j, rhs=1 + 2j)
    d = json.loads(rep.to_json())
    assert d["lhs"] == {"im": 2.0, "re": 1.0}


def test_csv_row_matches_header():
    rep = make()
    assert len(rep.csv_row()) == len(CheckReport.CSV_HEADER)


def test_sort_reports_by_check_then_params():
    reps = [make(check="b", s=0.2), make(check="a", s=0.9), make(check="b", s=0.1)]
    out = sort_reports(reps)
    assert [r.check for r in out] == ["a", "b", "b"]
    assert out[1].params["s"] < out[2].params["s"]
