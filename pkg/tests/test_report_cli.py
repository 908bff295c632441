import json

import pytest

from eislat import codes
from eislat.cli import SUITES, Options, main, run_suite
from eislat.report import Report, VerificationRecord, check, emit_report, fmt, parse_json


def sample_report():
    recs = [
        check("a.one", "first", 3, 3, "claim one"),
        check("a.two", "second", (1, 2), (1, 3), "claim two"),
        VerificationRecord("a.three", "third", "x", "y", "claim three"),
    ]
    return Report("demo", "0.1.0", {"cap": 5}, recs, 1.25)


def test_fmt():
    from fractions import Fraction
    assert fmt(True) == "true" and fmt(Fraction(3, 2)) == "3/2" and fmt(Fraction(4, 2)) == "2"
    assert fmt(((1, 2), [3])) == "((1, 2), (3))"


def test_structured_round_trip():
    r = sample_report()
    back = parse_json(emit_report(r, "structured").decode())
    assert back == r
    assert back.to_dict() == r.to_dict()


def test_text_names_failing_anchors():
    text = emit_report(sample_report(), "text").decode()
    assert "<claim two>" in text and "<claim three>" in text
    assert "<claim one>" not in text
    assert len([ln for ln in text.splitlines() if ln.startswith("[")]) == 3


def test_empty_report_passes():
    r = Report("empty", "0.1.0", {})
    assert r.passed and r.status == "pass"
    assert parse_json(emit_report(r, "json").decode()).passed


def test_tampered_payload_rejected():
    d = sample_report().to_dict()
    d["status"] = "pass"
    with pytest.raises(ValueError):
        Report.from_dict(d)
    d = sample_report().to_dict()
    d["checks"][0]["status"] = "fail"
    with pytest.raises(ValueError):
        Report.from_dict(d)
    d["schema"] = 99
    with pytest.raises(ValueError):
        Report.from_dict(d)


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(sample_report(), "yaml")


def test_idempotent_payload():
    a = run_suite("codes", Options())
    b = run_suite("codes", Options())
    assert json.dumps(a.comparable()) == json.dumps(b.comparable())
    assert a.passed


def test_codes_suite_reports_censuses():
    rep = run_suite("codes")
    actual = {c.check_id: c.actual for c in rep.checks}
    assert any(v == "(1, 156, 26, 468, 78)" for v in actual.values())
    assert any(v == "(13, 78, 234, 234, 156, 13, 1)" for v in actual.values())


def test_root_lattices_suite_has_four_rows():
    rep = run_suite("root-lattices", Options())
    assert rep.passed
    assert {c.check_id.split(".")[1] for c in rep.checks} == {"A2", "D4", "E6", "E8"}


def test_exit_codes(capsys, tmp_path):
    assert main(["codes"]) == 0
    out = capsys.readouterr().out
    assert "checks passed; overall PASS" in out
    path = tmp_path / "r.json"
    assert main(["model", "--format", "json", "-o", str(path)]) == 0
    assert parse_json(path.read_text()).passed
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["codes", "--jobs", "0"])
    assert e.value.code == 2


def test_cap_exhaustion_is_a_failed_check():
    rep = run_suite("root-lattices", Options(closure_cap=10))
    assert not rep.passed
    assert any(c.check_id.endswith(".cap") for c in rep.failures())


def test_unknown_suite_in_api():
    with pytest.raises(ValueError):
        run_suite("table9")
    assert "all" not in SUITES


def test_corrupted_golay_fails_all(monkeypatch, capsys):
    bad = list(codes.GOLAY_ROWS)
    bad[2] = tuple((x + 1) % 3 if i == 11 else x for i, x in enumerate(bad[2]))
    monkeypatch.setattr(codes, "GOLAY_ROWS", tuple(bad))
    assert main(["all"]) == 1
    out = capsys.readouterr().out
    failing = [ln for ln in out.splitlines() if ln.startswith("[FAIL]")]
    assert failing and all("codes.golay" in ln for ln in failing)
