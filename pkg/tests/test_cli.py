import json

import pytest

from jordanian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_order_zero_is_a_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--order", "0")
    assert code == 2
    assert "--order" in err


def test_unknown_group_is_a_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "--checks", "nonsense")
    assert code == 2


def test_bad_rational_is_a_usage_error(capsys):
    code, _, _ = run(capsys, "verify", "--u", "1/0")
    assert code == 2


def test_majid_at_quarter_fails(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--checks", "majid", "--u", "1/4", "--order", "4", "--report", str(path))
    assert code == 1
    data = json.loads(path.read_text())
    assert {d["status"] for d in data} == {"fail"}
    assert {d["first_residual_order"] for d in data} == {1}
    assert "FAIL" in out


def test_majid_at_half_passes(capsys):
    code, out, _ = run(capsys, "verify", "--checks", "majid", "--order", "4")
    assert code == 0
    assert out.strip().endswith("3/3 checks passed")


def test_json_report_is_sorted_and_stable(capsys):
    argv = ["verify", "--checks", "reductions,relations", "--order", "3", "--u", "1/2", "--format", "json"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0
    assert first == second
    data = json.loads(first)
    names = [d["check"] for d in data]
    assert names == sorted(names)
    assert set(data[0]) == {"check", "family", "u", "N", "status", "first_residual_order", "max_terms"}


def test_expand_examples(capsys):
    code, out, _ = run(capsys, "expand", "F0", "--order", "0")
    assert code == 0
    assert out.strip() == "1/1 * kappa^-0 * P0^0 P1^0 D^0 ⊗ P0^0 P1^0 D^0"
    code, out, _ = run(capsys, "expand", "coproduct:P0", "--family", "R", "--u", "1/2", "--order", "2", "--v", "1,0")
    assert code == 0
    assert "kappa^-2" in out
    code, _, _ = run(capsys, "expand", "nonsense")
    assert code == 2


def test_star_examples(capsys):
    code, out, _ = run(capsys, "star", "--u", "0.5", "--kappa", "1", "--v", "1,0", "--k", "1,0", "--q", "1,0", "--format", "json")
    assert code == 0
    assert json.loads(out)["outputs"]["amplitude"] == pytest.approx(0.8, abs=1e-12)
    code, out, _ = run(capsys, "star", "--u", "0", "--k", "0.3,0.2", "--q", "0,0")
    assert code == 0
    assert "amplitude = 1.0" in out
    assert "dvec = 0.3 0.2" in out


def test_star_domain_violation(capsys):
    code, _, err = run(capsys, "star", "--u", "1/2", "--k=4,0", "--q=-4,0")
    assert code == 1
    assert "requires" in err


def test_ode_check(capsys):
    code, out, _ = run(capsys, "ode-check", "--samples", "20", "--seed", "42", "--u", "1/4")
    assert code == 0
    assert out.strip().endswith("checks passed")


def test_full_verify_at_default_settings(capsys, tmp_path):
    path = tmp_path / "full.json"
    code, out, _ = run(capsys, "verify", "--order", "6", "--dim", "2", "--report", str(path))
    data = json.loads(path.read_text())
    assert code == 0, out
    assert len(data) >= 40
    assert all(d["status"] == "pass" for d in data)
    assert [d["check"] for d in data] == sorted(d["check"] for d in data)
