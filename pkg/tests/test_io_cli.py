import json

import numpy as np
import pytest

from cegis_clf import cli
from cegis_clf.errors import ConfigError, ParseError
from cegis_clf.io import (bundled_problem, candidate_from_dict, dump_problem, load_candidate,
                          load_problem, parse_problem)
from cegis_clf.uncertainty import EllipsoidA, IntervalAB, PolytopeVerts

from conftest import A_CENTROID, A_HI, A_LO


def test_bundled_polytopic(va_spec):
    om = va_spec.omega
    assert isinstance(om, IntervalAB)
    assert (va_spec.n, va_spec.m, om.q) == (4, 1, 16)
    assert np.array_equal(om.A_lo, A_LO) and np.array_equal(om.A_hi, A_HI)
    assert om.B_lo.ravel().tolist() == [0, 0, 0, 1]


def test_bundled_spherical(vb_spec):
    om = vb_spec.omega
    assert isinstance(om, EllipsoidA)
    assert np.allclose(om.Q, 5 * np.eye(4))
    assert np.allclose(om.c, A_CENTROID.ravel(order="F"))
    assert om.B.ravel().tolist() == [0, 1]


def test_minimal_defaults():
    s = load_problem(bundled_problem("scalar_minimal"))
    assert (s.eps, s.eta, s.w_max, s.n_t, s.max_iters, s.seed) == (1e-3, 1e3, 1e3, 3, 100, 0)


@pytest.mark.parametrize("name", ["polytopic_4x4", "spherical_2x2", "uncontrollable_2x2"])
def test_problem_round_trip(name):
    s = load_problem(bundled_problem(name))
    s2 = parse_problem(dump_problem(s))
    assert dump_problem(s2) == dump_problem(s)


def test_polytope_and_optional_fields():
    d = {"n": 1, "m": 1, "eps": 0.01, "eta": 2.0, "seed": 4,
         "uncertainty": {"type": "polytope", "vertices": [{"A": [[0.0]], "B": [[1.0]]},
                                                           {"A": [[1.0]], "B": [[1.0]]}]},
         "initial_sample": {"A": [[0.5]], "B": [[1.0]]}}
    s = parse_problem(json.dumps(d))
    assert isinstance(s.omega, PolytopeVerts) and s.seed == 4 and s.eta == 2.0
    assert parse_problem(dump_problem(s)).initial()[0][0, 0] == 0.5


def test_parse_errors():
    with pytest.raises(ParseError) as e:
        parse_problem('{"n": 1,\n "m": }')
    assert e.value.line == 2
    with pytest.raises(ParseError) as e:
        parse_problem('{"m": 1, "uncertainty": {}}')
    assert e.value.field == "n"
    with pytest.raises(ParseError):
        parse_problem('{"n": 1, "m": 1, "bogus": 1, "uncertainty": {}}')
    base = {"n": 1, "m": 1, "uncertainty": {"type": "interval", "A_lo": [[0.0]],
                                             "A_hi": [[1.0]], "B": [[1.0, 2.0]]}}
    with pytest.raises(ParseError) as e:
        parse_problem(json.dumps(base))
    assert e.value.field == "uncertainty.B"
    base["uncertainty"]["type"] = "cone"
    with pytest.raises(ParseError):
        parse_problem(json.dumps(base))


def test_config_errors():
    d = {"n": 1, "m": 1, "eps": 1.0, "eta": 0.5,
         "uncertainty": {"type": "interval", "A_lo": [[0.0]], "A_hi": [[1.0]], "B": [[1.0]]}}
    with pytest.raises(ConfigError):
        parse_problem(json.dumps(d))
    d["eta"] = 2.0
    d["uncertainty"]["A_lo"] = [[2.0]]
    with pytest.raises(ConfigError):
        parse_problem(json.dumps(d))


def test_candidate_from_report_or_plain():
    c = candidate_from_dict({"candidate": {"P": [[1.0]], "K": [[0.5]]}})
    assert c.P[0, 0] == 1.0 and c.K[0, 0] == 0.5
    with pytest.raises(ParseError):
        candidate_from_dict({"candidate": None})
    with pytest.raises(ParseError):
        candidate_from_dict({"P": [[1.0]], "K": [[1.0, 2.0]]})


def test_cli_synth_certify_round_trip(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = cli.main(["synth", "scalar_minimal.json", "--out", str(out), "--quiet"])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "certified"
    assert np.array(rep["candidate"]["P"]).shape == (1, 1)
    assert rep["config"]["eps"] == 1e-3 and rep["config"]["n_t"] == 3
    assert cli.main(["certify", "scalar_minimal.json", "--candidate", str(out)]) == 0
    assert json.loads(capsys.readouterr().out)["passed"]
    assert cli.main(["verify", "scalar_minimal.json", "--candidate", str(out)]) == 0


def test_cli_infeasible_exit(tmp_path):
    out = tmp_path / "rep.json"
    assert cli.main(["synth", "uncontrollable_2x2.json", "--out", str(out), "--quiet"]) == 1
    rep = json.loads(out.read_text())
    assert rep["status"] == "infeasible" and rep["candidate"] is None


def test_cli_budget_exit(tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({
        "n": 1, "m": 1, "initial_sample": {"A": [[1.0]], "B": [[1.0]]},
        "uncertainty": {"type": "interval", "A_lo": [[0.5]], "A_hi": [[1.5]],
                        "B_lo": [[0.5]], "B_hi": [[1.0]]}}))
    assert cli.main(["synth", str(p), "--max-iters", "1", "--quiet", "--out",
                     str(tmp_path / "r.json")]) == 2


def test_cli_certify_failing_candidate(tmp_path, capsys):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"P": [[1.0]], "K": [[0.0]]}))
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"n": 1, "m": 1, "uncertainty": {
        "type": "interval", "A_lo": [[0.0]], "A_hi": [[2.0]], "B": [[1.0]]}}))
    assert cli.main(["certify", str(p), "--candidate", str(c)]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert not payload["passed"] and payload["worst"] < 0


def test_cli_usage_errors(tmp_path, capsys):
    assert cli.main([]) == 3
    assert cli.main(["synth"]) == 3
    assert cli.main(["frobnicate"]) == 3
    assert cli.main(["synth", str(tmp_path / "missing.json")]) == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert cli.main(["synth", str(bad)]) == 3
    assert "error" in capsys.readouterr().err


def test_load_candidate_bad_json(tmp_path):
    f = tmp_path / "c.json"
    f.write_text("[")
    with pytest.raises(ParseError):
        load_candidate(f)
