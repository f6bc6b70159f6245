# tests/test_cli.py
# End-to-end runs of app.py subcommands: exit codes, JSON reports and input errors.

import json

import pytest

from src.cli.main import main
from src.lie.forms import trace_form
from src.manin.triples import difference_double
from src.utils.io import read_json, write_json


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_check_lie_passes(capsys, fixture_path):
    code = main(["check-lie", fixture_path("sl2.json")])
    assert code == 0
    assert "[check-lie] status: pass" in capsys.readouterr().out


def test_check_lie_reports_jacobi_witness(capsys, fixture_path):
    code, doc = run_json(capsys, ["check-lie", fixture_path("sl2_mutated.json")])
    assert code == 1
    assert doc["status"] == "fail"
    assert doc["checks"][0]["witness"]["identity"] == "jacobi"


def test_factory_names_work_as_files(capsys):
    code, doc = run_json(capsys, ["check-lie", "heisenberg"])
    assert code == 0
    assert doc["inputs"]["algebra"] == {"factory": "heisenberg"}


def test_report_layout(capsys, fixture_path):
    _, doc = run_json(capsys, ["check-lie", fixture_path("sl2.json")])
    assert set(doc) == {"command", "ledger", "inputs", "status", "checks", "result", "timing"}
    assert doc["ledger"]["associator_scale"] == "-1/4"
    assert len(doc["inputs"]["algebra"]["sha256"]) == 64


def test_json_is_deterministic_apart_from_timing(capsys, fixture_path):
    argv = ["cybe", fixture_path("sl2.json"), "--r", fixture_path("standard_r.json")]
    _, first = run_json(capsys, argv)
    _, second = run_json(capsys, argv)
    first.pop("timing")
    second.pop("timing")
    assert first == second


def test_cybe_standard_r(capsys, fixture_path):
    code, doc = run_json(capsys, ["cybe", fixture_path("sl2.json"), "--r", fixture_path("standard_r.json")])
    assert code == 0
    assert doc["result"]["lam"]["terms"] == [{"idx": ["e", "f"], "coef": "1/4"}]
    assert doc["result"]["cybe"]["nonzero"] == 0


def test_inline_tensor_literal(capsys, fixture_path):
    code, doc = run_json(capsys, ["cybe", fixture_path("sl2.json"), "--r", '[{"idx": ["e", "f"], "coef": "1"}]'])
    assert code == 1
    assert doc["inputs"]["r"]["inline"] is True
    assert doc["checks"][0]["witness"]["identity"] == "cybe"
    assert "cybe" in doc["checks"][0]["residuals"]


def test_malformed_coefficient_is_an_input_error(capsys, fixture_path):
    code = main(["cybe", fixture_path("sl2.json"), "--r", '[{"idx": ["e", "f"], "coef": "1.5"}]'])
    assert code == 2
    assert "[cli]" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["check-lie", "no_such_algebra.json"]) == 2
    assert "not found" in capsys.readouterr().err


def test_unknown_subcommand(capsys):
    assert main(["frobnicate"]) == 2


def test_induce_on_the_borel(capsys, fixture_path):
    code, doc = run_json(capsys, ["induce", fixture_path("sl2.json"), "--sub", "e,h",
                                  "--casimir", fixture_path("killing.json")])
    assert code == 0
    assert doc["result"]["qlb"]["delta"]["terms"] == [{"idx": ["e", "e", "h"], "coef": "1/2"}]
    assert doc["result"]["qlb"]["phi"]["nonzero"] == 0


def test_induce_precondition_failure(capsys, fixture_path):
    code, doc = run_json(capsys, ["induce", fixture_path("sl2.json"), "--sub", "h",
                                  "--casimir", fixture_path("killing.json")])
    assert code == 1
    assert doc["status"] == "error"
    assert doc["checks"][-1]["name"] == "induce"


def test_verify_morphism(capsys, fixture_path):
    code, doc = run_json(capsys, ["verify-morphism", fixture_path("sl2.json"), "--sub", "e,h",
                                  "--casimir", fixture_path("killing.json")])
    assert code == 0
    assert [c["name"] for c in doc["checks"]] == ["coisotropic_morphism.invariance_identities",
                                                 "coisotropic_morphism.invariance_equivalence",
                                                 "coisotropic_morphism.f_morphism"]


def test_casimir_phi(capsys, fixture_path):
    code, doc = run_json(capsys, ["casimir-phi", fixture_path("sl2.json"), "--casimir", fixture_path("killing.json")])
    assert code == 0
    assert doc["result"]["phi"]["terms"] == [{"idx": ["e", "f", "h"], "coef": "-1/4"}]


def test_twist_and_check_qlb(capsys, fixture_path):
    code, doc = run_json(capsys, ["twist", fixture_path("sl2.json"), "--lambda", '[{"idx": ["e", "f"], "coef": "1/2"}]'])
    assert code == 0
    assert doc["result"]["qlb"]["delta"]["terms"] == [{"idx": ["e", "e", "h"], "coef": "-1/2"},
                                                      {"idx": ["f", "f", "h"], "coef": "-1/2"}]
    code = main(["check-qlb", fixture_path("sl2.json"), "--delta", fixture_path("std_delta.json")])
    assert code == 0


def test_dynamical(capsys, fixture_path):
    code, doc = run_json(capsys, ["dynamical", fixture_path("sl2.json"), "--sub", "h", "--vars", "x",
                                  "--r", fixture_path("dynamical_r.json")])
    assert code == 0
    assert doc["status"] == "pass"


def test_double_and_standard_triple(capsys, fixture_path):
    code, _ = run_json(capsys, ["double", fixture_path("sl2.json"), "--delta", fixture_path("std_delta.json")])
    assert code == 0
    code, doc = run_json(capsys, ["std-triple", "--algebra", "sl2"])
    assert code == 0
    assert doc["result"]["coboundary"]["terms"] == [{"idx": ["u1", "u2"], "coef": "1/2"}]


def test_triple_check_with_inline_pairing(capsys, sl2, tmp_path):
    doubled = str(tmp_path / "sl2_double.json")
    write_json(doubled, difference_double(sl2, trace_form(sl2)).d.describe())
    pairing = json.dumps([[0, 1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 2, 0, 0, 0],
                          [0, 0, 0, 0, -1, 0], [0, 0, 0, -1, 0, 0], [0, 0, 0, 0, 0, -2]])
    code, doc = run_json(capsys, ["triple-check", doubled, "--pairing", pairing,
                                  "--g", '[{"e_1": 1, "e_2": 1}, {"f_1": 1, "f_2": 1}, {"h_1": 1, "h_2": 1}]',
                                  "--gstar", '["e_1", "f_2", {"h_1": 1, "h_2": -1}]'])
    assert code == 0
    assert doc["result"]["bialgebra"]["lie_bialgebra"] is True


def test_invariants_and_cohomology(capsys):
    code, doc = run_json(capsys, ["invariants", "sl3", "--module", "sym2"])
    assert code == 0
    assert doc["result"]["dimension"] == 1
    _, doc = run_json(capsys, ["cohomology", "heisenberg", "--module", "trivial", "--degree", "2"])
    assert doc["result"]["dimension"] == 2


@pytest.mark.parametrize("argv", [
    ["--shift", "1", "--delta", "std_delta.json"],
    ["--shift", "2", "--casimir", "killing.json"],
])
def test_mc_residual(capsys, fixture_path, argv):
    argv = [fixture_path(a) if a.endswith(".json") else a for a in argv]
    code, doc = run_json(capsys, ["mc-residual", fixture_path("sl2.json")] + argv)
    assert code == 0
    assert doc["checks"][0]["name"] == "mc"
    assert doc["checks"][0]["details"]["truncations"] >= 0


def test_pol_bg_writes_tables(capsys, fixture_path, tmp_path):
    out = str(tmp_path / "polbg.json")
    code = main(["pol-bg", fixture_path("sl2.json"), "--shift", "1", "--max-weight", "3", "--out", out])
    assert code == 0
    doc = read_json(out)
    assert doc["meta"]["shift"] == 1
    assert doc["slices"]


def test_config_override_limits_the_window(capsys, fixture_path, tmp_path):
    cfg = tmp_path / "small.yaml"
    cfg.write_text("window:\n  max_weight: 3\n", encoding="utf-8")
    code = main(["pol-bg", fixture_path("sl2.json"), "--shift", "1", "--max-weight", "4", "--config", str(cfg)])
    assert code == 2
    code = main(["pol-bg", fixture_path("sl2.json"), "--shift", "1", "--max-weight", "3", "--config", str(cfg)])
    assert code == 0


@pytest.mark.parametrize("text", ["- 1\n- 2\n", "window: 3\n", "window: [unclosed\n"])
def test_bad_config_is_an_input_error(capsys, fixture_path, tmp_path, text):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text(text, encoding="utf-8")
    assert main(["check-lie", fixture_path("sl2.json"), "--config", str(cfg)]) == 2
    assert "[cli]" in capsys.readouterr().err
