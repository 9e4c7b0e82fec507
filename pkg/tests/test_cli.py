import json
from fractions import Fraction as F

import pytest

from iqprox import formats
from iqprox.cli import main
from iqprox.families import build_example_1_1, random_instance
from iqprox.pipeline import instance


@pytest.fixture
def ex11_path(tmp_path):
    p = tmp_path / "ex11.json"
    formats.save_instance(build_example_1_1(3).instance, str(p))
    return str(p)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_roundtrip_serialization():
    for seed in range(20):
        inst = random_instance(seed)
        assert formats.instance_from_dict(formats.instance_to_dict(inst)) == inst


def test_rational_strings():
    assert formats.rat_to_str(F(3, 4)) == "3/4"
    assert formats.rat_to_str(F(-5)) == "-5"
    assert formats.str_to_rat("3/4") == F(3, 4)
    with pytest.raises(Exception):
        formats.str_to_rat("1.5.2")


def test_digest_stable():
    inst = random_instance(7)
    assert formats.instance_digest(inst) == formats.instance_digest(inst)
    assert formats.instance_digest(inst) != formats.instance_digest(random_instance(8))


def test_cmd_solve(capsys, ex11_path):
    code, doc = run_json(capsys, ["solve", ex11_path])
    assert code == 0
    assert doc["xd"] == ["-3"]
    assert doc["xc"] == ["15/4"]


def test_cmd_solve_missing_file(capsys):
    assert main(["solve", "/nonexistent/inst.json"]) == 2


def test_cmd_solve_infeasible(capsys, tmp_path):
    p = tmp_path / "bad.json"
    formats.save_instance(instance([[1], [-1]], [-1, 0], [1], [0]), str(p))
    assert main(["solve", str(p)]) == 3


def test_cmd_proximity(capsys, ex11_path, tmp_path):
    trace = tmp_path / "trace.json"
    code, doc = run_json(capsys, ["proximity", ex11_path, "--eps", "1/2",
                                  "--trace", str(trace)])
    assert code == 0
    assert doc["case"] == "c1"
    assert doc["x_star_int"] == ["-3"]
    assert doc["distance_int"] == "27/4"
    assert doc["schedule"]["theorem_bound"] == "21"
    assert doc["verdicts"]["int_approx"] is True
    assert json.loads(trace.read_text())


def test_cmd_proximity_bad_eps(capsys, ex11_path):
    assert main(["proximity", ex11_path, "--eps", "0"]) == 2
    assert main(["proximity", ex11_path, "--eps", "x"]) == 2


def test_cmd_proximity_checked_anchor(capsys, ex11_path):
    assert main(["proximity", ex11_path, "--eps", "1/2",
                 "--xd", "0", "--checked"]) == 2


def test_cmd_tightness_prop45(capsys):
    code, doc = run_json(capsys, ["tightness", "prop45", "--n", "2",
                                  "--delta", "1", "--eps", "1/2"])
    assert code == 0
    assert doc["delta_star"] == "14/3"
    assert doc["status"] == "TIGHT"


def test_cmd_tightness_ilp(capsys):
    code, doc = run_json(capsys, ["tightness", "ilp", "--n", "3",
                                  "--delta", "2", "--beta", "1/2"])
    assert code == 0
    assert doc["gap"] == "2"
    assert doc["status"] == "TIGHT"


def test_cmd_tightness_prop46(capsys):
    code, doc = run_json(capsys, ["tightness", "prop46", "--n", "2",
                                  "--delta", "2", "--eps", "1/4"])
    assert code == 0
    assert doc["certified"] is True
    assert doc["certified_radius"] == "4"
    assert doc["bound"] == "2"


def test_cmd_tightness_bad_params(capsys):
    assert main(["tightness", "prop46", "--n", "2", "--delta", "1",
                 "--eps", "1/4"]) == 2


def test_cmd_subdet(capsys, tmp_path):
    from iqprox.families import build_pbar, build_ilp_tightness
    fam = build_ilp_tightness(2, 3, F(1, 2))
    p = tmp_path / "pbar.json"
    formats.save_instance(fam.instance, str(p))
    code, doc = run_json(capsys, ["subdet", str(p)])
    assert code == 0
    assert doc["max_abs_subdeterminant"] == 3


def test_cmd_cone(capsys, ex11_path):
    code, doc = run_json(capsys, ["cone", ex11_path, "--xa", "1", "--xb", "0"])
    assert code == 0
    assert doc["generators"] == [["1"]]


def test_verify_report_roundtrip(capsys, ex11_path, tmp_path):
    code = main(["proximity", ex11_path, "--eps", "1/2"])
    assert code == 0
    report = tmp_path / "report.json"
    report.write_text(capsys.readouterr().out)
    code, doc = run_json(capsys, ["verify-report", str(report)])
    assert code == 0
    assert doc["verified"] is True


def test_verify_report_detects_tampering(capsys, ex11_path, tmp_path):
    main(["proximity", ex11_path, "--eps", "1/2"])
    doc = json.loads(capsys.readouterr().out)
    doc["x_star_int"] = ["3"]  # feasible but a lie about the distance
    report = tmp_path / "bad.json"
    report.write_text(json.dumps(doc))
    assert main(["verify-report", str(report)]) == 4
