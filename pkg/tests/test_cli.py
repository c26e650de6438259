# tests/test_cli.py
from __future__ import annotations

import csv
import io
import json

import pytest

from rapprox.cli.main import main
from rapprox.cli.scenario import context_from_flags, custom_preset, parse_scenario
from rapprox.core.errors import ScenarioError


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def test_lattice(capsys):
    assert main(["lattice", "--preset", "hirzebruch:2"]) == 0
    out = _json(capsys)
    assert out["signature"] == [1, 1]
    assert out["hodge"] is True
    assert out["dual_basis"] == ["F", "S+2F"]


def test_lattice_table(capsys):
    assert main(["lattice", "--preset", "case2:2", "--labels", "F,D1,D2,D3"]) == 0
    assert _json(capsys)["table"]["rows"] == [[0, 1, 1, 1], [1, 2, 2, 2], [1, 2, 1, 2], [1, 2, 2, 1]]


def test_cones_dual(capsys):
    assert main(["cones", "dual", "--preset", "blowup_p2:4"]) == 0
    out = _json(capsys)
    assert out["ray_count"] == 10
    assert out["matches_nef"] is True


def test_cones_check_with_divisor(capsys):
    assert main(["cones", "check", "--preset", "blowup_p2:4", "--divisor", "E1"]) == 0
    out = _json(capsys)
    assert out["dual_pair"] is True
    assert out["divisor"]["nef"] is False
    assert out["divisor"]["certificate"] is not None


def test_cones_facets(capsys):
    assert main(["cones", "dual", "--preset", "hirzebruch:1", "--facets"]) == 0
    assert _json(capsys)["facets"] == [[0, 1], [1, 0]]
    assert main(["cones", "check", "--preset", "hirzebruch:1", "--facets"]) == 0
    assert _json(capsys)["facets"] == [[-1, 1], [1, 0]]
    assert main(["cones", "dual", "--preset", "hirzebruch:1"]) == 0
    assert "facets" not in _json(capsys)


def test_cones_subdivide(capsys):
    assert main(["cones", "subdivide", "--preset", "simplefibres:3,1", "--catalog", "S,F1"]) == 0
    out = _json(capsys)
    assert out["candidates"] == ["S", "F1"]
    assert len(out["cells"]) == 2


def test_predict(capsys):
    assert main(["predict", "--preset", "hirzebruch:1", "--catalog", "F,S", "--divisor", "S+3F"]) == 0
    out = _json(capsys)
    assert out["alpha"] == "1"
    assert out["winners"] == ["F"]


def test_predict_plus(capsys):
    argv = ["predict", "--preset", "hirzebruch:1", "--catalog", "F,S", "--divisor", "S+3F", "--plus", "S+2F"]
    assert main(argv) == 0
    assert _json(capsys)["sum"] == {"plus": "S+2F", "divisor": "2S+5F", "common_winners": ["F"], "kept": True}


def test_predict_not_ample_fails():
    assert main(["predict", "--preset", "hirzebruch:1", "--catalog", "F", "--divisor", "F"]) == 1


def test_enumerate(capsys):
    assert main(["enumerate", "--space", "p1", "--max-height", "1"]) == 0
    out = _json(capsys)
    assert out["count"] == out["closed_form_count"] == 4
    assert sorted(out["points"]) == ["0:1", "1:-1", "1:0", "1:1"]


def test_enumerate_csv(tmp_path):
    target = tmp_path / "points" / "p2.csv"
    assert main(["enumerate", "--space", "p2", "--max-height", "1", "--format", "csv", "--out", str(target)]) == 0
    rows = list(csv.DictReader(io.StringIO(target.read_text())))
    assert len(rows) == 13
    assert set(rows[0]) == {"point", "height"}


def test_enumerate_ladder(capsys):
    assert main(["enumerate", "--space", "p2", "--ladder", "80,10,20,40"]) == 0
    out = _json(capsys)
    assert out["ladder"] == [10, 20, 40, 80]
    growth = out["growth"]
    assert growth["slope_a"] == pytest.approx(3.0, abs=0.1)
    assert growth["slope_b"] == pytest.approx(2.0, abs=0.1)
    assert (growth["dominant"], growth["a"], growth["b"]) == ("a", "p2", "hyperplane")


def test_enumerate_ladder_on_p1(capsys):
    assert main(["enumerate", "--space", "p1", "--ladder", "10,20,40,80"]) == 0
    assert _json(capsys)["growth"]["slope_b"] == pytest.approx(0.0, abs=1e-9)


def test_enumerate_point_of_wrong_dimension():
    assert main(["enumerate", "--space", "p2", "--point", "0:1"]) == 2


def test_alpha_on_cusp(capsys):
    assert main(["alpha", "--preset", "cusp", "--max-height", "120", "--radius", "1/20"]) == 0
    out = _json(capsys)
    assert out["predicted_alpha"] == "3/2"
    assert out["tail_median_gamma"] == pytest.approx(1.5)


def test_alpha_on_line(capsys):
    assert main(["alpha", "--max-height", "200", "--radius", "1/10"]) == 0
    out = _json(capsys)
    assert out["predicted_alpha"] == "1"
    assert out["min_dist_height"] == "1"


def test_alpha_chart_metric(capsys):
    assert main(["alpha", "--max-height", "300", "--radius", "1/10", "--metric", "chart"]) == 0
    out = _json(capsys)
    assert out["metric"] == "chart"
    assert out["metric_delta"] <= 0.05
    assert out["ratio_bounds"] == ["1", "1"]
    assert out["tail_median_gamma"] == pytest.approx(out["chordal_tail_median_gamma"], abs=0.05)


def test_alpha_degree_two_system(capsys):
    assert main(["alpha", "--preset", "p2", "--max-height", "60", "--radius", "1/10", "--degree", "2"]) == 0
    system = _json(capsys)["system"]
    assert system["degree"] == 2
    assert system["records"] > 0
    assert system["max_gamma_gap"] <= 0.05


def test_alpha_line_cluster(capsys):
    assert main(["alpha", "--preset", "p2", "--max-height", "25", "--threshold", "2"]) == 0
    assert _json(capsys)["line_count"] == 8


def test_alpha_product(capsys):
    assert main(["alpha", "--preset", "product", "--max-height", "30"]) == 0
    out = _json(capsys)
    assert out["min_off_axis_gamma"] == pytest.approx(2.0)
    assert out["axis_dist_height"] == ["1"]
    assert out["prediction"] == {"alpha": "1", "axis": "both", "barrier": "2"}


def test_verify_fixtures(capsys):
    assert main(["verify", "--suite", "fixtures"]) == 0
    out = _json(capsys)
    assert out["failed"] == []
    assert "k3/L/B" in [r["name"] for r in out["results"]]


def test_verify_properties(capsys):
    assert main(["verify", "--suite", "properties"]) == 0
    out = _json(capsys)
    assert out["failed"] == []
    assert out["total"] == 7


# ---------------------------------------------------------------------------
# Usage errors
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "argv",
    [
        ["lattice", "--preset", "nope"],
        ["lattice"],
        ["predict", "--preset", "hirzebruch:1", "--divisor", "S+3F"],
        ["enumerate", "--max-height", "0"],
        ["alpha", "--radius", "-1/2"],
        ["alpha", "--preset", "p2", "--degree", "9"],
        ["enumerate", "--ladder", "10,20,40"],
        ["enumerate", "--ladder", "10,x,40,80"],
        ["cones", "subdivide", "--preset", "hirzebruch:1"],
        ["predict", "--preset", "hirzebruch:1", "--catalog", "F,S", "--mults", "1", "--divisor", "S+3F"],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == 2


def test_computation_error_exit_code():
    assert main(["predict", "--preset", "hirzebruch:1", "--catalog", "F", "--divisor", "S+X"]) == 1


# ---------------------------------------------------------------------------
# Scenario files
# ---------------------------------------------------------------------------

PREDICT = {
    "task": "predict",
    "model": {"preset": "hirzebruch:1"},
    "context": {"candidates": [{"label": "F", "class": "F"}, {"label": "S", "class": "S", "mult": 2}]},
    "divisor": "S+3F",
}


def test_run_scenario_is_reproducible(scenario_file, tmp_path):
    path = scenario_file(PREDICT)
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", str(path), "--out", str(first)]) == 0
    assert main(["predict", "--scenario", str(path), "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    out = json.loads(first.read_text())
    assert out["winners"] == ["F", "S"]


def test_scenario_task_must_match_subcommand(scenario_file):
    assert main(["lattice", "--scenario", str(scenario_file(PREDICT))]) == 2


def test_scenario_missing_context(scenario_file):
    data = {"task": "predict", "model": {"preset": "hirzebruch:1"}, "divisor": "S"}
    assert main(["run", str(scenario_file(data))]) == 2


def test_scenario_not_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{task")
    assert main(["run", str(path)]) == 2
    assert main(["run", str(tmp_path / "missing.json")]) == 2


def test_scenario_error_names_the_field():
    with pytest.raises(ScenarioError) as e:
        parse_scenario({"task": "enumerate", "max_height": 0})
    assert e.value.detail["field"] == "max_height"
    with pytest.raises(ScenarioError) as e:
        parse_scenario({**PREDICT, "model": {"preset": "blowup_p2:9"}})
    assert e.value.detail["field"].startswith("model")


def test_custom_lattice_scenario(scenario_file, capsys):
    data = {
        "task": "cones",
        "operation": "check",
        "model": {
            "lattice": {
                "labels": ["L", "E1"],
                "gram": [[1, 0], [0, -1]],
                "effective": ["E1", [1, -1]],
                "nef": ["L", "L-E1"],
            }
        },
        "divisor": [2, -1],
    }
    assert main(["run", str(scenario_file(data))]) == 0
    out = _json(capsys)
    assert out["dual_pair"] is True
    assert out["divisor"]["ample"] is True


def test_custom_preset_names_coefficient_lists():
    scenario = parse_scenario(
        {"task": "lattice", "model": {"lattice": {"labels": ["L", "E1"], "gram": [[1, 0], [0, -1]], "effective": [[1, -1]]}}}
    )
    preset = custom_preset(scenario.model.lattice)
    assert preset.effective == ("(1,-1)",)
    assert preset.cls("(1,-1)").coeffs == (1, -1)


def test_context_from_flags():
    assert context_from_flags(None) is None
    ctx = context_from_flags("S, F1", "1,2")
    assert ctx["candidates"][1] == {"label": "F1", "class": "F1", "mult": "2"}
    with pytest.raises(ScenarioError):
        context_from_flags("S,F1", "1")
