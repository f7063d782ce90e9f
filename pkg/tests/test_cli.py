import json
import math

import pytest

from hardy_lab.cli import emit, main, parse, parse_config
from hardy_lab.errors import ConfigurationError
from hardy_lab.experiments import REGISTRY, ExperimentConfig, ResultRecord, run

AP_CONFIG = """
# two-valued weight, sampled half-open
experiment = ap-sweep
seed = 11
grid_size = 64
space.p = 2
space.weight_table = 0:2, 1pi:1
"""


def _write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_config_fields():
    cfg = parse_config(AP_CONFIG)
    assert cfg.experiment == "ap-sweep" and cfg.seed == 11 and cfg.grid_size == 64
    assert cfg.p == 2.0
    assert cfg.weight_table == [[0.0, 2.0], [math.pi, 1.0]]


def test_symbol_and_pi_angles():
    cfg = parse_config("experiment = norm-sandwich-l2\nseed = 0\nsymbol = 1:1, -1:0.5+1j\n"
                       "space.p_table = -0.5pi:2, pi:3")
    assert cfg.symbol == [[1, 1.0], [-1, 0.5 + 1j]]
    assert cfg.p_table[0][0] == pytest.approx(-math.pi / 2)
    assert cfg.p_table[1][0] == pytest.approx(math.pi)


@pytest.mark.parametrize("text,field", [
    ("experiment = ap-sweep\n", "seed"),
    ("seed = 1\n", "experiment"),
    ("experiment = ap-sweep\nseed = 1\nspace.s = 2\n", "space.s"),
    ("experiment = ap-sweep\nseed = -1\n", "seed"),
    ("experiment = ap-sweep\nseed = 1\nspace.p = 1\n", "space.p"),
    ("experiment = ap-sweep\nseed = 1\nspace.q = 0.5\n", "space.q"),
    ("experiment = ap-sweep\nseed = 1\nspace.weight_table = 0-2\n", "space.weight_table"),
    ("experiment = ap-sweep\nseed = 1\ngrid_size = ten\n", "grid_size"),
])
def test_config_errors_name_the_field(text, field):
    with pytest.raises(ConfigurationError) as err:
        parse_config(text)
    assert err.value.field == field
    assert str(err.value).startswith(field)


def test_unknown_experiment_lists_choices():
    with pytest.raises(ConfigurationError) as err:
        run(ExperimentConfig("nope", seed=0))
    for name in REGISTRY:
        assert name in str(err.value)


def test_bad_grid_size_is_configuration_error():
    with pytest.raises(ConfigurationError) as err:
        run(ExperimentConfig("ap-sweep", seed=0, grid_size=100))
    assert err.value.field == "grid_size"


def test_emit_json_keys_and_digits():
    rec = ResultRecord("x", {"seed": 1}, {"a": 0.1, "b": 2.0, "c": math.inf}, [], 3.5)
    data = emit(rec, "json")
    obj = json.loads(data)
    assert list(obj) == ["experiment", "inputs", "metrics", "assertions", "wall_time_ms"]
    assert b'"a": 0.10000000000000001' in data
    assert b'"b": 2.0' in data and b"Infinity" in data


def test_emit_empty_metrics():
    obj = json.loads(emit(ResultRecord("x", {}, {}, [], 0.0), "json"))
    assert obj["metrics"] == {}


def test_round_trip():
    rec = run(ExperimentConfig("lorentz-suite", seed=3, grid_size=64, cases=5))
    assert parse(emit(rec, "json")) == rec


def test_csv_rows():
    rec = ResultRecord("lorentz-suite", {}, {"indicator_L21_norm": 1.5, "free": 2.0},
                       [{"metric": "indicator_L21_norm", "lhs": 1.5, "relation": "==",
                         "rhs": 1.5, "tolerance": 1e-9, "passed": True}], 1.0)
    lines = emit(rec, "csv").decode().splitlines()
    assert lines[0] == "experiment,metric,value,pass"
    assert lines[1] == "lorentz-suite,indicator_L21_norm,1.5,true"
    assert lines[2] == "lorentz-suite,free,2.0,"


def test_assertions_list_both_sides():
    rec = run(ExperimentConfig("ap-sweep", seed=0, grid_size=64))
    for a in rec.assertions:
        assert {"metric", "lhs", "relation", "rhs", "tolerance", "passed"} <= set(a)


def test_run_exit_zero_and_output_file(tmp_path):
    out = tmp_path / "out.json"
    code = main(["run", "--config", _write(tmp_path, AP_CONFIG), "--out", str(out)])
    assert code == 0
    rec = parse(out.read_bytes())
    assert rec.metrics["ap_weight"] == pytest.approx(1.25, abs=1e-12)


def test_run_exit_two_on_failed_assertion(tmp_path):
    text = ("experiment = multiplier-vls\nseed = 0\ngrid_size = 16\ndegree = 3\n"
            "budget = 50\ncases = 1\nspace.p = 4\nspace.q = 2\nspace.r = 5\n")
    assert main(["run", "--config", _write(tmp_path, text),
                 "--out", str(tmp_path / "o.json")]) == 2


def test_run_exit_one_on_config_error(tmp_path, capsys):
    assert main(["run", "--config", _write(tmp_path, "experiment = ap-sweep\n")]) == 1
    assert "seed" in capsys.readouterr().err
    assert main(["run", "--config", str(tmp_path / "missing.cfg")]) == 1
    assert main(["run"]) == 1


def test_list(capsys):
    assert main(["list"]) == 0
    listed = [line.split()[0] for line in capsys.readouterr().out.splitlines()]
    assert listed == sorted(REGISTRY)
    assert len(listed) == 9


def test_deterministic_apart_from_wall_time(tmp_path):
    cfg = _write(tmp_path, "experiment = duality-norm\nseed = 5\ngrid_size = 64\n"
                           "degree = 4\nbudget = 300\ncases = 2\n")
    outs = []
    for k, workers in enumerate(("1", "3")):
        path = tmp_path / f"o{k}.json"
        main(["run", "--config", cfg, "--out", str(path), "--parallel", workers])
        obj = json.loads(path.read_bytes())
        obj.pop("wall_time_ms")
        outs.append(json.dumps(obj))
    assert outs[0] == outs[1]


def test_csv_format_flag(tmp_path, capsysbinary):
    assert main(["run", "--config", _write(tmp_path, AP_CONFIG), "--format", "csv"]) == 0
    out = capsysbinary.readouterr().out.decode()
    assert out.startswith("experiment,metric,value,pass\n")
    assert "ap-sweep,ap_weight," in out


def test_hilbert_experiment_pointwise_error():
    rec = run(ExperimentConfig("hilbert-closed-form", seed=0, grid_size=4096))
    assert rec.metrics["max_error_vs_integrated_kernel"] < 0.05
    assert rec.metrics["cos_crossval_error"] < 10 / 4096


def test_norm_sandwich_experiment_ratio():
    rec = run(ExperimentConfig("norm-sandwich-l2", seed=0, degree=254))
    assert rec.metrics["norm_ratio"] >= 0.98
    assert rec.passed
