import csv
import io
import json
import statistics

import pytest

from swarmselect.cli import main
from swarmselect.config import ConfigError, ExperimentConfig, apply
from swarmselect.experiment import emit_timing
from swarmselect.results import RunResult, without_timing

FAST = ["--population", "6", "--iterations", "4", "--ssa-iterations", "2"]


@pytest.fixture(scope="module")
def data_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "syn.csv"
    assert main(["gen-synthetic", "--output", str(path), "--samples", "80",
                 "--informative", "3", "--noise", "5", "--seed", "1"]) == 0
    return path


def load(path):
    return json.loads(path.read_text())


def test_same_seed_identical_json_except_timing(data_csv, tmp_path):
    for out in ("a", "b"):
        assert main(["--algo", "hhossa", "--dataset", str(data_csv), "--seed", "7",
                     "--output", str(tmp_path / out), *FAST]) == 0
    ja = (tmp_path / "a" / "hhossa_seed7.json").read_text()
    jb = (tmp_path / "b" / "hhossa_seed7.json").read_text()
    assert without_timing(json.loads(ja)) == without_timing(json.loads(jb))
    strip = lambda text: "\n".join(l for l in text.splitlines() if "_seconds" not in l)
    assert strip(ja) == strip(jb)


def test_shared_schema(data_csv, tmp_path):
    assert main(["--algo", "hho", "--dataset", str(data_csv), "--output", str(tmp_path), *FAST]) == 0
    assert main(["--algo", "ssa", "--dataset", str(data_csv), "--output", str(tmp_path), *FAST]) == 0
    hho, ssa = load(tmp_path / "hho_seed0.json"), load(tmp_path / "ssa_seed0.json")
    assert hho.keys() == ssa.keys()
    assert hho["schema_version"] == 1
    assert hho["algo"] == "hho" and ssa["algo"] == "ssa"
    assert set(hho["test_metrics"]) >= {"accuracy", "precision", "recall", "specificity", "f1"}


def test_repeat_median(data_csv, tmp_path):
    assert main(["--algo", "hhossa", "--dataset", str(data_csv), "--repeat", "10",
                 "--output", str(tmp_path), *FAST]) == 0
    rows = list(csv.DictReader((tmp_path / "results.csv").open()))
    per_seed = [r for r in rows if not r["seed"].startswith("median")]
    summary = [r for r in rows if r["seed"].startswith("median")]
    assert len(per_seed) == 10 and len(summary) == 1
    accs = [float(r["accuracy_percent"]) for r in per_seed]
    assert float(summary[0]["accuracy_percent"]) == pytest.approx(statistics.median(accs))
    for r in per_seed:
        run = load(tmp_path / f"hhossa_seed{r['seed']}.json")
        assert float(r["accuracy_percent"]) == run["test_metrics"]["accuracy"] * 100


def test_all_algorithms_timing_comparison(data_csv, tmp_path):
    assert main(["--algo", "all", "--dataset", str(data_csv), "--output", str(tmp_path), *FAST]) == 0
    rows = list(csv.reader((tmp_path / "timing.csv").open()))
    names = [r[0] for r in rows[1:]]
    assert names == ["hhossa", "hho", "ssa", "hho+ssa", "hhossa<hho+ssa"]
    assert rows[-1][2] in ("true", "false") and rows[-1][3] in ("true", "false")
    conv = list(csv.DictReader((tmp_path / "convergence.csv").open()))
    assert {c["algo"] for c in conv} == {"hho", "ssa", "hhossa"}


def _result(algo, cls_s, opt_s):
    return RunResult(algo, 0, [1], 0.1, 1, [0.1], None, classification_seconds=cls_s,
                     optimization_seconds=opt_s)


def test_emit_timing_single_and_empty():
    rows = list(csv.reader(io.StringIO(emit_timing([_result("hho", 0.5, 2.0)]))))
    assert rows == [["algo", "runs", "classification_seconds", "optimization_seconds"],
                    ["hho", "1", "0.5", "2.0"]]
    with pytest.raises(ValueError):
        emit_timing([])


def test_emit_timing_comparison_row():
    text = emit_timing([_result("hhossa", 1.0, 9.0), _result("hho", 0.75, 3.0),
                        _result("ssa", 0.5, 1.0)])
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[-2] == ["hho+ssa", "", "1.25", "4.0"]
    assert rows[-1] == ["hhossa<hho+ssa", "", "true", "false"]


def test_config_file_and_flag_precedence(data_csv, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"dataset": str(data_csv), "algo": "ssa", "seed": 3,
                               "ssa": {"population": 4, "iterations": 2},
                               "fitness.b": 0.05, "knn.k": 3}))
    out = tmp_path / "out"
    assert main(["--config", str(cfg), "--seed", "5", "--output", str(out)]) == 0
    run = load(out / "ssa_seed5.json")
    assert run["config"]["ssa.population"] == 4
    assert run["config"]["fitness.b"] == 0.05
    assert run["config"]["knn.k"] == 3
    assert len(run["trace"]) == 3


def test_apply_keys():
    cfg = apply(ExperimentConfig(), {"population": 9, "hho": {"beta": 1.2}, "algo": "all"})
    assert cfg.hho_population == cfg.ssa_population == 9
    assert cfg.hho_beta == 1.2 and cfg.algo == ("hhossa", "hho", "ssa")
    with pytest.raises(ConfigError):
        apply(ExperimentConfig(), {"bogus": 1})


@pytest.mark.parametrize("args,stage", [
    (["--dataset", "/nonexistent.csv"], "load"),
    (["--algo", "pso", "--dataset", "x.csv"], "config"),
    (["--k", "4", "--dataset", "x.csv"], None),
    ([], "config"),
])
def test_errors_name_stage(args, stage, capsys, tmp_path, data_csv):
    args = [str(data_csv) if a == "x.csv" else a for a in args]
    code = main(["run", *args, *FAST])
    err = capsys.readouterr().err
    assert code != 0
    if stage:
        assert f"error in stage {stage}" in err
    else:
        assert "error in stage" in err


def test_gen_synthetic_layouts(tmp_path):
    for layout in ("blocks", "shifted"):
        path = tmp_path / f"{layout}.csv"
        assert main(["gen-synthetic", "--output", str(path), "--layout", layout]) == 0
        header = path.read_text().splitlines()[0].split(",")
        assert header[0] == "informative_0" and header[-1] == "label" and len(header) == 21


def test_thread_count_does_not_change_results(data_csv, tmp_path, monkeypatch):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("SWARMSELECT_THREADS", threads)
        out = tmp_path / threads
        assert main(["--algo", "all", "--dataset", str(data_csv), "--output", str(out), *FAST]) == 0
        outs.append([without_timing(load(out / f"{a}_seed0.json")) for a in ("hho", "ssa", "hhossa")])
    assert outs[0] == outs[1]


def test_bad_thread_env(data_csv, monkeypatch, capsys):
    monkeypatch.setenv("SWARMSELECT_THREADS", "many")
    assert main(["--dataset", str(data_csv), *FAST]) == 1
    assert "SWARMSELECT_THREADS" in capsys.readouterr().err
