import csv
import json

import numpy as np
import pytest

from deepartmap.cli import main


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def workdir(tmp_path):
    rng = np.random.default_rng(0)
    X = rng.random((30, 3)) * 10
    data = tmp_path / "data.csv"
    np.savetxt(data, X, delimiter=",")
    labelled = tmp_path / "labelled.csv"
    np.savetxt(labelled, np.column_stack([X, rng.integers(0, 3, 30)]), delimiter=",")
    write(
        tmp_path / "cfg.yaml",
        "mode: unsupervised\nepochs: 2\nmodules:\n  - {vigilance: 0.85}\n  - {vigilance: 0.6}\n  - {vigilance: 0.3}\n",
    )
    write(
        tmp_path / "int.yaml",
        "mode: integer\nlabel_columns: [3]\nmodules:\n  - {vigilance: 0.8}\n  - {vigilance: 0.4}\n",
    )
    return tmp_path


def read_rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_fit_predict_inspect_dot(workdir, capsys):
    d = workdir
    assert main(["fit", "--data", str(d / "data.csv"), "--config", str(d / "cfg.yaml"), "--out", str(d / "m.json")]) == 0
    assert json.loads((d / "m.json").read_text())["magic"] == "deepartmap-model"
    assert main(["predict", "--model", str(d / "m.json"), "--data", str(d / "data.csv"), "--out", str(d / "p.csv")]) == 0
    rows = read_rows(d / "p.csv")
    assert rows[0] == ["module_1", "module_2", "module_3"] and len(rows) == 31
    capsys.readouterr()
    assert main(["inspect", "--model", str(d / "m.json")]) == 0
    out = capsys.readouterr().out
    assert "levels: 3" in out and "root(s)" in out
    assert main(["export-dot", "--model", str(d / "m.json"), "--out", str(d / "g.dot")]) == 0
    assert (d / "g.dot").read_text().startswith("digraph")


def test_integer_mode_header(workdir):
    d = workdir
    assert main(["fit", "--data", str(d / "labelled.csv"), "--config", str(d / "int.yaml"), "--out", str(d / "m.json")]) == 0
    args = ["predict", "--model", str(d / "m.json"), "--data", str(d / "labelled.csv"), "--out", str(d / "p.csv")]
    assert main(args + ["--drop-columns", "3"]) == 0
    rows = read_rows(d / "p.csv")
    assert rows[0] == ["module_1", "module_2", "label"]
    assert all(int(r[2]) in (0, 1, 2) for r in rows[1:])


def test_gen_synth_and_benchmark(workdir, capsys):
    d = workdir
    args = ["gen-synth", "--roots", "2", "--children", "2", "--points", "5", "--margin", "0.15", "--seed", "3"]
    assert main(args + ["--out", str(d / "s.csv"), "--truth", str(d / "t.csv")]) == 0
    assert len(read_rows(d / "s.csv")) == 20
    assert read_rows(d / "t.csv")[0] == ["leaf", "root"]
    write(d / "b.yaml", "modules:\n  - {vigilance: 0.9}\n  - {vigilance: 0.5}\n")
    capsys.readouterr()
    bench = ["benchmark", "--data", str(d / "s.csv"), "--truth", str(d / "t.csv"), "--truth-header"]
    assert main(bench + ["--config", str(d / "b.yaml"), "--config", str(d / "b.yaml")]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 2 and "ari1=" in out[0] and "ari2=" in out[0]


def test_validate(workdir, capsys):
    d = workdir
    assert main(["validate", "--config", str(d / "cfg.yaml")]) == 0
    assert "config ok" in capsys.readouterr().out
    write(d / "warn.yaml", "modules:\n  - {vigilance: 0.3}\n  - {vigilance: 0.8}\n")
    assert main(["validate", "--config", str(d / "warn.yaml")]) == 0
    assert "warning" in capsys.readouterr().out
    write(d / "bad.yaml", "modules:\n  - {vigilance: 1.5}\n")
    assert main(["validate", "--config", str(d / "bad.yaml")]) == 1


class TestExitCodes:
    def test_usage(self):
        with pytest.raises(SystemExit) as exc:
            main(["fit", "--data", "x.csv"])
        assert exc.value.code == 1
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 1

    def test_config_error(self, workdir):
        write(workdir / "bad.yaml", "modules: 3\n")
        args = ["fit", "--data", str(workdir / "data.csv"), "--config", str(workdir / "bad.yaml")]
        assert main(args + ["--out", str(workdir / "m.json")]) == 1

    def test_infeasible_synthetic(self, tmp_path):
        args = ["gen-synth", "--roots", "16", "--children", "9", "--points", "2", "--margin", "0.2"]
        assert main(args + ["--out", str(tmp_path / "s.csv")]) == 1

    def test_data_error(self, workdir):
        write(workdir / "broken.csv", "0.1,0.2,0.3\n0.1,abc,0.3\n")
        args = ["fit", "--data", str(workdir / "broken.csv"), "--config", str(workdir / "cfg.yaml")]
        assert main(args + ["--out", str(workdir / "m.json")]) == 2

    def test_missing_data_file(self, workdir):
        args = ["fit", "--data", str(workdir / "nope.csv"), "--config", str(workdir / "cfg.yaml")]
        assert main(args + ["--out", str(workdir / "m.json")]) == 2

    def test_wrong_width_at_predict(self, workdir):
        d = workdir
        main(["fit", "--data", str(d / "data.csv"), "--config", str(d / "cfg.yaml"), "--out", str(d / "m.json")])
        write(d / "narrow.csv", "0.1,0.2\n")
        assert main(["predict", "--model", str(d / "m.json"), "--data", str(d / "narrow.csv"), "--out", str(d / "p.csv")]) == 2

    def test_model_file_error(self, workdir):
        write(workdir / "m.json", "{not json")
        assert main(["inspect", "--model", str(workdir / "m.json")]) == 3
        assert main(["inspect", "--model", str(workdir / "missing.json")]) == 3
