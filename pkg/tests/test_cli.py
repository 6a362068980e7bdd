import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest

from ahsquant import cli
from ahsquant.cli import CSV_COLUMNS, ConfigError, RunConfig, parse_config, run
from ahsquant.errors import NotACharacterError


def invoke(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def schema():
    text = resources.files("ahsquant").joinpath("schema/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def test_report_json_second_order(capsys, schema):
    code, out, _ = invoke(["report", "--geometry", "conformal", "--n", "8", "--rep", "(0|0,0,0,0)", "--order", "2", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    (rep,) = doc["reports"]
    free = next(c for c in rep["components"] if c["label"] == "(2|2,0,0,0)")
    assert {Fraction(d) for d in free["gamma_zero_deltas"]} == {-3, -2, -10, -9, -5, -6}


def test_prop35(capsys):
    code, out, _ = invoke(["prop35", "--n", "8", "--w", "2", "--k", "2"], capsys)
    assert code == 0
    assert {Fraction(x) for x in out.strip().strip("{}").split(",")} == {-3, -2, -1, -5}


def test_tensor(capsys):
    code, out, _ = invoke(["tensor", "--geometry", "conformal", "--n", "6", "(1|1,0,0)", "(1|1,0,0)", "--format", "json"], capsys)
    assert code == 0
    rows = json.loads(out)["components"]
    assert [r["dim"] for r in rows] == [20, 15, 1]
    assert [r["display"] for r in rows] == ["(2|2,0,0)", "(2|1,1,0)", "(2|0,0,0)"]


def test_sympow_and_branch(capsys):
    code, out, _ = invoke(["sympow", "--n", "6", "--over", "g", "--k", "2", "adjoint", "--format", "json"], capsys)
    assert code == 0
    assert sorted(r["dim"] for r in json.loads(out)["components"]) == [1, 35, 35, 35, 300]
    code, out, _ = invoke(["branch", "--n", "8", "(2|2,0,0,0)", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["label"] for r in rows if r["level"] == "-1"} == {"(1|2,1,0,0)", "(1|1,0,0,0)"}
    code, out, _ = invoke(["decompose", "--n", "6", "--rep", "standard", "--order", "2"], capsys)
    assert code == 0 and "2x (3|1,0,0)" in out


def test_csv_columns(capsys):
    code, out, _ = invoke(["report", "--n-sweep", "6,8", "--order", "1", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert {r[0] for r in rows[1:]} == {"6", "8"}
    deltas = {(r[0], Fraction(r[8])) for r in rows[1:]}
    assert deltas == {("6", -6), ("6", -2), ("8", -8), ("8", -2)}


def test_n_sweep_shared_header(capsys, schema):
    code, out, _ = invoke(["report", "--n-sweep", "6,8,10", "--rep", "density", "--order", "1", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert [r["n"] for r in doc["reports"]] == [6, 8, 10]
    assert [set(r["critical_set"]) for r in doc["reports"]] == [{"-6", "-2"}, {"-8", "-2"}, {"-10", "-2"}]
    assert doc["header"]["order"] == 1


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["report", "--n", "4"], "n >= 5"),
        (["report", "--n", "7"], "allow-odd"),
        (["report", "--rep", "(0|0,0"], "rep"),
        (["report", "--order", "0"], "order"),
        (["report", "--format", "xml"], "format"),
        (["frobnicate"], ""),
        ([], "subcommand"),
        (["tensor", "--n", "6", "(1|1,0,0)", "(0|0,1,0)"], "not dominant"),
    ],
)
def test_config_errors_exit_2(argv, needle, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 2
    assert out == ""
    assert needle in err


def test_algebra_fault_exit_3(monkeypatch):
    def boom(cfg):
        raise NotACharacterError("negative multiplicity -1 at (1, 0, 0, 0)", (1, 0, 0, 0))

    monkeypatch.setitem(cli._RUNNERS, "report", boom)
    err = io.StringIO()
    assert run(RunConfig(), io.StringIO(), err) == 3
    assert "(1, 0, 0, 0)" in err.getvalue()


def test_odd_n_flagged(capsys):
    code, out, _ = invoke(["report", "--n", "7", "--allow-odd", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["reports"][0]["extrapolated"] is True


def test_config_round_trip(tmp_path, capsys):
    cfg = RunConfig(subcommand="report", n=10, rep="(1|1,0,0,0,0)", order=2, delta=Fraction(-7, 2), refine=False, output="csv", n_sweep=(6, 8), labels=("a", "b"), w=Fraction(3, 4))
    assert parse_config(cfg.render()) == cfg
    path = tmp_path / "run.cfg"
    path.write_text("# comment\nsubcommand = prop35\nn = 8\nw = 2\norder = 2\n")
    code, out, _ = invoke(["prop35", "--config", str(path)], capsys)
    assert code == 0 and out.strip() == "{-5, -3, -2, -1}"


@pytest.mark.parametrize(
    "text,line,column,field",
    [
        ("n = 6\norder = x\n", 2, 9, "order"),
        ("n = 6\n  bogus = 1\n", 2, 3, "bogus"),
        ("geometry conformal\n", 1, 1, None),
        ("refine = maybe\n", 1, 10, "refine"),
    ],
)
def test_config_parse_errors(text, line, column, field):
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert (err.value.line, err.value.column, err.value.field_name) == (line, column, field)


def test_byte_determinism_across_jobs(capsys):
    base = ["report", "--n", "8", "--rep", "standard", "--order", "2", "--format", "json"]
    outs = {invoke(base + ["--jobs", str(j)], capsys)[1] for j in (1, 2, 4)}
    assert len(outs) == 1


def test_cache_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    argv = ["report", "--n", "6", "--order", "2", "--format", "json"]
    first = invoke(argv, capsys)[1]
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    files[0].write_text("cached\n")
    assert invoke(argv + ["--jobs", "3"], capsys)[1] == "cached\n"
    monkeypatch.delenv(cli.CACHE_ENV)
    assert invoke(argv, capsys)[1] == first


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ahsquant", "prop35", "--n", "6", "--w", "0", "--k", "1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "{-1, 0}"
