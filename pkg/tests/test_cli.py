import csv
import io
import json

import jsonschema
import pytest

from rankone.catalog import make_space
from rankone.cli import main
from rankone.dimension import dim_spherical_exact

from conftest import GOLDEN, run_cli


def invoke(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_matches_golden(capsys, schema):
    code, out, _ = invoke(capsys, "catalog", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("catalog"))
    assert doc == json.loads((GOLDEN / "catalog_q6.json").read_text(encoding="utf-8"))
    assert [f["family"] for f in doc["families"]] == ["AI", "AII", "AIII", "BII", "CII", "FII"]


def test_catalog_csv_and_text(capsys):
    _, out, _ = invoke(capsys, "catalog", "--format", "csv", "--max-q", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 8
    assert rows[0]["family"] == "AI" and rows[0]["q"] == ""
    _, out, _ = invoke(capsys, "catalog")
    assert "F4/SO(9)" in out


def test_classify_example(capsys, schema):
    code, out, _ = invoke(capsys, "classify", "--space", "AIII", "--q", "2", "--t1", "1/2pi", "--t2", "1/2pi")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("classify"))
    assert doc["l1"] is True and doc["l2"] is False
    assert [c["kind"] for c in doc["classes"]] == ["ContinuousNonRegular"] * 2


def test_classify_triple(capsys, schema):
    _, out, _ = invoke(capsys, "classify", "--space", "FII", "--t1", "pi/2", "--t2", "pi/2", "--t3", "pi/2")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("classify"))
    assert doc["l2"] is True and len(doc["classes"]) == 3


def test_dims_example(capsys):
    code, out, _ = invoke(capsys, "dims", "--space", "AI", "--n-max", "3")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(int(r["n"]), int(r["dim"])) for r in rows] == [(0, 1), (1, 3), (2, 5), (3, 7)]


def test_dims_json_with_quadrature(capsys, schema):
    _, out, _ = invoke(capsys, "dims", "--space", "CII(2)", "--n-max", "5", "--check-quadrature", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("dims"))
    exact = [dim_spherical_exact(make_space("CII", 2), n) for n in range(6)]
    assert [r["dim"] for r in doc["rows"]] == exact
    assert max(r["rel_err"] for r in doc["rows"]) < 1e-8


def test_spherical_oracle(capsys, schema):
    _, out, _ = invoke(capsys, "spherical", "--space", "FII", "--n", "12", "--t", "0.7", "--oracle", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("spherical"))
    assert doc["oracle"]["abs_diff"] < 1e-12


def test_norm_csv_and_diagnosis(capsys, tmp_path, schema):
    diag = tmp_path / "diag.json"
    code, out, _ = invoke(
        capsys, "norm", "--space", "AI", "--t1", "1/2pi", "--t2", "1/2pi", "--n-max", "100000", "--diagnosis", str(diag)
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[-1]["N"] == "100000"
    sums = [float(r["S_N"]) for r in rows]
    assert sums == sorted(sums)
    d = json.loads(diag.read_text())
    jsonschema.validate(d, schema("norm")["$defs"]["diagnosis"])
    assert d["verdict"] == "Divergent" and d["agree"] is True


def test_norm_json(capsys, schema):
    _, out, _ = invoke(capsys, "norm", "--space", "AIII(3)", "--t1", "1/2pi", "--t2", "1/2pi", "--n-max", "20000", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema("norm"))
    assert doc["diagnosis"]["verdict"] == "Convergent"


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "cat.csv"
    code, out, _ = invoke(capsys, "catalog", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("family,q,name")


def test_verify_subset_json(capsys, schema):
    code, out, _ = invoke(capsys, "verify", "--quick", "--only", "1", "--only", "11", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema("verify"))
    assert [c["id"] for c in doc["criteria"]] == [1, 11]


@pytest.mark.parametrize(
    "args",
    [
        ["classify", "--space", "BII", "--q", "2", "--t1", "1", "--t2", "1"],
        ["classify", "--space", "XYZ", "--t1", "1", "--t2", "1"],
        ["spherical", "--space", "AI", "--n", "300", "--t", "1", "--oracle"],
        ["norm", "--space", "AI", "--t1", "1", "--t2", "1", "--n-max", "50"],
        ["catalog", "--max-q", "2"],
        ["classify", "--space", "AI", "--t1", "1", "--t2", "1", "--eps", "0.5"],
    ],
)
def test_usage_errors_in_process(capsys, args):
    code, out, err = invoke(capsys, *args)
    assert code == 2
    assert err.count("\n") == 1 and err.startswith("rankone")


@pytest.mark.parametrize(
    "args",
    [
        ["classify", "--space", "AI", "--t1", "1/0pi", "--t2", "1"],
        ["dims", "--space", "AI", "--n-max", "-3"],
        ["frobnicate"],
        ["classify", "--space", "AI", "--t1", "1"],
    ],
)
def test_argparse_errors_exit_2(args):
    res = run_cli(*args)
    assert res.returncode == 2
    assert "error:" in res.stderr.splitlines()[-1]


def test_entry_point_runs():
    res = run_cli("classify", "--space", "AIII", "--q", "2", "--t1", "1/2pi", "--t2", "1/2pi")
    assert res.returncode == 0
    assert json.loads(res.stdout)["l2"] is False
