import json
import re
import subprocess
import sys
from pathlib import Path

import pytest

from invharmonic.cli import main

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_RUNS = {
    "harmonic_torus.txt": ["harmonic", "--model", "torus"],
    "harmonic_torus.json": ["harmonic", "--model", "torus", "--format", "json"],
    "harmonic_hopf_ddl_bases.txt": ["harmonic", "--model", "hopf", "--family", "d+dL", "--bases"],
    "theorems_kodaira.txt": ["theorems", "--model", "kodaira"],
    "theorems_kodaira.json": ["theorems", "--model", "kodaira", "--format", "json"],
    "tables.txt": ["tables"],
    "tables.json": ["tables", "--format", "json"],
    "diamond_322.txt": ["diamond", "--b1", "3", "--bplus", "2", "--bminus", "2"],
    "diamond_322.json": ["diamond", "--b1", "3", "--bplus", "2", "--bminus", "2", "--format", "json"],
    "dump_hopf_star_s_2.txt": ["dump-operator", "--model", "hopf", "--operator", "star_s", "--degree", "2"],
    "export_kodaira.txt": ["export", "--model", "kodaira"],
    "validate_kt.txt": ["validate", "--model", "kodaira-thurston"],
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN_RUNS))
def test_golden(name, capsys):
    code, out, _ = run(GOLDEN_RUNS[name], capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


def test_deterministic_across_processes():
    cmd = [sys.executable, "-m", "invharmonic", "theorems", "--model", "hopf", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


def _text_table(out):
    rows = {}
    for line in out.splitlines()[2:]:
        if line.startswith("note:") or not line.strip():
            break
        fam, *vals = line.split()
        rows[fam] = [int(v) for v in vals]
    return rows


@pytest.mark.parametrize("model", ["torus", "kodaira", "hopf", "kodaira-thurston"])
def test_harmonic_text_json_parity(model, capsys):
    _, text, _ = run(["harmonic", "--model", model], capsys)
    _, js, _ = run(["harmonic", "--model", model, "--format", "json"], capsys)
    doc = json.loads(js)
    assert doc["schema"] == 1
    assert _text_table(text) == doc["dimensions"]


def test_theorems_text_json_parity(capsys):
    _, text, _ = run(["theorems", "--model", "hopf"], capsys)
    _, js, _ = run(["theorems", "--model", "hopf", "--format", "json"], capsys)
    doc = json.loads(js)
    statuses = re.findall(r"^\[\s*(pass|FAIL|n/a)\]", text, re.M)
    assert statuses == [v["status"] for v in doc["verdicts"]]


def test_tables_text_json_parity(capsys):
    _, text, _ = run(["tables"], capsys)
    _, js, _ = run(["tables", "--format", "json"], capsys)
    doc = json.loads(js)
    cells = re.findall(r"(\d+)([RDP!-])(?=\s|$)", text)
    flat = [(str(c["value"]), "!" if c["agrees"] is False else c["source"])
            for tbl in doc["tables"] for k in range(5) for col in tbl["columns"] for c in [col["cells"][k]]]
    assert cells == flat


def test_no_floats_in_json(capsys):
    for argv in (["tables", "--format", "json"], ["theorems", "--model", "kodaira", "--format", "json"]):
        _, js, _ = run(argv, capsys)

        def walk(x):
            assert not isinstance(x, float)
            if isinstance(x, dict):
                for v in x.values():
                    walk(v)
            elif isinstance(x, list):
                for v in x:
                    walk(v)
        walk(json.loads(js))


def test_harmonic_values(capsys):
    _, js, _ = run(["harmonic", "--model", "hopf", "--family", "d+dc", "--format", "json"], capsys)
    assert json.loads(js)["dimensions"] == {"d+dc": [1, 0, 1, 2, 1]}
    _, js, _ = run(["harmonic", "--model", "torus", "--format", "json"], capsys)
    assert all(v == [1, 4, 6, 4, 1] for v in json.loads(js)["dimensions"].values())


def test_validate_flags(capsys):
    code, js, _ = run(["validate", "--model", "hopf", "--format", "json"], capsys)
    doc = json.loads(js)
    assert code == 0 and doc["valid"]
    assert doc["predicates"]["integrable"] and not doc["predicates"]["almost_kahler"]
    code, js, _ = run(["validate", "--model", "kodaira-thurston", "--format", "json"], capsys)
    assert json.loads(js)["predicates"]["almost_kahler"]


def test_theorems_kodaira_summands(capsys):
    code, out, _ = run(["theorems", "--model", "kodaira"], capsys)
    assert code == 0
    assert "5 = 1 + 2 + 2 (omega+gamma0, b-, h-_J)" in out


def test_theorems_hopf_nonclosed_branch(capsys):
    code, out, _ = run(["theorems", "--model", "hopf"], capsys)
    assert code == 0
    assert re.search(r"\[pass\] d\+dL decomposition of 2-forms\s+d omega != 0: 0 = 0", out)


def test_degree_out_of_range(capsys):
    code, out, err = run(["harmonic", "--model", "torus", "--family", "d+dc", "--degree", "7"], capsys)
    assert code == 2 and out == ""
    assert "out of range" in err


def test_unknown_family(capsys):
    code, _, err = run(["harmonic", "--model", "torus", "--family", "d+dz"], capsys)
    assert code == 2 and "d+dz" in err


def test_j_not_square_file(tmp_path, capsys):
    p = tmp_path / "bad.model"
    p.write_text("[algebra]\ndim = 4\n[J]\n0 -1 0\n1 0 0\n0 0 1\n", encoding="utf-8")
    code, _, err = run(["validate", "--model", str(p)], capsys)
    assert code == 2
    assert err.startswith("error: line 4:")


def test_corrupted_structure_constants(tmp_path, capsys):
    p = tmp_path / "bad.model"
    p.write_text("[algebra]\ndim = 4\nd e1 = 1 e34\nd e4 = 1 e12\n[complex-coframe]\n", encoding="utf-8")
    code, out, _ = run(["validate", "--model", str(p)], capsys)
    assert code == 1
    assert "d^2 = 0: no, d(d e1) =" in out
    code, _, err = run(["harmonic", "--model", str(p)], capsys)
    assert code == 2 and "not valid" in err


def test_stub_and_unknown_models(capsys):
    assert run(["harmonic", "--model", "inoue-sm"], capsys)[0] == 2
    assert run(["harmonic", "--model", "nonexistent"], capsys)[0] == 2


def test_bad_diamond_input(capsys):
    code, _, err = run(["diamond", "--b1", "2", "--bplus", "2", "--bminus", "0"], capsys)
    assert code == 2 and "odd" in err


def test_tables_mismatch_exit(monkeypatch, capsys):
    import invharmonic.catalog as cat
    real = cat.get("hopf")
    wrong = tuple(e if e.family != "d+dc" else cat.Expectation("d+dc", (1, 0, 1, 3, 1), e.provenance, e.citation)
                  for e in real.expectations)
    patched = cat.CatalogEntry(real.name, real.title, real.klass, real.algebra, real.jmat, real.topology,
                               wrong, real.flags)
    monkeypatch.setattr("invharmonic.cli.get", lambda n: patched if n == "hopf" else cat.get(n))
    code, out, _ = run(["tables"], capsys)
    assert code == 1
    assert "2!" in out
    assert "disagreements: 1" in out


def test_out_file(tmp_path, capsys):
    p = tmp_path / "o.json"
    code, out, _ = run(["diamond", "--b1", "4", "--bplus", "3", "--bminus", "3", "--format", "json",
                        "--out", str(p)], capsys)
    assert code == 0 and out == ""
    assert json.loads(p.read_text())["ddc_totals"] == [1, 4, 6, 4, 1]


def test_export_round_trips(tmp_path, capsys):
    _, out, _ = run(["export", "--model", "hopf"], capsys)
    p = tmp_path / "hopf.model"
    p.write_text(out, encoding="utf-8")
    _, a, _ = run(["harmonic", "--model", str(p), "--format", "json"], capsys)
    _, b, _ = run(["harmonic", "--model", "hopf", "--format", "json"], capsys)
    assert json.loads(a)["dimensions"] == json.loads(b)["dimensions"]


def test_regress_verb(capsys):
    code, out, _ = run(["regress"], capsys)
    assert code == 0
    assert "FAIL" not in out
