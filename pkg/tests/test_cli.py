import json
import subprocess
import sys

import jsonschema
import pytest

from gdmagic import schemas
from gdmagic.abelian import enumerate_groups
from gdmagic.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_groups(capsys):
    code, out, _ = run(capsys, "groups", "--order", "40")
    assert code == 0 and out.split() == ["8x5", "4x2x5", "2x2x2x5"]
    code, out, _ = run(capsys, "groups", "--order", "8", "--json")
    assert json.loads(out) == ["8", "4x2", "2x2x2"]


def test_product(capsys, tmp_path):
    code, out, _ = run(capsys, "product", "--gen", "complete:2", "--cycle", "4")
    lines = out.split("\n")
    assert code == 0 and lines[0] == "8" and len([ln for ln in lines[1:] if ln]) == 8
    f = tmp_path / "g.txt"
    f.write_text("3\n0 1\n1 2\n")
    code, out, _ = run(capsys, "product", "--graph", str(f), "--cycle", "4", "--json")
    assert code == 0 and json.loads(out)["n"] == 12


def test_construct_all_groups(capsys):
    code, out, _ = run(capsys, "construct", "--gen", "bipartite:1,9", "--cycle", "4", "--all-groups")
    docs = json.loads(out)
    assert code == 0
    assert [d["group"] for d in docs] == [str(g) for g in enumerate_groups(40)]
    for d in docs:
        jsonschema.validate(d, schemas.CONSTRUCT_REPORT)
        assert d["outcome"] == "constructed"


def test_construct_verify_round_trip(capsys, tmp_path):
    for gen, k, group in [("petersen", 4, "4x2x5"), ("cycle:3", 8, "8x3"), ("cycle:5", 8, "2x2x2x5")]:
        out_file = tmp_path / f"{group}.json"
        code, _, _ = run(capsys, "construct", "--gen", gen, "--cycle", str(k), "--group", group, "--out", str(out_file))
        assert code == 0
        code, out, _ = run(capsys, "verify", "--labeling", str(out_file))
        report = json.loads(out_file.read_text())
        assert code == 0 and json.loads(out) == report["magic"]
        code, out, _ = run(capsys, "verify", "--labeling", str(out_file), "--json")
        jsonschema.validate(json.loads(out), schemas.VERIFY_REPORT)
        # a bare labeling file verifies the same way
        bare = tmp_path / "bare.json"
        bare.write_text(json.dumps(report["labeling"]))
        jsonschema.validate(report["labeling"], schemas.LABELING)
        assert run(capsys, "verify", "--labeling", str(bare))[0] == 0


def test_construct_native_coordinates(capsys):
    code, out, _ = run(capsys, "construct", "--gen", "complete:2", "--cycle", "4", "--group", "2x4", "--native")
    doc = json.loads(out)
    assert code == 0 and doc["labeling"]["group"] == "2x4"
    jsonschema.validate(doc, schemas.CONSTRUCT_REPORT)


def test_construct_methods(capsys):
    code, out, _ = run(capsys, "construct", "--gen", "tripartite:1,3,3", "--cycle", "4", "--group", "4x7", "--method", "obs24")
    assert code == 0 and json.loads(out)["magic"] == [0, 2]
    code, out, _ = run(capsys, "construct", "--gen", "bipartite:1,2", "--cycle", "4", "--group", "2x2x3", "--method", "lemma28")
    assert code == 0 and json.loads(out)["errata"] == ["E3"]
    code, out, _ = run(capsys, "construct", "--gen", "cycle:3", "--cycle", "8", "--group", "8x3", "--method", "thm32c3", "--alpha", "3")
    assert code == 0 and json.loads(out)["construction"] == "thm32c3"
    assert run(capsys, "construct", "--gen", "cycle:3", "--cycle", "4", "--group", "12", "--method", "lemma31")[0] == 3


def test_construct_not_covered_and_precondition(capsys):
    code, out, _ = run(capsys, "construct", "--gen", "bipartite:2,18", "--cycle", "8", "--group", "32x5")
    doc = json.loads(out)
    assert code == 2 and doc["outcome"] == "not_covered" and doc["labeling"] is None
    jsonschema.validate(doc, schemas.CONSTRUCT_REPORT)
    code, out, _ = run(capsys, "construct", "--gen", "bipartite:1,5", "--cycle", "4", "--group", "8x3")
    assert code == 2 and json.loads(out)["outcome"] == "precondition_failed"


def test_verify_failure(capsys, tmp_path):
    f = tmp_path / "lab.json"
    f.write_text(json.dumps({"graph": "complete:2", "cycle": 4, "group": "8",
                             "labels": [{"v": [i // 4, i % 4], "e": [i]} for i in range(8)]}))
    code, _, err = run(capsys, "verify", "--labeling", str(f))
    assert code == 1 and "not magic" in err


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--gen", "bipartite:1,2", "--cycle", "4", "--group", "12")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "exhausted_none"
    jsonschema.validate(doc, schemas.SEARCH_RESULT)
    code, out, _ = run(capsys, "search", "--gen", "complete:2", "--cycle", "4", "--group", "2x2x2", "--all")
    doc = json.loads(out)
    assert code == 0 and [0, 1, 1] in doc["magic_constants"]
    jsonschema.validate(doc, schemas.SEARCH_RESULT)
    code, out, _ = run(capsys, "search", "--gen", "bipartite:1,2", "--cycle", "4", "--group", "12", "--max-nodes", "10")
    assert code == 4 and json.loads(out)["status"] == "timeout"
    # without --cycle the base graph itself is searched
    assert run(capsys, "search", "--gen", "cycle:4", "--group", "4")[0] == 0
    assert run(capsys, "search", "--gen", "complete:2", "--group", "2")[0] == 1


@pytest.mark.parametrize(
    "argv, code, verdict",
    [
        (["regular", "--r", "2", "--n", "5"], 0, "feasible"),
        (["regular", "--r", "3", "--n", "10"], 1, "obstruction"),
        (["involution", "--m", "1", "--n", "2", "--group", "4x3"], 1, "obstruction"),
        (["involution", "--m", "1", "--n", "2", "--group", "2x2x3"], 0, "none"),
        (["acg", "--m", "1", "--n", "9"], 1, "violated"),
        (["acg", "--m", "1", "--n", "1"], 0, "holds"),
        (["c8", "--m", "2", "--n", "18"], 1, "violated"),
        (["bipartite", "--m", "3", "--n", "2", "--group", "4x5"], 1, "not_exists"),
        (["bipartite", "--m", "1", "--n", "2", "--group", "2x2x3"], 0, "exists"),
    ],
)
def test_feasibility(capsys, argv, code, verdict):
    got, out, _ = run(capsys, "feasibility", *argv)
    doc = json.loads(out)
    assert got == code and doc["verdict"] == verdict
    jsonschema.validate(doc, schemas.FEASIBILITY_RESULT)


@pytest.mark.parametrize(
    "argv",
    [
        ["groups"],
        ["groups", "--order", "8", "--bogus"],
        ["construct", "--gen", "cycle:2", "--cycle", "4", "--group", "8"],
        ["construct", "--gen", "cycle:3", "--cycle", "4", "--group", "8"],
        ["construct", "--gen", "cycle:3", "--cycle", "6", "--group", "18"],
        ["construct", "--gen", "cycle:3", "--cycle", "4", "--group", "4x"],
        ["construct", "--gen", "cycle:3", "--cycle", "4"],
        ["verify", "--labeling", "/nonexistent/file.json"],
        ["search", "--gen", "cycle:5", "--cycle", "4", "--group", "20"],
        ["feasibility", "involution", "--m", "2", "--n", "2", "--group", "16"],
        ["feasibility", "regular", "--r", "2"],
        ["nosuchcommand"],
    ],
)
def test_invalid_input_exit_3(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_malformed_labeling_exit_3(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"graph": "complete:2", "cycle": 4, "group": "8", "labels": []}')
    code, _, err = run(capsys, "verify", "--labeling", str(f))
    assert code == 3 and "incomplete" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gdmagic", "groups", "--order", "12"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.split() == ["4x3", "2x2x3"]
