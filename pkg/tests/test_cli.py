"""Command-line contract: golden reports, determinism and exit codes."""
from __future__ import annotations

import io as _io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from invsemi.cli import run

HERE = Path(__file__).parent
FIX = HERE / "fixtures"
GOLDEN = HERE / "golden"


def f(name):
    return str(FIX / name)


GOLDEN_CASES = {
    "closure_i3": ["closure", "--semigroup", f("i3.json")],
    "greens_brandt": ["greens", "--semigroup", f("brandt_c2_2_model.json")],
    "eggbox_brandt_dot": ["eggbox", "--semigroup", f("brandt_c2_2_model.json"), "--format", "dot"],
    "eggbox_chain_text": ["eggbox", "--semigroup", f("chain3.json"), "--format", "text"],
    "eggbox_i3_json": ["eggbox", "--semigroup", f("i3.json")],
    "intersect_brandt": ["intersect", "--brandt", f("brandt_c2_3.json"),
                         "--u", f("brandt_u.json"), "--v", f("brandt_v.json")],
    "howson_i3": ["howson", "--semigroup", f("i3.json"), "--u", f("i3_u.json"), "--v", f("i3_v.json")],
    "bicyclic_summary": ["bicyclic-summary", "--gens", f("bicyclic_gens.json")],
    "bicyclic_intersect": ["bicyclic-intersect", "--u", "[[0,2]]", "--v", "[[0,3]]", "--bound", "60"],
    "monogenic_eq": ["monogenic-eq", "--presentation", f("bicyclic_ext1.json"), "--u", "x", "--v", "Xxx",
                     "--method", "saturation"],
    "monogenic_intersect_bx": ["monogenic-intersect", "--presentation", f("bicyclic_ext1.json"),
                               "--u", "x", "--v", "xx", "--bound", "40"],
    "monogenic_intersect_finite": ["monogenic-intersect", "--presentation", f("finite22.json"),
                                   "--u", '["xX","xx"]', "--v", "xxx"],
}


def invoke(argv, env=None):
    full = {k: v for k, v in os.environ.items() if k != "INVSEMI_BOUND"}
    full.update(env or {})
    return subprocess.run([sys.executable, "-m", "invsemi.cli", *argv], capture_output=True,
                          text=True, env=full)


def in_process(argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def golden_outputs():
    """Byte-identity across two processes with different hash seeds, plus the frozen file."""
    results = {}
    for name, argv in GOLDEN_CASES.items():
        a = invoke(argv, {"PYTHONHASHSEED": "1"})
        b = invoke(argv, {"PYTHONHASHSEED": "2"})
        results[name] = (a, b)
    return results


@pytest.fixture(scope="module")
def runs():
    return golden_outputs()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, runs):
    a, b = runs[name]
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout
    path = GOLDEN / f"{name}.out"
    if os.environ.get("INVSEMI_REGEN_GOLDEN") == "1":
        path.write_text(a.stdout)
    assert path.read_text() == a.stdout


def test_in_process_matches_subprocess(runs):
    code, out, _ = in_process(GOLDEN_CASES["howson_i3"])
    assert code == 0 and out == runs["howson_i3"][0].stdout


def test_output_flag_writes_file(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = in_process(GOLDEN_CASES["bicyclic_intersect"] + ["--output", str(target)])
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["generators"] == [[0, 6]]


def test_bound_from_environment(monkeypatch):
    monkeypatch.setenv("INVSEMI_BOUND", "50")
    code, out, _ = in_process(["bicyclic-intersect", "--u", "[[0,2]]", "--v", "[[1,1]]"])
    report = json.loads(out)
    assert code == 0 and report["bound"] == 50 and report["bound_source"] == "env"
    monkeypatch.setenv("INVSEMI_BOUND", "many")
    assert in_process(["bicyclic-intersect", "--u", "[[0,2]]", "--v", "[[1,1]]"])[0] == 1


EXIT_CASES = [
    (1, ["closure", "--semigroup", '{"degree": 2, "generators": []}']),
    (1, ["closure", "--semigroup", "/nonexistent/s.json"]),
    (1, ["bicyclic-intersect", "--u", "[[0,2]", "--v", "[[0,3]]"]),
    (1, ["intersect", "--brandt", f("brandt_c2_3.json"), "--u", '[{"i":5,"g":0,"j":0}]',
         "--v", f("brandt_v.json")]),
    (1, ["monogenic-eq", "--presentation", '{"variant":"cyclic"}', "--u", "x", "--v", "x"]),
    (1, ["bicyclic-summary", "--gens", "[[0,2]]", "--bound", "0"]),
    (2, ["howson", "--semigroup", f("chain3.json"), "--u", f("i3_u.json"), "--v", f("i3_v.json")]),
    (2, ["bicyclic-intersect", "--u", "[[0,20]]", "--v", "[[0,3]]", "--bound", "10"]),
    (3, ["bicyclic-intersect", "--u", "[[0,5]]", "--v", "[[0,7]]", "--bound", "20"]),
    (3, ["monogenic-eq", "--presentation", f("bicyclic_ext1.json"), "--u", "xxxxxxxxxx",
         "--v", "Xxxxxxxxxxxx", "--method", "saturation", "--cap", "4"]),
]


@pytest.mark.parametrize("code,argv", EXIT_CASES)
def test_exit_codes(code, argv):
    got, out, err = in_process(argv)
    assert got == code, err
    assert out == "" and err


def test_exit_code_from_real_process():
    assert invoke(EXIT_CASES[0][1]).returncode == 1
    assert invoke(EXIT_CASES[-1][1]).returncode == 3


def test_eggbox_shapes():
    _, chain, _ = in_process(["eggbox", "--semigroup", f("chain3.json")])
    boxes = json.loads(chain)["d_classes"]
    assert len(boxes) == 3 and all(len(b["cells"]) == 1 for b in boxes)
    _, group, _ = in_process(["eggbox", "--semigroup", f("s3.json")])
    assert [len(b["cells"]) for b in json.loads(group)["d_classes"]] == [1]
    _, brandt, _ = in_process(["eggbox", "--semigroup", f("brandt_c2_2_model.json")])
    top, zero = json.loads(brandt)["d_classes"]
    assert [[c["group"] for c in row] for row in top["cells"]] == [[True, False], [False, True]]
    assert zero["kernel"] and zero["cells"] == [[{"elements": ["[]"], "group": True}]]
    _, dot, _ = in_process(["eggbox", "--semigroup", f("brandt_c2_2_model.json"), "--format", "dot"])
    assert dot.count("subgraph cluster_D") == 2 and "D0 -> D1;" in dot


def test_howson_report_provenance():
    _, out, _ = in_process(GOLDEN_CASES["howson_i3"])
    report = json.loads(out)
    for block in report["blocks"]:
        assert len(block["provenance_words"]) == len(block["generators"])
        assert {"class_id", "is_kernel", "generators", "provenance_words"} <= set(block)
