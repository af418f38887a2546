"""Command-line interface: results, exit codes, schema, determinism, figures, replay."""

import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from aswlab.cli import argv_from_report, run

from cli_examples import EXAMPLES

SCHEMA = json.loads(resources.files("aswlab").joinpath("data/report.schema.json").read_text())


def call(argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def report(argv):
    code, text = call(list(argv) + ["--no-timing"])
    return code, json.loads(text)


@pytest.mark.parametrize("argv", EXAMPLES, ids=lambda a: " ".join(a[:2]))
def test_examples_succeed_and_match_schema(argv):
    code, rep = report(argv)
    assert code == 0, rep
    jsonschema.validate(rep, SCHEMA)
    assert rep["command"] == " ".join(argv[:2])
    assert rep["timing_ms"] is None
    for key in ("p", "q", "n", "d", "seed"):
        assert key in rep["inputs"]


def test_documented_results():
    _, rep = report(EXAMPLES[3])
    assert rep["result"]["invariant_factors"] == [2, 2]
    assert rep["result"]["generators"] == ["x", "x^3"]
    _, rep = report(["group", "quasip", "--group", "deg=3; gens=(0 1 2),(0 1)", "--p", "3"])
    assert rep["result"]["order"] == 3
    _, rep = report(["curve", "lemma67", "--p", "2", "--n", "2"])
    assert rep["result"]["bound"] == "4"
    assert rep["certificates"]["derivative_in_u"] == -1


def test_timing_recorded_by_default():
    code, text = call(["curve", "lemma67", "--p", "2", "--n", "1"])
    rep = json.loads(text)
    assert code == 0 and isinstance(rep["timing_ms"], float) and rep["timing_ms"] >= 0
    jsonschema.validate(rep, SCHEMA)


@pytest.mark.parametrize(
    "argv,code,kind",
    [
        (["asw", "cokernel", "--ring", "F(4,1)[x]", "--deg", "1"], 2, "composite_p"),
        (["asw", "cokernel", "--ring", "F(2,1)[x]", "--n", "6", "--deg", "1"], 3, "cap_exceeded"),
        (["group", "mingen", "--group", "name=Z/2 x Z/2 x Z/2", "--cap-k", "2"], 3, "cap_exceeded"),
        (["group", "quasip", "--group", "deg=3; gens=(0 1 2", "--p", "3"], 2, "parse_error"),
        (["curve", "hurwitz", "--degree", "2", "--fibers", "2;2;2"], 2, "non_integral_genus"),
        (["asw", "nope"], 2, "usage_error"),
        (["witt", "add", "--ring", "F(2,1)[x]", "--n", "2", "--u", "(1, 0)", "--v", "(1, 0, 0)"], 2, None),
        (["replay", "--report", "/nonexistent/report.json"], 2, "input_error"),
    ],
    ids=lambda v: v if isinstance(v, (int, str)) or v is None else " ".join(v[:2]),
)
def test_error_exit_codes(argv, code, kind):
    got, rep = report(argv)
    assert got == code
    assert "result" not in rep and rep["error"]["message"]
    if kind:
        assert rep["error"]["kind"] == kind
    jsonschema.validate(rep, SCHEMA)


def test_pretty_output():
    code, text = call(["curve", "lemma67", "--p", "2", "--n", "2", "--pretty", "--no-timing"])
    assert code == 0
    assert "bound: 4" in text and "timing_ms: null" in text and not text.lstrip().startswith("{")


def test_jobs_grid_equals_serial():
    base = ["asw", "cokernel", "--ring", "F(2,1)[x,1/x]", "--n", "1..2", "--deg", "1..3"]
    _, serial = report(base)
    _, parallel = report(base + ["--jobs", "2"])
    serial["inputs"].pop("jobs")
    parallel["inputs"].pop("jobs")
    assert serial == parallel
    assert [(c["n"], c["d"]) for c in serial["result"]["grid"]] == [(n, d) for n in (1, 2) for d in (1, 2, 3)]


def test_figure_written(tmp_path):
    path = tmp_path / "orders.png"
    code, rep = report(["asw", "cokernel", "--ring", "F(3,1)[x]", "--n", "1..2", "--deg", "1..4", "--figure", str(path)])
    assert code == 0 and path.exists() and path.stat().st_size > 1000
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert rep["inputs"]["figure"] == str(path)
    svg = tmp_path / "report.svg"
    code, rep = report(["asw", "report", "--ring", "F(2,1)[x]", "--n", "2", "--deg", "3", "--figure", str(svg)])
    assert code == 0 and svg.read_text().lstrip().startswith("<?xml")


@pytest.mark.parametrize("argv", EXAMPLES, ids=lambda a: " ".join(a[:2]))
def test_inputs_block_replays_to_same_result(argv, tmp_path):
    _, rep = report(argv)
    again_code, again = report(argv_from_report(rep))
    assert again_code == 0 and again == rep
    path = tmp_path / "r.json"
    path.write_text(json.dumps(rep))
    assert report(["replay", "--report", str(path)])[1] == rep


def test_console_script_matches_in_process_run():
    argv = ["group", "mingen", "--group", "name=A5", "--no-timing"]
    proc = subprocess.run([sys.executable, "-m", "aswlab.cli", *argv], capture_output=True, text=True, check=True)
    assert proc.stdout == call(argv)[1]
