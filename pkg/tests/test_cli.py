"""cli: exit codes, report determinism and schema, parse positions, subcommands."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from dgext.cli import Report, RunOptions, main, run
from dgext.errors import ParseError, ValidationError
from dgext.specfile import loads

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

BASE = {"format_version": 1, "ring": {"characteristic": 2}, "algebra": {"type": "base"}}


def write(tmp_path, doc, name="t.spec"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc, indent=2))
    return str(p)


def run_main(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ["ex-3-1", "ex-3-2", "ex-3-7", "ex-4-4", "koszul-baer"])
def test_shipped_scenarios_pass(name, capsys):
    code, out, _ = run_main(["run", str(SCENARIOS / f"{name}.spec")], capsys)
    assert code == 0, out
    assert out.rstrip().endswith("PASS")


def test_mismatch_exits_1(tmp_path, capsys):
    doc = dict(BASE, modules={"R": {"ranks": {"0": 1}}},
               tasks=[{"id": "t", "op": "ext", "source": "R", "target": "R", "degree": 0,
                       "expect": {"invariants": []}}])
    code, out, _ = run_main(["run", write(tmp_path, doc)], capsys)
    assert code == 1 and "[mismatch]" in out and out.rstrip().endswith("FAIL")


def test_tasks_without_expectations_are_computed(tmp_path, capsys):
    doc = dict(BASE, modules={"R": {"ranks": {"0": 1}}},
               tasks=[{"id": "t", "op": "ext", "source": "R", "target": "R", "degree": 0}])
    code, out, _ = run_main(["run", "--json", write(tmp_path, doc)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["tasks"][0]["status"] == "computed"
    assert rep["tasks"][0]["result"]["invariants"] == ["0"]


def test_parse_error_exits_2_with_position(tmp_path, capsys):
    text = '{\n  "format_version": 1,\n  "ring": {"characteristic": 2}\n  "tasks": []\n}\n'
    code, _, err = run_main(["run", write(tmp_path, text)], capsys)
    assert code == 2 and "line 4" in err
    with pytest.raises(ParseError) as exc:
        loads(text)
    assert (exc.value.line, exc.value.column) == (4, 3)


def test_bad_polynomial_position(tmp_path):
    doc = dict(BASE, modules={"M": {"ranks": {"1": 1, "0": 1}, "differentials": {"1": [["X^"]]}}}, tasks=[])
    text = json.dumps(doc, indent=2)
    with pytest.raises(ParseError) as exc:
        loads(text)
    line = next(i for i, l in enumerate(text.splitlines(), 1) if '"X^"' in l)
    assert exc.value.line == line
    assert exc.value.column > text.splitlines()[line - 1].index('"X^"')


def test_missing_file_exits_2(tmp_path, capsys):
    code, _, err = run_main(["run", str(tmp_path / "nope.spec")], capsys)
    assert code == 2 and err


def test_validation_error_exits_3(capsys):
    code, _, err = run_main(["run", str(SCENARIOS / "bad-differential.spec")], capsys)
    assert code == 3 and "square-zero" in err


@pytest.mark.parametrize("mutation,code,marker", [
    ({"modules": {"M": {"ranks": {"0": 1}, "differentials": {"0": [["1", "1"]]}}}}, 3, "dimensions"),
    ({"tasks": [{"id": "t", "op": "ext", "source": "ghost", "target": "ghost"}]}, 3, "names-resolve"),
    ({"tasks": [{"id": "t", "op": "frobnicate"}]}, 2, "frobnicate"),
    ({"ring": {"characteristic": 4}}, 3, "characteristic"),
])
def test_invalid_documents(tmp_path, capsys, mutation, code, marker):
    doc = dict(BASE, modules={}, tasks=[])
    doc.update(mutation)
    got, _, err = run_main(["run", write(tmp_path, doc)], capsys)
    assert got == code and marker in err


def test_duplicate_task_ids_are_rejected():
    doc = dict(BASE, modules={"R": {"ranks": {"0": 1}}},
               tasks=[{"id": "a", "op": "truncate", "module": "R", "level": 0}] * 2)
    with pytest.raises((ValidationError, ParseError)):
        loads(json.dumps(doc))


def test_computation_error_exits_4(capsys):
    code, _, err = run_main(["run", "--cutoff", "0", str(SCENARIOS / "ex-3-1.spec")], capsys)
    assert code == 4 and "CutoffTooSmall" in err


def test_seed_must_be_u64(capsys):
    code, _, _ = run_main(["run", "--seed", str(1 << 64), str(SCENARIOS / "ex-3-1.spec")], capsys)
    assert code == 3
    code, _, _ = run_main(["run", "--seed", str((1 << 64) - 1), str(SCENARIOS / "ex-3-1.spec")], capsys)
    assert code == 0


def test_reports_are_byte_identical(capsys):
    path = str(SCENARIOS / "suites.spec")
    outs = []
    for extra in ([], [], ["--parallel"]):
        code, out, _ = run_main(["run", "--json", "--seed", "7", "--samples", "3", *extra, path], capsys)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1] == outs[2]


def test_seed_changes_sampled_results_only():
    path = str(SCENARIOS / "koszul-baer.spec")
    a, b = run(path, RunOptions(seed=1)).to_json(), run(path, RunOptions(seed=2)).to_json()
    assert a["tasks"] == b["tasks"] and a["seed"] != b["seed"]


def test_report_round_trip():
    rep = run(str(SCENARIOS / "ex-3-2.spec"))
    again = Report.from_json(json.loads(rep.dumps()))
    assert again.dumps() == rep.dumps()
    with pytest.raises(ParseError):
        Report.from_json(dict(rep.to_json(), format_version=99))


def test_report_schema():
    d = json.loads(run(str(SCENARIOS / "ex-4-4.spec")).dumps())
    assert set(d) == {"format_version", "scenario", "seed", "passed", "tasks"}
    for t in d["tasks"]:
        assert set(t) == {"id", "op", "status", "result", "expect", "mismatches"}
        assert t["status"] in {"computed", "match", "mismatch"}


def test_timings_are_opt_in():
    d = run(str(SCENARIOS / "ex-3-7.spec"), RunOptions(timings=True)).to_json()
    assert all("seconds" in t for t in d["tasks"])


def test_verify_and_list(capsys):
    code, out, _ = run_main(["verify", "3.2"], capsys)
    assert code == 0 and out.rstrip().endswith("PASS")
    code, out, _ = run_main(["verify", "--json", "4.4"], capsys)
    assert code == 0 and json.loads(out)["passed"] is True
    code, _, _ = run_main(["verify", "nope"], capsys)
    assert code == 3
    code, out, _ = run_main(["list"], capsys)
    assert code == 0 and "theorem-3.5" in out and "baer-sum" in out


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dgext.cli", "verify", "3.7"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
