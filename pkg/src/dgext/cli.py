"""Command-line front end: ``dgext run <file>``, ``dgext verify <name>``, ``dgext list``.

Exit codes: 0 every expectation met, 1 some mismatch, 2 parse error,
3 validation error, 4 computation error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .complexes import GradedMap, homology
from .dg import morphism_module
from .errors import ComputationError, NotGradedSplit, ParseError, ValidationError
from .extensions import are_equivalent, baer_sum, graded_splitting, is_split, psi, soft_truncate_module
from .homs import HomHomology
from .resolutions import dimension_shift_yext, ext_group, is_graded_projective
from .scenarios import EXAMPLES, SUITES, run_suite, verify_example
from .specfile import FORMAT_VERSION, Scenario, Task, TASK_OPS, load

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_VALIDATION, EXIT_COMPUTATION = range(5)


@dataclass
class RunOptions:
    seed: int = 0
    cutoff: int | None = None
    samples: int | None = None
    parallel: bool = False
    timings: bool = False


@dataclass
class TaskResult:
    id: str
    op: str
    result: dict
    expect: dict | None
    mismatches: list[str]
    seconds: float | None = None

    @property
    def status(self) -> str:
        if self.expect is None:
            return "computed"
        return "mismatch" if self.mismatches else "match"

    def to_json(self) -> dict:
        out = {"id": self.id, "op": self.op, "status": self.status, "result": self.result,
               "expect": self.expect, "mismatches": self.mismatches}
        if self.seconds is not None:
            out["seconds"] = round(self.seconds, 6)
        return out

    @classmethod
    def from_json(cls, d: dict) -> "TaskResult":
        return cls(d["id"], d["op"], d["result"], d["expect"], d["mismatches"], d.get("seconds"))


@dataclass
class Report:
    scenario: str
    seed: int
    tasks: list[TaskResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not any(t.mismatches for t in self.tasks)

    def to_json(self) -> dict:
        return {"format_version": FORMAT_VERSION, "scenario": self.scenario, "seed": self.seed,
                "passed": self.passed, "tasks": [t.to_json() for t in self.tasks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> "Report":
        if d.get("format_version") != FORMAT_VERSION:
            raise ParseError(f"unsupported report format_version {d.get('format_version')!r}")
        return cls(d["scenario"], d["seed"], [TaskResult.from_json(t) for t in d["tasks"]])


# ---------------------------------------------------------------------------
# serialisation of mathematical objects
# ---------------------------------------------------------------------------

def _map_json(f: GradedMap) -> dict:
    return {"degree": f.degree,
            "components": {str(j): m.to_strings() for j, m in sorted(f.components.items()) if not m.is_zero()}}


# ---------------------------------------------------------------------------
# task execution
# ---------------------------------------------------------------------------

def _task_ext(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    m, n = sc.modules[p["source"]], sc.modules[p["target"]]
    cutoff = p.get("cutoff", opts.cutoff)
    g = ext_group(m, n, int(p.get("degree", 1)), cutoff=cutoff)
    inv = g.module.format_invariants()
    return {"invariants": inv, "zero": not inv, "resolution_generators": len(g.resolution.generator_degrees)}


def _task_yext(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    q, n = sc.modules[p["source"]], sc.modules[p["target"]]
    i = int(p.get("degree", 1))
    if i == 0:
        inv = morphism_module(q, n).format_invariants()
        method = "morphisms"
    elif i == 1:
        if not is_graded_projective(q):
            raise ValidationError("yext1 via H_{-1}(Hom) needs a graded-projective first argument", "hypothesis")
        inv = HomHomology(q, n, -1).module.format_invariants()
        method = "hom-homology"
    else:
        inv = dimension_shift_yext(q, n, i).format_invariants()
        method = "dimension-shift"
    return {"invariants": inv, "zero": not inv, "method": method}


def _task_psi(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    c = psi(sc.extensions[p["extension"]])
    return {"zero": c.is_zero(), "representative": _map_json(c.representative)}


def _task_split(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    e = sc.extensions[p["extension"]]
    verdict = is_split(e)
    try:
        graded_splitting(e)
        graded = True
    except NotGradedSplit:
        graded = False
    out = {"verdict": "Split" if verdict else "NotSplit", "graded_split": graded}
    if verdict:
        out["retraction"] = _map_json(verdict.retraction)
    return out


def _task_baer(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    e1, e2 = (sc.extensions[x] for x in p["extensions"])
    s = baer_sum(e1, e2)
    out = {"split": bool(is_split(s))}
    try:
        out["psi_zero"] = psi(s).is_zero()
    except NotGradedSplit:
        out["psi_zero"] = None
    if "equivalent_to" in p:
        out["equivalent"] = are_equivalent(s, sc.extensions[p["equivalent_to"]])
    return out


def _task_truncate(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    t = soft_truncate_module(sc.modules[p["module"]], int(p["level"]))
    h = homology(t.module.complex)
    return {"zero": t.module.is_zero(), "quasi_isomorphism": t.quasi_isomorphism,
            "pieces": {str(j): t.module.piece(j).format_invariants() for j in t.module.degrees()
                       if not t.module.piece(j).is_zero()},
            "homology": {str(j): inv for j, inv in sorted(h.invariants().items()) if inv}}


def _task_verify(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    rep = verify_example(p["name"], seed=int(p.get("seed", opts.seed)), samples=p.get("samples", opts.samples))
    return {"passed": rep.passed, "checks": rep.to_json()["checks"]}


def _task_suite(sc: Scenario, p: dict, opts: RunOptions, rng) -> dict:
    samples = int(p.get("samples", opts.samples or 20))
    res = run_suite(p["suite"], samples, rng)
    return {"instances": res.instances, "violations": res.violations}


_RUNNERS = {
    "ext": _task_ext,
    "yext1": _task_yext,
    "psi": _task_psi,
    "baer-sum": _task_baer,
    "split-test": _task_split,
    "truncate": _task_truncate,
    "verify-example": _task_verify,
    "property-suite": _task_suite,
}
assert set(_RUNNERS) == set(TASK_OPS)


def _compare(expect: dict | None, result: dict) -> list[str]:
    if expect is None:
        return []
    return sorted(k for k, v in expect.items() if result.get(k, object()) != v)


def run_task(sc: Scenario, index: int, task: Task, opts: RunOptions) -> TaskResult:
    rng = random.Random(f"{opts.seed}:{index}")
    t0 = time.perf_counter()
    result = _RUNNERS[task.op](sc, task.params, opts, rng)
    # normalise through JSON so the report compares exactly what it prints
    result = json.loads(json.dumps(result))
    dt = time.perf_counter() - t0
    return TaskResult(task.id, task.op, result, task.expect, _compare(task.expect, result),
                      dt if opts.timings else None)


def run(path: str, opts: RunOptions | None = None) -> Report:
    opts = opts or RunOptions()
    sc = load(path)
    jobs = list(enumerate(sc.tasks))
    if opts.parallel and len(jobs) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda it: run_task(sc, it[0], it[1], opts), jobs))
    else:
        results = [run_task(sc, i, t, opts) for i, t in jobs]
    return Report(sc.name, opts.seed, results)


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------

def _brief(result: dict) -> str:
    keys = [k for k in ("verdict", "invariants", "zero", "passed", "violations", "split", "equivalent")
            if k in result]
    return ", ".join(f"{k}={json.dumps(result[k], ensure_ascii=False)}" for k in keys)


def render_text(rep: Report) -> str:
    lines = [f"scenario {rep.scenario} (seed {rep.seed})"]
    for t in rep.tasks:
        line = f"  [{t.status}] {t.id} {t.op}: {_brief(t.result)}"
        if t.mismatches:
            line += "  -- expected " + ", ".join(f"{k}={json.dumps(t.expect[k], ensure_ascii=False)}"
                                                 for k in t.mismatches)
        if t.seconds is not None:
            line += f"  ({t.seconds:.3f}s)"
        lines.append(line)
    lines.append("PASS" if rep.passed else "FAIL")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dgext", description="Exact Ext and Yoneda Ext for DG modules.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="seed for sampled tasks (default 0)")
        p.add_argument("--samples", type=int, default=None, help="instance count for property suites")
        p.add_argument("--json", action="store_true", help="print the machine-readable report")

    r = sub.add_parser("run", help="run the tasks of a scenario file")
    r.add_argument("file")
    common(r)
    r.add_argument("--cutoff", type=int, default=None, help="resolution cutoff for ext tasks")
    r.add_argument("--parallel", action="store_true", help="run independent tasks concurrently")
    r.add_argument("--timings", action="store_true", help="record wall-clock time per task")
    v = sub.add_parser("verify", help="check a built-in worked example")
    v.add_argument("name")
    common(v)
    sub.add_parser("list", help="list built-in examples, suites and task kinds")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "list":
            out.write("examples: " + " ".join(EXAMPLES) + "\n")
            out.write("suites:   " + " ".join(SUITES) + "\n")
            out.write("tasks:    " + " ".join(TASK_OPS) + "\n")
            return EXIT_OK
        if args.seed < 0 or args.seed >= 1 << 64:
            raise ValidationError("--seed must be an unsigned 64-bit integer", "seed")
        if args.command == "verify":
            rep = verify_example(args.name, seed=args.seed, samples=args.samples)
            if args.json:
                out.write(json.dumps({"format_version": FORMAT_VERSION, "seed": args.seed, **rep.to_json()},
                                     indent=2, ensure_ascii=False, sort_keys=True) + "\n")
            else:
                out.write(f"example {rep.name}\n")
                for c in rep.checks:
                    out.write(f"  [{'ok' if c.passed else 'FAIL'}] {c.claim}: {c.observed}\n")
                out.write("PASS\n" if rep.passed else "FAIL\n")
            return EXIT_OK if rep.passed else EXIT_MISMATCH
        opts = RunOptions(args.seed, args.cutoff, args.samples, args.parallel, args.timings)
        rep = run(args.file, opts)
        out.write(rep.dumps() if args.json else render_text(rep))
        return EXIT_OK if rep.passed else EXIT_MISMATCH
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as e:
        print(f"validation error [{e.invariant}]: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except ComputationError as e:
        print(f"computation error [{type(e).__name__}]: {e}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
