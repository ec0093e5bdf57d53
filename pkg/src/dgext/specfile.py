"""Loading scenario files: JSON syntax, polynomial strings, named objects.

See docs/spec-format.md for the grammar.  Loading validates everything up
front, so a task never meets a dangling name or a malformed matrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .complexes import GradedMap, complex_from_matrices
from .dg import (DGAlgebra, DGModule, algebra_module, base_algebra, direct_sum_modules, free_module,
                 koszul_algebra, suspend_module)
from .errors import ParseError, ValidationError
from .extensions import Extension, cone_extension, extension_from_cycle, soft_truncate_module, split_extension
from .linalg.matrix import RMatrix
from .linalg.ring import RingDescriptor

FORMAT_VERSION = 1

TASK_OPS = ("ext", "yext1", "psi", "baer-sum", "split-test", "truncate", "verify-example", "property-suite")


@dataclass
class Task:
    id: str
    op: str
    params: dict
    expect: dict | None


@dataclass
class Scenario:
    name: str
    ring: RingDescriptor
    algebra: DGAlgebra
    modules: dict[str, DGModule] = field(default_factory=dict)
    maps: dict[str, GradedMap] = field(default_factory=dict)
    extensions: dict[str, Extension] = field(default_factory=dict)
    tasks: list[Task] = field(default_factory=list)


class _Loader:
    def __init__(self, text: str):
        self.text = text

    def fail(self, msg: str, needle: str | None = None, column_in_needle: int | None = None) -> ParseError:
        # locate the offending string literal for a useful line/column
        if needle is not None:
            pos = self.text.find(json.dumps(needle, ensure_ascii=False))
            if pos >= 0:
                pos += 1 + max((column_in_needle or 1) - 1, 0)
                line = self.text.count("\n", 0, pos) + 1
                col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
                return ParseError(msg, line, col)
        return ParseError(msg)

    def poly(self, ring: RingDescriptor, v: Any, where: str):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise self.fail(f"{where}: matrix entries must be polynomial strings or integers")
        try:
            return ring.parse(v)
        except ParseError as e:
            raise self.fail(f"{where}: {e.message}", v if isinstance(v, str) else None, e.column) from None

    def matrix(self, ring: RingDescriptor, v: Any, rows: int, cols: int, where: str) -> RMatrix:
        if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
            raise self.fail(f"{where}: a matrix is a list of rows")
        if rows == 0 or cols == 0:
            if any(v) and v != [[]] * len(v):
                raise ValidationError(f"{where}: expected an empty {rows} x {cols} matrix", "dimensions")
            return RMatrix.zero(ring, rows, cols)
        entries = [[self.poly(ring, e, where) for e in row] for row in v]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            got = (len(entries), len(entries[0]) if entries else 0)
            raise ValidationError(f"{where}: expected a {rows} x {cols} matrix, got {got[0]} x {got[1]}",
                                  "dimensions")
        return RMatrix(ring, entries, rows, cols)


def _int_key(k: str, where: str, loader: _Loader) -> int:
    try:
        return int(k)
    except ValueError:
        raise loader.fail(f"{where}: degree keys must be integers, got {k!r}", k) from None


def _need(obj: dict, key: str, where: str, loader: _Loader, kind=None):
    if key not in obj:
        raise loader.fail(f"{where}: missing field {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise loader.fail(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return v


def _lookup(table: dict, name: Any, kind: str, where: str):
    if not isinstance(name, str) or name not in table:
        raise ValidationError(f"{where}: unknown {kind} {name!r}", "names-resolve")
    return table[name]


def _build_ring(spec: dict, ld: _Loader) -> RingDescriptor:
    char = _need(spec, "characteristic", "ring", ld, int)
    modulus = spec.get("modulus", "")
    if modulus and not isinstance(modulus, str):
        raise ld.fail("ring.modulus: expected a polynomial string")
    try:
        return RingDescriptor.create(char, modulus or ())
    except ParseError as e:
        raise ld.fail(f"ring.modulus: {e.message}", modulus, e.column) from None


def _build_algebra(spec: dict, ring: RingDescriptor, ld: _Loader) -> DGAlgebra:
    kind = spec.get("type", "base")
    if kind == "base":
        return base_algebra(ring)
    if kind == "koszul":
        elems = _need(spec, "elements", "algebra", ld, list)
        return koszul_algebra(ring, [ld.poly(ring, e, "algebra.elements") for e in elems])
    raise ld.fail(f"algebra.type: unknown algebra type {kind!r}", kind)


def _build_module(name: str, spec: dict, sc: Scenario, ld: _Loader) -> DGModule:
    where = f"modules.{name}"
    A, ring = sc.algebra, sc.ring
    if not isinstance(spec, dict):
        raise ld.fail(f"{where}: expected an object")
    if "free" in spec:
        return free_module(A, [int(s) for s in _need(spec, "free", where, ld, list)], name=name)
    if spec.get("algebra") is True:
        m = algebra_module(A)
        m.name = name
        return m
    if "sum" in spec:
        parts = [_lookup(sc.modules, p, "module", where) for p in _need(spec, "sum", where, ld, list)]
        return direct_sum_modules(parts, name=name)
    if "suspend" in spec:
        m = suspend_module(_lookup(sc.modules, spec["suspend"], "module", where), int(spec.get("by", 1)))
        m.name = name
        return m
    if "truncate" in spec:
        t = soft_truncate_module(_lookup(sc.modules, spec["truncate"], "module", where),
                                 int(_need(spec, "level", where, ld, int)))
        t.module.name = name
        return t.module
    ranks_raw = _need(spec, "ranks", where, ld, dict)
    ranks = {_int_key(k, where, ld): int(v) for k, v in ranks_raw.items()}
    period = spec.get("period")
    if period is not None and (not isinstance(period, int) or period <= 0):
        raise ValidationError(f"{where}.period: must be a positive integer", "period")

    def rank(j):
        return ranks.get(j % period if period else j, 0)

    relations = {}
    for k, mat in spec.get("relations", {}).items():
        j = _int_key(k, where, ld)
        ncols = len(mat[0]) if mat and isinstance(mat[0], list) else 0
        relations[j] = ld.matrix(ring, mat, rank(j), ncols, f"{where}.relations.{k}")
    diffs = {}
    for k, mat in spec.get("differentials", {}).items():
        j = _int_key(k, where, ld)
        diffs[j] = ld.matrix(ring, mat, rank(j - 1), rank(j), f"{where}.differentials.{k}")
    c = complex_from_matrices(ring, ranks, {j: m.data for j, m in diffs.items()},
                              relations={j: m.data for j, m in relations.items()}, period=period)
    labels = {lab: key for key, lab in A.labels.items()}
    action = {}
    for lab, table in spec.get("action", {}).items():
        if lab not in labels:
            raise ValidationError(f"{where}.action: unknown algebra element {lab!r}", "names-resolve")
        key = labels[lab]
        for k, mat in table.items():
            j = _int_key(k, where, ld)
            action[(key, j)] = ld.matrix(ring, mat, rank(j + A.degree_of[key]), rank(j),
                                         f"{where}.action.{lab}.{k}")
    return DGModule(A, c, action, name=name)


def _build_map(name: str, spec: dict, sc: Scenario, ld: _Loader) -> GradedMap:
    where = f"maps.{name}"
    if "identity" in spec:
        return GradedMap.identity(_lookup(sc.modules, spec["identity"], "module", where))
    src = _lookup(sc.modules, _need(spec, "source", where, ld), "module", where)
    tgt = _lookup(sc.modules, _need(spec, "target", where, ld), "module", where)
    deg = int(spec.get("degree", 0))
    comps = {}
    for k, mat in spec.get("components", {}).items():
        j = _int_key(k, where, ld)
        comps[j] = ld.matrix(sc.ring, mat, tgt.piece(j + deg).ngens, src.piece(j).ngens, f"{where}.components.{k}")
    return GradedMap(src, tgt, deg, comps)


def _build_extension(name: str, spec: dict, sc: Scenario, ld: _Loader) -> Extension:
    where = f"extensions.{name}"
    if "cycle" in spec:
        return extension_from_cycle(_lookup(sc.maps, spec["cycle"], "map", where))
    if "cone" in spec:
        return cone_extension(_lookup(sc.maps, spec["cone"], "map", where))
    if "split" in spec:
        n, q = (_lookup(sc.modules, x, "module", where) for x in _need(spec, "split", where, ld, list))
        return split_extension(n, q)
    parts = {k: _lookup(sc.modules, _need(spec, k, where, ld), "module", where) for k in ("n", "x", "q")}
    f = _lookup(sc.maps, _need(spec, "f", where, ld), "map", where)
    g = _lookup(sc.maps, _need(spec, "g", where, ld), "map", where)
    e = Extension(parts["n"], parts["x"], parts["q"], f, g)
    e.validate()
    return e


def loads(text: str, name: str = "<string>") -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    ld = _Loader(text)
    if not isinstance(data, dict):
        raise ParseError("a scenario is a JSON object", 1, 1)
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise ld.fail(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")
    ring = _build_ring(_need(data, "ring", "scenario", ld, dict), ld)
    algebra = _build_algebra(data.get("algebra", {"type": "base"}), ring, ld)
    sc = Scenario(name, ring, algebra)
    for mname, mspec in data.get("modules", {}).items():
        sc.modules[mname] = _build_module(mname, mspec, sc, ld)
    for fname, fspec in data.get("maps", {}).items():
        sc.maps[fname] = _build_map(fname, fspec, sc, ld)
    for ename, espec in data.get("extensions", {}).items():
        sc.extensions[ename] = _build_extension(ename, espec, sc, ld)
    seen = set()
    for i, t in enumerate(_need(data, "tasks", "scenario", ld, list)):
        if not isinstance(t, dict):
            raise ld.fail(f"tasks[{i}]: expected an object")
        op = _need(t, "op", f"tasks[{i}]", ld, str)
        if op not in TASK_OPS:
            raise ld.fail(f"tasks[{i}].op: unknown task {op!r}", op)
        tid = str(t.get("id", f"{i + 1}"))
        if tid in seen:
            raise ValidationError(f"tasks[{i}]: duplicate task id {tid!r}", "names-resolve")
        seen.add(tid)
        expect = t.get("expect")
        if expect is not None and not isinstance(expect, dict):
            raise ld.fail(f"tasks[{i}].expect: expected an object")
        params = {k: v for k, v in t.items() if k not in ("op", "id", "expect")}
        _check_refs(sc, op, params, f"tasks[{i}]")
        sc.tasks.append(Task(tid, op, params, expect))
    return sc


_REFS = {
    "ext": (("source", "modules"), ("target", "modules")),
    "yext1": (("source", "modules"), ("target", "modules")),
    "psi": (("extension", "extensions"),),
    "split-test": (("extension", "extensions"),),
    "truncate": (("module", "modules"),),
}


def _check_refs(sc: Scenario, op: str, params: dict, where: str) -> None:
    for key, table in _REFS.get(op, ()):
        _lookup(getattr(sc, table), params.get(key), table[:-1], where)
    if op == "baer-sum":
        names = params.get("extensions")
        if not isinstance(names, list) or len(names) != 2:
            raise ValidationError(f"{where}: baer-sum needs two extensions", "names-resolve")
        for n in names:
            _lookup(sc.extensions, n, "extension", where)
        if "equivalent_to" in params:
            _lookup(sc.extensions, params["equivalent_to"], "extension", where)


def load(path: str | Path) -> Scenario:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{p}: not UTF-8 ({e.reason})") from None
    return loads(text, p.name)
