"""Degree-d pieces of Hom complexes, as subquotients of a coordinate space.

A graded map of degree d is stored as one coefficient vector: the matrix of
its component at source degree j occupies a block, entry (t, s) at
``offset_j + s * rows_j + t``.  Everything else (A-linearity, well-definedness,
cycle conditions, affine equations) is a linear condition on that vector.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .complexes import GradedMap
from .errors import IncompatibleAlgebras
from .linalg.matrix import ColumnEchelon, RMatrix, SparseVec, _axpy
from .linalg.modules import FPModule, Subquotient, reduce_vec
from .linalg.poly import Poly


class MapSpace:
    """All families of generator matrices M_j -> N_{j+d}, as a free coordinate space."""

    def __init__(self, source, target, degree: int):
        self.source, self.target, self.degree = source, target, degree
        sc, tc = source.complex, target.complex
        self.ring = sc.ring
        self.blocks: dict[int, tuple[int, int, int]] = {}
        off = 0
        for j in sc.degrees():
            r, c = tc.piece(j + degree).ngens, sc.piece(j).ngens
            if r and c:
                self.blocks[j] = (r, c, off)
                off += r * c
        self.dim = off

    def key(self, j: int) -> int | None:
        p = self.source.complex.period
        return j % p if p else j

    def vec(self, f: GradedMap) -> SparseVec:
        out = {}
        for j, m in f.components.items():
            blk = self.blocks.get(j)
            if blk is None:
                continue
            r, c, off = blk
            for t in range(r):
                row = m.data[t]
                for s in range(c):
                    if row[s]:
                        out[off + s * r + t] = row[s]
        return out

    def unvec(self, v: SparseVec) -> GradedMap:
        comps = {}
        for j, (r, c, off) in self.blocks.items():
            data = [[() for _ in range(c)] for _ in range(r)]
            hit = False
            for s in range(c):
                for t in range(r):
                    e = v.get(off + s * r + t)
                    if e:
                        data[t][s] = self.ring.reduce(e)
                        hit = True
            if hit:
                comps[j] = RMatrix._raw(self.ring, tuple(tuple(row) for row in data), r, c)
        return GradedMap(self.source, self.target, self.degree, comps)

    def zero_relations(self, include_modulus: bool = True) -> list[SparseVec]:
        """Vectors spanning the maps that vanish in the target (column by column)."""
        tc = self.target.complex
        out = []
        for j, (r, c, off) in self.blocks.items():
            tgt = tc.piece(j + self.degree)
            rels = tgt.relation_columns() if include_modulus else \
                [tgt.relations.sparse_column(k) for k in range(tgt.relations.cols)]
            for s in range(c):
                base = off + s * r
                for col in rels:
                    out.append({base + t: e for t, e in col.items()})
        return out


def linearity_basis(source, target) -> list[tuple[object, int]]:
    """Non-unit basis elements of the common DG algebra (empty for plain complexes)."""
    a, b = getattr(source, "algebra", None), getattr(target, "algebra", None)
    if a is None or b is None:
        return []
    if a != b:
        raise IncompatibleAlgebras("source and target are modules over different DG algebras")
    return a.nonunit_basis()


class _Rows:
    """Allocator for constraint rows and the matching 'is zero in the target' columns."""

    def __init__(self):
        self.n = 0
        self.zero_cols: list[SparseVec] = []

    def block(self, rows: int, cols: int, target: FPModule) -> int:
        off = self.n
        self.n += rows * cols
        rels = target.relation_columns()
        for s in range(cols):
            for col in rels:
                self.zero_cols.append({off + s * rows + t: e for t, e in col.items()})
        return off


class HomPiece:
    """Degree-d maps M -> N that are well defined and (optionally) A-linear, modulo maps that vanish."""

    def __init__(self, source, target, degree: int, a_linear: bool = True):
        self.source, self.target, self.degree = source, target, degree
        self.space = space = MapSpace(source, target, degree)
        ring = space.ring
        P = ring.polys
        sc, tc = source.complex, target.complex
        basis = linearity_basis(source, target) if a_linear else []
        rows = _Rows()
        columns: list[dict[int, Poly]] = [dict() for _ in range(space.dim)]

        def add(col: dict, idx: int, val: Poly):
            nv = P.add(col.get(idx, ()), val)
            if nv:
                col[idx] = nv
            else:
                col.pop(idx, None)

        for j, (r, c, off) in space.blocks.items():
            rel = sc.piece(j).relations
            if rel.cols:
                roff = rows.block(r, rel.cols, tc.piece(j + degree))
                for s in range(c):
                    for k in range(rel.cols):
                        e = rel.data[s][k]
                        if e:
                            for t in range(r):
                                add(columns[off + s * r + t], roff + k * r + t, e)

        for key, ia in basis:
            sign_neg = (degree * ia) % 2 == 1
            for j in sc.degrees():
                cm = sc.piece(j).ngens
                rn = tc.piece(j + ia + degree).ngens
                if not (cm and rn):
                    continue
                act_m = source.act(key, j)          # M_j -> M_{j+ia}
                act_n = target.act(key, j + degree)  # N_{j+d} -> N_{j+d+ia}
                if act_m.is_zero() and act_n.is_zero():
                    continue
                boff = rows.block(rn, cm, tc.piece(j + ia + degree))
                # F_{j+ia} act_m
                blk = space.blocks.get(space.key(j + ia))
                if blk is not None and not act_m.is_zero():
                    r1, c1, off1 = blk
                    for s in range(c1):
                        arow = act_m.data[s]
                        for t in range(r1):
                            col = columns[off1 + s * r1 + t]
                            for cc in range(cm):
                                if arow[cc]:
                                    add(col, boff + cc * rn + t, arow[cc])
                # -(-1)^{d|a|} act_n F_j
                blk = space.blocks.get(space.key(j))
                if blk is not None and not act_n.is_zero():
                    r0, c0, off0 = blk
                    for s in range(c0):
                        for t in range(r0):
                            col = columns[off0 + s * r0 + t]
                            for rr in range(rn):
                                e = act_n.data[rr][t]
                                if e:
                                    add(col, boff + s * rn + rr, e if sign_neg else P.neg(e))
        self.constraint_rows = rows.n
        if rows.n:
            ech = ColumnEchelon(P, rows.n, columns + rows.zero_cols)
            K = [{i: e for i, e in v.items() if i < space.dim} for v in ech.kernel()]
            K = [v for v in K if v]
        else:
            K = [{i: (1,)} for i in range(space.dim)]
        self._sq = Subquotient(ring, space.dim, K, space.zero_relations(include_modulus=False))
        self.module = self._sq.module
        self.invariants = self._sq.invariants
        self.gens = [space.unvec(g) for g in self._sq.gens]
        self._gen_vecs = self._sq.gens

    def coords(self, f: GradedMap) -> list[Poly] | None:
        return self._sq.coords(self.space.vec(f))

    def contains(self, f: GradedMap) -> bool:
        return self._sq.contains(self.space.vec(f))

    def combine(self, coeffs: Sequence[Poly] | dict[int, Poly]) -> GradedMap:
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        P = self.space.ring.polys
        v: dict[int, Poly] = {}
        for t, c in items:
            if c:
                _axpy(P, v, P.neg(c), self._gen_vecs[t])
        return self.space.unvec(reduce_vec(self.space.ring, v))


Equation = tuple[Callable[[GradedMap], GradedMap], MapSpace, "GradedMap | None"]


def solve_in_piece(piece: HomPiece, equations: Sequence[Equation]) -> tuple[GradedMap, list[GradedMap]] | None:
    """Find F in ``piece`` with L_k(F) = rhs_k in each space (modulo maps vanishing there).

    Each L_k must be additive.  Returns a particular solution and generators
    of the homogeneous solutions, or None.
    """
    ring = piece.space.ring
    m = len(piece.gens)
    offsets = []
    total = 0
    for _, space, _ in equations:
        offsets.append(total)
        total += space.dim
    cols: list[SparseVec] = []
    for g in piece.gens:
        col = {}
        for (fn, space, _), off in zip(equations, offsets):
            for i, e in space.vec(fn(g)).items():
                col[off + i] = e
        cols.append(reduce_vec(ring, col))
    for (_, space, _), off in zip(equations, offsets):
        for z in space.zero_relations():
            cols.append({off + i: e for i, e in z.items()})
    rhs = {}
    for (_, space, b), off in zip(equations, offsets):
        if b is not None:
            for i, e in space.vec(b).items():
                rhs[off + i] = e
    ech = ColumnEchelon(ring.polys, total, cols)
    y = ech.solve(rhs)
    if y is None:
        return None
    part = piece.combine({t: e for t, e in y.items() if t < m})
    homog = []
    for v in ech.kernel():
        c = {t: e for t, e in v.items() if t < m}
        if c:
            h = piece.combine(c)
            if h.components:
                homog.append(h)
    return part, homog


class HomHomology:
    """H_d(Hom_A(M, N)) with generators realised as cycles."""

    def __init__(self, source, target, degree: int, a_linear: bool = True, boundaries: bool = True):
        self.source, self.target, self.degree = source, target, degree
        piece = HomPiece(source, target, degree, a_linear)
        below = MapSpace(source, target, degree - 1)
        space = piece.space
        ring = space.ring
        P = ring.polys
        self.piece, self.space = piece, space
        m = len(piece.gens)
        cols = [reduce_vec(ring, below.vec(g.differential())) for g in piece.gens] + below.zero_relations()
        Z = []
        for v in ColumnEchelon(P, below.dim, cols).kernel():
            acc: dict[int, Poly] = {}
            for t, e in v.items():
                if t < m:
                    _axpy(P, acc, P.neg(e), piece._gen_vecs[t])
            acc = reduce_vec(ring, acc)
            if acc:
                Z.append(acc)
        B = space.zero_relations(include_modulus=False)
        if boundaries:
            upper = HomPiece(source, target, degree + 1, a_linear)
            B = [space.vec(h.differential()) for h in upper.gens] + B
        self._sq = Subquotient(ring, space.dim, Z, B)
        self.module = self._sq.module
        self.invariants = self._sq.invariants
        self.gens = [space.unvec(g) for g in self._sq.gens]

    def coords(self, f: GradedMap) -> list[Poly] | None:
        return self._sq.coords(self.space.vec(f))

    def is_zero_class(self, f: GradedMap) -> bool:
        c = self.coords(f)
        if c is None:
            raise ValueError("map is not a cycle of the Hom complex")
        return not any(c)

    def same_class(self, f: GradedMap, g: GradedMap) -> bool:
        return self.is_zero_class(f - g)


def hom_complex(source, target, degrees: Sequence[int], a_linear: bool = True, period: int | None = None):
    """Window of the Hom complex (or one period of it) as a Complex plus the pieces used."""
    from .complexes import Complex
    pieces = {d: HomPiece(source, target, d, a_linear) for d in degrees}
    ring = source.complex.ring
    diffs = {}
    for d in degrees:
        below = (d - 1) % period if period else d - 1
        if below not in pieces:
            continue
        lower = pieces[below]
        cols = []
        for g in pieces[d].gens:
            c = lower.coords(g.differential())
            cols.append(c)
        diffs[d] = RMatrix.from_columns(ring, len(lower.gens), cols) if cols else \
            RMatrix.zero(ring, len(lower.gens), 0)
    return Complex(ring, {d: p.module for d, p in pieces.items()}, diffs, period=period), pieces
