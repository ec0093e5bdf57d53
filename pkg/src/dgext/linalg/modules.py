"""Finitely presented modules over the base ring and maps between them.

A module is ``R^g / (column span of its relation matrix)``.  Internally every
module over k[X]/(f) is treated as a k[X]-module whose relations also contain
``f * e_i``; this is what lets one Smith normal form engine handle both kinds
of base ring.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import DimensionMismatch, ValidationError
from .matrix import (ColumnEchelon, RMatrix, SparseVec, smith_diagonal,
                     smith_with_row_transforms, span_basis)
from .poly import Poly
from .ring import RingDescriptor


def reduce_vec(ring: RingDescriptor, v: SparseVec) -> SparseVec:
    out = {}
    for i, e in v.items():
        e = ring.reduce(e)
        if e:
            out[i] = e
    return out


class FPModule:
    """``ngens`` generators modulo the columns of ``relations``."""

    __slots__ = ("ring", "ngens", "relations", "_rel_cols", "_ech", "_inv")

    def __init__(self, ring: RingDescriptor, ngens: int, relations: RMatrix | None = None):
        if relations is None:
            relations = RMatrix.zero(ring, ngens, 0)
        if relations.rows != ngens:
            raise DimensionMismatch(f"relation matrix has {relations.rows} rows for {ngens} generators")
        keep = [j for j in range(relations.cols) if any(relations.data[i][j] for i in range(ngens))]
        if len(keep) != relations.cols:
            relations = relations.submatrix(range(ngens), keep)
        self.ring = ring
        self.ngens = ngens
        self.relations = relations
        self._rel_cols = None
        self._ech = None
        self._inv = None

    @classmethod
    def free(cls, ring: RingDescriptor, rank: int) -> "FPModule":
        return cls(ring, rank)

    @classmethod
    def zero(cls, ring: RingDescriptor) -> "FPModule":
        return cls(ring, 0)

    @classmethod
    def cyclic(cls, ring: RingDescriptor, annihilator) -> "FPModule":
        """R/(a) presented on one generator."""
        return cls(ring, 1, RMatrix.from_entries(ring, [[annihilator]]))

    @property
    def is_free(self) -> bool:
        """True when there are no relations beyond the ring's modulus."""
        return self.relations.cols == 0

    def relation_columns(self) -> list[SparseVec]:
        """Relations as k[X]-vectors, including modulus * e_i over quotient rings."""
        if self._rel_cols is None:
            cols = [self.relations.sparse_column(j) for j in range(self.relations.cols)]
            if self.ring.modulus:
                cols += [{i: self.ring.modulus} for i in range(self.ngens)]
            self._rel_cols = cols
        return self._rel_cols

    def _echelon(self) -> ColumnEchelon:
        if self._ech is None:
            self._ech = ColumnEchelon(self.ring.polys, self.ngens,
                                      [self.relations.sparse_column(j) for j in range(self.relations.cols)]
                                      + ([{i: self.ring.modulus} for i in range(self.ngens)]
                                         if self.ring.modulus else []))
        return self._ech

    def is_zero_element(self, v: SparseVec) -> bool:
        v = reduce_vec(self.ring, v)
        if not v:
            return True
        if self.is_free:
            return False
        return self._echelon().solve(v) is not None

    def invariants(self) -> tuple[Poly, ...]:
        """Smith invariant factors over k[X]: monic, non-unit, () marks a free k[X] summand."""
        if self._inv is None:
            if self.ngens == 0:
                self._inv = ()
            else:
                diag = smith_diagonal(self.ring.polys, self.ngens, self.relation_columns())
                diag = list(diag) + [()] * (self.ngens - len(diag))
                P = self.ring.polys
                inv = [P.monic(d) for d in diag if not (d and len(d) == 1)]
                # zero entries (free summands) sort last in the divisibility chain
                self._inv = tuple([d for d in inv if d] + [d for d in inv if not d])
        return self._inv

    def is_zero(self) -> bool:
        return not self.invariants()

    def is_projective(self) -> bool:
        """Each cyclic summand R/(d) is projective: d = 0 over k[X]; d | f, gcd(d, f/d) = 1 over k[X]/(f)."""
        f = self.ring.modulus
        P = self.ring.polys
        for d in self.invariants():
            if not f:
                if d:
                    return False
            elif not P.divides(d, f) or len(P.gcd(d, P.exact_div(f, d))) != 1:
                return False
        return True

    def format_invariants(self) -> list[str]:
        return [self.ring.format(d) for d in self.invariants()]

    def __repr__(self):
        return f"FPModule({self.ngens} gens, invariants={self.format_invariants()})"


def direct_sum(ring: RingDescriptor, modules: Sequence[FPModule]) -> FPModule:
    n = sum(m.ngens for m in modules)
    cols = []
    off = 0
    for m in modules:
        for j in range(m.relations.cols):
            cols.append({off + i: e for i, e in m.relations.sparse_column(j).items()})
        off += m.ngens
    return FPModule(ring, n, RMatrix.from_sparse_columns(ring, n, cols))


class ModuleMap:
    """A homomorphism given by its matrix on generators."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FPModule, target: FPModule, matrix: RMatrix, check: bool = True):
        if matrix.shape != (target.ngens, source.ngens):
            raise DimensionMismatch(f"map matrix {matrix.shape} does not fit {source.ngens} -> {target.ngens}")
        self.source = source
        self.target = target
        self.matrix = matrix
        if check and not source.is_free and not target_respects(matrix, source, target):
            raise ValidationError("matrix does not map relations into relations", "well-defined")

    @classmethod
    def identity(cls, m: FPModule) -> "ModuleMap":
        return cls(m, m, RMatrix.identity(m.ring, m.ngens), check=False)

    @classmethod
    def zero(cls, source: FPModule, target: FPModule) -> "ModuleMap":
        return cls(source, target, RMatrix.zero(source.ring, target.ngens, source.ngens), check=False)

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.source, self.target, -self.matrix, check=False)

    def is_zero(self) -> bool:
        return matrix_is_zero_map(self.matrix, self.target)

    def equals(self, other: "ModuleMap") -> bool:
        return (self - other).is_zero()

    def __repr__(self):
        return f"ModuleMap({self.matrix.to_strings()})"


def matrix_is_zero_map(matrix: RMatrix, target: FPModule) -> bool:
    if matrix.is_zero():
        return True
    if target.is_free:
        return False
    return all(target.is_zero_element(matrix.sparse_column(j)) for j in range(matrix.cols))


def target_respects(matrix: RMatrix, source: FPModule, target: FPModule) -> bool:
    """Does the matrix send every relation of ``source`` to zero in ``target``?"""
    if source.is_free:
        return True
    return matrix_is_zero_map(matrix @ source.relations, target)


class Subquotient:
    """span(K) / (span(K) ∩ span(B)) inside k[X]^n, presented in Smith form.

    ``gens`` are ambient vectors of the simplified generators, ``invariants``
    their annihilators (``()`` for free), and ``coords`` expresses an ambient
    vector of span(K) + span(B) in those generators.
    """

    def __init__(self, ring: RingDescriptor, n: int, K: Sequence[SparseVec], B: Sequence[SparseVec]):
        P = ring.polys
        self.ring = ring
        self.n = n
        K = [v for v in (reduce_vec(ring, v) for v in K) if v]
        if ring.modulus:
            B = list(B) + [{i: ring.modulus} for i in range(n)]
        kb = span_basis(P, n, K) if K else []
        self._kb = kb
        self._ech = ColumnEchelon(P, n, kb + list(B))
        m = len(kb)
        rels = []
        for v in self._ech.kernel():
            proj = {i: e for i, e in v.items() if i < m}
            if proj:
                rels.append(proj)
        if m:
            diag, U, Ui = smith_with_row_transforms(P, m, rels)
        else:
            diag, U, Ui = [], [], []
        kept = [i for i in range(m) if not (diag[i] and len(diag[i]) == 1)]
        self._U = [U[i] for i in kept]
        self.invariants = tuple(P.monic(diag[i]) for i in kept)
        gens = []
        for i in kept:
            vec: dict[int, Poly] = {}
            for j, bj in enumerate(kb):
                c = Ui[j][i]
                if not c:
                    continue
                for r, e in bj.items():
                    nv = P.add(vec.get(r, ()), P.mul(c, e))
                    if nv:
                        vec[r] = nv
                    else:
                        vec.pop(r, None)
            gens.append(reduce_vec(ring, vec))
        self.gens = gens
        relations = RMatrix.diagonal(ring, [d for d in self.invariants]) if kept else RMatrix.zero(ring, 0, 0)
        self.module = FPModule(ring, len(kept), relations)

    def __len__(self):
        return len(self.gens)

    def coords(self, v: SparseVec) -> list[Poly] | None:
        """Coordinates of ``v`` in ``gens`` (reduced), or None when v ∉ span(K) + span(B)."""
        y = self._ech.solve(reduce_vec(self.ring, v))
        if y is None:
            return None
        P = self.ring.polys
        m = len(self._kb)
        c = [y.get(j, ()) for j in range(m)]
        out = []
        for row, d in zip(self._U, self.invariants):
            acc = ()
            for u, cj in zip(row, c):
                if u and cj:
                    acc = P.add(acc, P.mul(u, cj))
            if d:
                acc = P.mod(acc, d)
            out.append(self.ring.reduce(acc))
        return out

    def contains(self, v: SparseVec) -> bool:
        return self._ech.solve(reduce_vec(self.ring, v)) is not None


# ---------------------------------------------------------------------------
# operations on single maps
# ---------------------------------------------------------------------------

def _kernel_vectors(matrix: RMatrix, target: FPModule) -> list[SparseVec]:
    """Generators of {x : matrix x = 0 in target} (k[X]-vectors, source coordinates)."""
    n = matrix.cols
    cols = [matrix.sparse_column(j) for j in range(n)] + target.relation_columns()
    ech = ColumnEchelon(matrix.ring.polys, matrix.rows, cols)
    out = []
    for v in ech.kernel():
        proj = {i: e for i, e in v.items() if i < n}
        if proj:
            out.append(proj)
    return out


def kernel(f: ModuleMap) -> tuple[FPModule, ModuleMap]:
    ring = f.source.ring
    sq = Subquotient(ring, f.source.ngens, _kernel_vectors(f.matrix, f.target),
                     [f.source.relations.sparse_column(j) for j in range(f.source.relations.cols)])
    inc = RMatrix.from_sparse_columns(ring, f.source.ngens, sq.gens)
    return sq.module, ModuleMap(sq.module, f.source, inc, check=False)


def cokernel(f: ModuleMap) -> tuple[FPModule, ModuleMap]:
    ring = f.source.ring
    rel = f.target.relations.hstack(f.matrix)
    q = FPModule(ring, f.target.ngens, rel)
    return q, ModuleMap(f.target, q, RMatrix.identity(ring, f.target.ngens), check=False)


def image(f: ModuleMap) -> tuple[FPModule, ModuleMap]:
    ring = f.source.ring
    sq = Subquotient(ring, f.target.ngens, [f.matrix.sparse_column(j) for j in range(f.matrix.cols)],
                     [f.target.relations.sparse_column(j) for j in range(f.target.relations.cols)])
    inc = RMatrix.from_sparse_columns(ring, f.target.ngens, sq.gens)
    return sq.module, ModuleMap(sq.module, f.target, inc, check=False)


def is_injective(f: ModuleMap) -> bool:
    return kernel(f)[0].is_zero()


def is_surjective(f: ModuleMap) -> bool:
    return cokernel(f)[0].is_zero()


# ---------------------------------------------------------------------------
# Hom
# ---------------------------------------------------------------------------

class HomModule:
    """Hom_R(p, q) with generators realised as actual module maps."""

    def __init__(self, p: FPModule, q: FPModule):
        if p.ring != q.ring:
            raise ValidationError("modules over different rings", "same-ring")
        ring = p.ring
        self.source, self.target = p, q
        tq, sp = q.ngens, p.ngens
        n = tq * sp
        qrels = q.relation_columns()
        if p.is_free:
            K = [{i: (1,)} for i in range(n)]
        else:
            # F * rho ≡ 0 in q for every relation rho of p
            nrel = p.relations.cols
            rows = nrel * tq
            cols: list[SparseVec] = []
            for s in range(sp):
                for t in range(tq):
                    col = {}
                    for k in range(nrel):
                        e = p.relations.data[s][k]
                        if e:
                            col[k * tq + t] = e
                    cols.append(col)
            for k in range(nrel):
                for qc in qrels:
                    cols.append({k * tq + r: e for r, e in qc.items()})
            ech = ColumnEchelon(ring.polys, rows, cols)
            K = [{i: e for i, e in v.items() if i < n} for v in ech.kernel()]
            K = [v for v in K if v]
        B = [{s * tq + r: e for r, e in q.relations.sparse_column(j).items()}
             for s in range(sp) for j in range(q.relations.cols)]
        self._sq = Subquotient(ring, n, K, B)
        self.module = self._sq.module

    def _to_matrix(self, vec: SparseVec) -> RMatrix:
        tq = self.target.ngens
        return RMatrix.from_sparse_columns(
            self.source.ring, tq,
            [{r: vec[s * tq + r] for r in range(tq) if s * tq + r in vec} for s in range(self.source.ngens)])

    def evaluate(self, i: int) -> ModuleMap:
        return ModuleMap(self.source, self.target, self._to_matrix(self._sq.gens[i]), check=False)

    def generators(self) -> list[ModuleMap]:
        return [self.evaluate(i) for i in range(len(self._sq))]

    def coordinates(self, f: ModuleMap) -> list[Poly] | None:
        tq = self.target.ngens
        vec = {}
        for s in range(self.source.ngens):
            for r in range(tq):
                e = f.matrix.data[r][s]
                if e:
                    vec[s * tq + r] = e
        return self._sq.coords(vec)


def hom_module(p: FPModule, q: FPModule) -> tuple[FPModule, HomModule]:
    h = HomModule(p, q)
    return h.module, h
