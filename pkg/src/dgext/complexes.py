"""Complexes of finitely presented modules: bounded or strictly periodic.

Sign conventions (used throughout the package, see docs/conventions.md):

* (Σⁿ M)_i = M_{i-n} with differential (-1)ⁿ ∂^M;
* the Hom differential is ∂(f) = ∂^N f - (-1)^{|f|} f ∂^M;
* cone(f)_i = N_i ⊕ M_{i-1} with differential [[∂^N, f], [0, -∂^M]].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionMismatch, NotAChainMap, ValidationError
from .linalg.matrix import RMatrix
from .linalg.modules import FPModule, ModuleMap, Subquotient, _kernel_vectors, matrix_is_zero_map, target_respects
from .linalg.ring import RingDescriptor


class Complex:
    """Graded family of modules with square-zero differentials ∂_i: C_i -> C_{i-1}.

    With ``period`` set, pieces and differentials are indexed by residues
    mod ``period`` and repeat in every degree.
    """

    def __init__(self, ring: RingDescriptor, pieces: Mapping[int, FPModule],
                 differentials: Mapping[int, RMatrix] | None = None, period: int | None = None,
                 check: bool = True):
        differentials = dict(differentials or {})
        if period is not None:
            if period < 1:
                raise ValidationError("period must be positive", "period")
            if set(pieces) != set(range(period)):
                raise ValidationError("a periodic complex needs one piece per residue", "period")
            pieces = dict(pieces)
        else:
            pieces = {i: m for i, m in pieces.items() if m.ngens}
        self.ring = ring
        self.period = period
        self.pieces = pieces
        self.differentials = {}
        for i, d in differentials.items():
            i = self._key(i)
            src, tgt = self.piece(i), self.piece(i - 1)
            if d.shape != (tgt.ngens, src.ngens):
                raise DimensionMismatch(f"differential {i} has shape {d.shape}, expected {(tgt.ngens, src.ngens)}")
            if not d.is_zero():
                self.differentials[i] = d
        if check:
            self.validate()

    def _key(self, i: int) -> int:
        return i % self.period if self.period else i

    @property
    def complex(self) -> "Complex":
        return self

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def piece(self, i: int) -> FPModule:
        if self.period:
            return self.pieces[i % self.period]
        m = self.pieces.get(i)
        return m if m is not None else FPModule.zero(self.ring)

    def diff(self, i: int) -> RMatrix:
        d = self.differentials.get(self._key(i))
        if d is None:
            return RMatrix.zero(self.ring, self.piece(i - 1).ngens, self.piece(i).ngens)
        return d

    def differential(self, i: int) -> ModuleMap:
        return ModuleMap(self.piece(i), self.piece(i - 1), self.diff(i), check=False)

    def degrees(self) -> list[int]:
        """Support degrees (bounded) or residues 0..period-1 (periodic)."""
        if self.period:
            return list(range(self.period))
        return sorted(self.pieces)

    @property
    def lo(self) -> int | None:
        return min(self.pieces) if self.pieces and not self.period else None

    @property
    def hi(self) -> int | None:
        return max(self.pieces) if self.pieces and not self.period else None

    def validate(self) -> None:
        for i in self.degrees():
            d = self.diff(i)
            if not target_respects(d, self.piece(i), self.piece(i - 1)):
                raise ValidationError(f"differential {i} is not well defined", "well-defined")
            dd = self.diff(i - 1) @ d
            if not matrix_is_zero_map(dd, self.piece(i - 2)):
                raise ValidationError(f"∂_{i - 1}∘∂_{i} ≠ 0", "square-zero")

    def is_zero(self) -> bool:
        return all(self.piece(i).is_zero() for i in self.degrees())

    def __repr__(self):
        kind = f"period={self.period}" if self.period else f"[{self.lo}, {self.hi}]"
        return f"Complex({kind}, ranks={ {i: self.piece(i).ngens for i in self.degrees()} })"


def zero_complex(ring: RingDescriptor) -> Complex:
    return Complex(ring, {})


def periodic_complex(ring: RingDescriptor, pieces, differentials, period: int) -> Complex:
    return Complex(ring, pieces, differentials, period=period)


def complex_from_matrices(ring: RingDescriptor, ranks: Mapping[int, int], differentials: Mapping[int, list],
                          relations: Mapping[int, list] | None = None, period: int | None = None) -> Complex:
    """Convenience constructor from entry lists (strings, ints or ring elements)."""
    relations = relations or {}
    pieces = {}
    for i, r in ranks.items():
        rel = relations.get(i)
        pieces[i] = FPModule(ring, r, RMatrix.from_entries(ring, rel, r, len(rel[0]) if rel and rel[0] else 0)
                             if rel else None)
    diffs = {}
    for i, entries in differentials.items():
        src = ranks.get(i if period is None else i % period, 0)
        tgt = ranks.get(i - 1 if period is None else (i - 1) % period, 0)
        diffs[i] = RMatrix.from_entries(ring, entries, tgt, src)
    return Complex(ring, pieces, diffs, period=period)


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

def homology_at(c: Complex, i: int) -> Subquotient:
    """H_i as ker ∂_i / im ∂_{i+1}, in the generator coordinates of C_i."""
    m = c.piece(i)
    Z = _kernel_vectors(c.diff(i), c.piece(i - 1)) if m.ngens else []
    d_up = c.diff(i + 1)
    B = [d_up.sparse_column(j) for j in range(d_up.cols)]
    B += [m.relations.sparse_column(j) for j in range(m.relations.cols)]
    return Subquotient(c.ring, m.ngens, Z, B)


@dataclass
class HomologyTable:
    modules: dict[int, FPModule]
    presentations: dict[int, Subquotient]
    is_zero: dict[int, bool]
    inf: float
    sup: float
    period: int | None = None

    def all_zero(self) -> bool:
        return all(self.is_zero.values())

    def invariants(self) -> dict[int, list[str]]:
        return {i: m.format_invariants() for i, m in self.modules.items()}


def homology(c: Complex) -> HomologyTable:
    if c.period:
        degs = list(range(c.period))
    elif c.pieces:
        degs = list(range(c.lo, c.hi + 1))
    else:
        degs = []
    pres = {i: homology_at(c, i) for i in degs}
    mods = {i: p.module for i, p in pres.items()}
    zero = {i: m.is_zero() for i, m in mods.items()}
    nz = [i for i in degs if not zero[i]]
    if c.period:
        inf, sup = (-math.inf, math.inf) if nz else (math.inf, -math.inf)
    else:
        inf = min(nz) if nz else math.inf
        sup = max(nz) if nz else -math.inf
    return HomologyTable(mods, pres, zero, inf, sup, c.period)


def sup_degree(c) -> float:
    return homology(c.complex).sup


def unroll(c: Complex, lo: int, hi: int) -> Complex:
    """Bounded window C_lo..C_hi of a periodic (or bounded) complex."""
    pieces = {i: c.piece(i) for i in range(lo, hi + 1)}
    diffs = {i: c.diff(i) for i in range(lo + 1, hi + 1)}
    return Complex(c.ring, pieces, diffs)


# ---------------------------------------------------------------------------
# graded maps
# ---------------------------------------------------------------------------

class GradedMap:
    """A degree-``degree`` family f_j: M_j -> N_{j+degree}.

    ``source`` and ``target`` are complexes or DG modules (anything with a
    ``complex`` attribute).  Components are keyed by source degree, or by
    residue for periodic objects; missing components are zero.
    """

    __slots__ = ("source", "target", "degree", "components")

    def __init__(self, source, target, degree: int, components: Mapping[int, RMatrix] | None = None):
        self.source = source
        self.target = target
        self.degree = degree
        sc, tc = source.complex, target.complex
        if sc.period and sc.period != tc.period and not tc.is_zero():
            raise ValidationError("a map out of a periodic object needs a target of the same period", "period")
        comps = {}
        for j, m in (components or {}).items():
            j = j % sc.period if sc.period else j
            if m.shape != (tc.piece(j + degree).ngens, sc.piece(j).ngens):
                raise DimensionMismatch(f"component {j} has shape {m.shape}")
            if not m.is_zero():
                comps[j] = m
        self.components = comps

    @property
    def ring(self) -> RingDescriptor:
        return self.source.complex.ring

    def degrees(self) -> list[int]:
        return self.source.complex.degrees()

    def component(self, j: int) -> RMatrix:
        sc = self.source.complex
        key = j % sc.period if sc.period else j
        m = self.components.get(key)
        if m is None:
            return RMatrix.zero(self.ring, self.target.complex.piece(j + self.degree).ngens, sc.piece(j).ngens)
        return m

    def module_map(self, j: int) -> ModuleMap:
        return ModuleMap(self.source.complex.piece(j), self.target.complex.piece(j + self.degree),
                         self.component(j), check=False)

    @classmethod
    def identity(cls, m) -> "GradedMap":
        c = m.complex
        return cls(m, m, 0, {j: RMatrix.identity(c.ring, c.piece(j).ngens) for j in c.degrees()})

    @classmethod
    def zero(cls, source, target, degree: int = 0) -> "GradedMap":
        return cls(source, target, degree, {})

    def _same_shape(self, other: "GradedMap"):
        if self.degree != other.degree:
            raise ValidationError("maps of different degrees", "degree")

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._same_shape(other)
        keys = set(self.components) | set(other.components)
        return GradedMap(self.source, self.target, self.degree,
                         {j: self.component(j) + other.component(j) for j in keys})

    def __neg__(self) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree, {j: -m for j, m in self.components.items()})

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        return self + (-other)

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree, {j: m.scale(c) for j, m in self.components.items()})

    def __matmul__(self, other: "GradedMap") -> "GradedMap":
        """Composition self ∘ other."""
        comps = {}
        for j, m in other.components.items():
            comps[j] = self.component(j + other.degree) @ m
        return GradedMap(other.source, self.target, self.degree + other.degree, comps)

    def differential(self) -> "GradedMap":
        """∂(f) = ∂^N f - (-1)^{|f|} f ∂^M, a map of degree |f| - 1."""
        sc, tc = self.source.complex, self.target.complex
        d = self.degree
        sign_neg = d % 2 == 0
        comps = {}
        for j in sc.degrees():
            a = tc.diff(j + d) @ self.component(j)
            b = self.component(j - 1) @ sc.diff(j)
            comps[j] = a - b if sign_neg else a + b
        return GradedMap(self.source, self.target, d - 1, comps)

    def is_zero(self) -> bool:
        tc = self.target.complex
        return all(matrix_is_zero_map(m, tc.piece(j + self.degree)) for j, m in self.components.items())

    def equals(self, other: "GradedMap") -> bool:
        return (self - other).is_zero()

    def is_cycle(self) -> bool:
        return self.differential().is_zero()

    def is_well_defined(self) -> bool:
        sc, tc = self.source.complex, self.target.complex
        return all(target_respects(self.component(j), sc.piece(j), tc.piece(j + self.degree)) for j in sc.degrees())

    def is_isomorphism(self) -> bool:
        from .linalg.modules import is_injective, is_surjective
        return all(is_injective(self.module_map(j)) and is_surjective(self.module_map(j))
                   for j in self.source.complex.degrees())

    def __repr__(self):
        return f"GradedMap(deg={self.degree}, {{{', '.join(f'{j}: {m.to_strings()}' for j, m in sorted(self.components.items()))}}})"


ChainMap = GradedMap


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def suspend(c: Complex, n: int = 1) -> Complex:
    """(Σⁿ C)_i = C_{i-n}, differential multiplied by (-1)ⁿ."""
    if n == 0:
        return c
    sign = -1 if n % 2 else 1
    if c.period:
        p = c.period
        pieces = {i: c.piece(i - n) for i in range(p)}
        diffs = {i: (c.diff(i - n) if sign > 0 else -c.diff(i - n)) for i in range(p)}
        return Complex(c.ring, pieces, diffs, period=p, check=False)
    pieces = {i + n: m for i, m in c.pieces.items()}
    diffs = {i + n: (d if sign > 0 else -d) for i, d in c.differentials.items()}
    return Complex(c.ring, pieces, diffs, check=False)


def direct_sum_complex(cs: list[Complex]) -> Complex:
    from .linalg.modules import direct_sum
    ring = cs[0].ring
    period = cs[0].period
    if period:
        degs = range(period)
    else:
        degs = sorted({i for c in cs for i in c.degrees()})
    pieces = {i: direct_sum(ring, [c.piece(i) for c in cs]) for i in degs}
    diffs = {i: RMatrix.block_diagonal(ring, [c.diff(i) for c in cs]) for i in degs}
    return Complex(ring, pieces, diffs, period=period, check=False)


def block_complex(n: Complex, q: Complex, off_diagonal: GradedMap) -> Complex:
    """X_i = N_i ⊕ Q_i with ∂^X = [[∂^N, λ], [0, ∂^Q]] for λ: Q -> N of degree -1."""
    from .linalg.modules import direct_sum
    ring = n.ring
    period = n.period or q.period
    degs = range(period) if period else sorted(set(n.degrees()) | set(q.degrees()))
    pieces = {i: direct_sum(ring, [n.piece(i), q.piece(i)]) for i in degs}
    diffs = {}
    for i in degs:
        diffs[i] = RMatrix.block(ring, [[n.diff(i), off_diagonal.component(i)],
                                        [RMatrix.zero(ring, q.piece(i - 1).ngens, n.piece(i).ngens), q.diff(i)]])
    return Complex(ring, pieces, diffs, period=period)


def cone(f: GradedMap) -> tuple[Complex, GradedMap, GradedMap]:
    """Mapping cone of a chain map f: M -> N, with 0 -> N -> cone(f) -> ΣM -> 0."""
    if f.degree != 0 or not f.is_cycle():
        raise NotAChainMap("cone needs a degree-0 chain map")
    M, N = f.source.complex, f.target.complex
    SM = suspend(M, 1)
    lam = GradedMap(SM, N, -1, {i: f.component(i - 1) for i in SM.degrees()})
    C = block_complex(N, SM, lam)
    ring = M.ring
    inc = {}
    proj = {}
    for i in C.degrees():
        nn, qq = N.piece(i).ngens, SM.piece(i).ngens
        inc[i] = RMatrix.identity(ring, nn).vstack(RMatrix.zero(ring, qq, nn)) if nn else RMatrix.zero(ring, nn + qq, 0)
        proj[i] = RMatrix.zero(ring, qq, nn).hstack(RMatrix.identity(ring, qq)) if qq else RMatrix.zero(ring, 0, nn + qq)
    return C, GradedMap(N, C, 0, {i: inc[i] for i in N.degrees()}), GradedMap(C, SM, 0, proj)


@dataclass
class Truncation:
    complex: Complex
    rho: GradedMap
    quasi_isomorphism: bool


def soft_truncate(m: Complex, n: int) -> Truncation:
    """τ(M)_(≤n): M_n / Im ∂_{n+1} in degree n, M_i below, zero above."""
    if m.period:
        raise ValidationError("soft truncation needs a bounded complex", "bounded")
    ring = m.ring
    pieces = {}
    for i, mod in m.pieces.items():
        if i < n:
            pieces[i] = mod
        elif i == n:
            d = m.diff(n + 1)
            pieces[i] = FPModule(ring, mod.ngens, mod.relations.hstack(d))
    diffs = {i: d for i, d in m.differentials.items() if i <= n}
    T = Complex(ring, pieces, diffs, check=False)
    rho = GradedMap(m, T, 0, {i: RMatrix.identity(ring, m.piece(i).ngens) for i in m.degrees() if i <= n})
    H = homology(m)
    qis = H.sup <= n
    return Truncation(T, rho, qis)


def contraction(c: Complex) -> GradedMap | None:
    """A degree +1 map s with ∂s + s∂ = id, or None when none exists."""
    from .homs import HomPiece, MapSpace, solve_in_piece
    if c.is_zero():
        return GradedMap.zero(c, c, 1)
    piece = HomPiece(c, c, 1, a_linear=False)
    target = MapSpace(c, c, 0)
    sol = solve_in_piece(piece, [(lambda s: s.differential(), target, GradedMap.identity(c))])
    if sol is None:
        return None
    s = sol[0]
    assert s.differential().equals(GradedMap.identity(c))
    return s
