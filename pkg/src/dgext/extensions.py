"""Short exact sequences of DG modules, graded splittings, the class map to
H_{-1}(Hom_A(Q, N)), Baer sums, pullbacks and split tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .complexes import GradedMap, homology, soft_truncate
from .dg import (DGModule, block_module, cokernel_module, direct_sum_modules, factor_through_sub, is_a_linear,
                 is_morphism, kernel_module, simplify_module)
from .errors import HypothesisViolated, IncompatibleEnds, NotACycle, NotGradedSplit, ValidationError
from .homs import HomHomology, HomPiece, MapSpace, solve_in_piece
from .linalg.matrix import RMatrix, _axpy
from .linalg.modules import ModuleMap, _kernel_vectors, is_injective, is_surjective, reduce_vec


def differential_map(x: DGModule) -> GradedMap:
    """∂^X as a degree -1 graded map."""
    return GradedMap(x, x, -1, {j: x.diff(j) for j in x.degrees()})


def modules_equal(a: DGModule, b: DGModule) -> bool:
    """Structural identity: same algebra, presentations, differentials and action."""
    if a is b:
        return True
    if a.algebra != b.algebra:
        return False
    ca, cb = a.complex, b.complex
    if ca.period != cb.period or ca.degrees() != cb.degrees():
        return False
    for j in ca.degrees():
        pa, pb = ca.piece(j), cb.piece(j)
        if pa.ngens != pb.ngens or pa.relations != pb.relations or ca.diff(j) != cb.diff(j):
            return False
        for key, _ in a.algebra.nonunit_basis():
            if a.act(key, j) != b.act(key, j):
                return False
    return True


@dataclass
class Extension:
    """0 -> N --f--> X --g--> Q -> 0."""

    n: DGModule
    x: DGModule
    q: DGModule
    f: GradedMap
    g: GradedMap

    def __post_init__(self):
        if not (self.n.algebra == self.x.algebra == self.q.algebra):
            raise ValidationError("extension terms over different algebras", "same-algebra")

    def validate(self) -> None:
        for name, mor in (("f", self.f), ("g", self.g)):
            if not is_morphism(mor):
                raise ValidationError(f"{name} is not a morphism of DG modules", "morphism")
        for j in self.x.degrees():
            fj = ModuleMap(self.n.piece(j), self.x.piece(j), self.f.component(j), check=False)
            gj = ModuleMap(self.x.piece(j), self.q.piece(j), self.g.component(j), check=False)
            if not is_injective(fj):
                raise ValidationError(f"f is not injective in degree {j}", "exact")
            if not is_surjective(gj):
                raise ValidationError(f"g is not surjective in degree {j}", "exact")
            if not (gj @ fj).is_zero():
                raise ValidationError(f"g∘f ≠ 0 in degree {j}", "exact")
            xp = self.x.piece(j)
            span = [fj.matrix.sparse_column(c) for c in range(fj.matrix.cols)] + xp.relation_columns()
            from .linalg.matrix import ColumnEchelon
            ech = ColumnEchelon(xp.ring.polys, xp.ngens, span)
            for v in _kernel_vectors(gj.matrix, self.q.piece(j)):
                if ech.solve(v) is None:
                    raise ValidationError(f"ker g ⊄ im f in degree {j}", "exact")
        for j in self.q.degrees():
            if j not in self.x.degrees() and not self.q.piece(j).is_zero():
                raise ValidationError(f"g is not surjective in degree {j}", "exact")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except ValidationError:
            return False
        return True


@dataclass
class GradedSplitting:
    h: GradedMap
    k: GradedMap

    def verify(self, e: Extension) -> bool:
        h, k, f, g = self.h, self.k, e.f, e.g
        return ((h @ f).equals(GradedMap.identity(e.n)) and (g @ k).equals(GradedMap.identity(e.q))
                and (h @ k).is_zero() and (f @ h + k @ g).equals(GradedMap.identity(e.x)))


def graded_splitting(e: Extension) -> GradedSplitting:
    """A-linear degree-0 maps h, k with hf = 1, gk = 1, hk = 0, fh + kg = 1."""
    pk = HomPiece(e.q, e.x, 0)
    sol = solve_in_piece(pk, [(lambda k: e.g @ k, MapSpace(e.q, e.q, 0), GradedMap.identity(e.q))])
    if sol is None:
        raise NotGradedSplit("g has no A-linear graded section")
    k = sol[0]
    ph = HomPiece(e.x, e.n, 0)
    rhs = GradedMap.identity(e.x) - k @ e.g
    sol = solve_in_piece(ph, [(lambda h: e.f @ h, MapSpace(e.x, e.x, 0), rhs),
                              (lambda h: h @ e.f, MapSpace(e.n, e.n, 0), GradedMap.identity(e.n))])
    if sol is None:
        raise NotGradedSplit("no A-linear retraction compatible with the section")
    s = GradedSplitting(sol[0], k)
    assert s.verify(e)
    return s


# ---------------------------------------------------------------------------
# homology classes
# ---------------------------------------------------------------------------

class HomClass:
    """A class in H_{-1}(Hom_A(Q, N)) represented by a degree -1 cycle λ."""

    def __init__(self, representative: GradedMap, check: bool = True):
        if check:
            if representative.degree != -1:
                raise NotACycle("class representatives have degree -1")
            if not representative.is_cycle():
                raise NotACycle("representative is not a cycle")
            if not is_a_linear(representative):
                raise NotACycle("representative is not A-linear")
        self.representative = representative
        self.source = representative.source
        self.target = representative.target
        self._ambient = None

    @property
    def ambient(self) -> HomHomology:
        if self._ambient is None:
            self._ambient = HomHomology(self.source, self.target, -1)
        return self._ambient

    def bounding_homotopy(self, other: "HomClass | None" = None) -> GradedMap | None:
        """s of degree 0 with ∂(s) = λ - λ', or None."""
        lam = self.representative if other is None else self.representative - other.representative
        piece = HomPiece(self.source, self.target, 0)
        sol = solve_in_piece(piece, [(lambda s: s.differential(), MapSpace(self.source, self.target, -1), lam)])
        return None if sol is None else sol[0]

    def is_zero(self) -> bool:
        return self.bounding_homotopy() is not None

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomClass):
            return NotImplemented
        return self.bounding_homotopy(other) is not None

    __hash__ = None

    def __add__(self, other: "HomClass") -> "HomClass":
        return HomClass(self.representative + other.representative, check=False)

    def __neg__(self) -> "HomClass":
        return HomClass(-self.representative, check=False)

    def __sub__(self, other: "HomClass") -> "HomClass":
        return self + (-other)

    def coordinates(self):
        return self.ambient.coords(self.representative)

    def __repr__(self):
        return f"HomClass({self.representative!r})"


def psi(e: Extension, splitting: GradedSplitting | None = None) -> HomClass:
    """[λ] with λ = h ∂^X k, the off-diagonal block of ∂^X in a graded splitting."""
    s = splitting or graded_splitting(e)
    lam = s.h @ differential_map(e.x) @ s.k
    return HomClass(lam)


def extension_from_cycle(lam: GradedMap | HomClass) -> Extension:
    """X = N ⊕ Q with ∂ = [[∂^N, λ], [0, ∂^Q]], canonical inclusion and projection."""
    if isinstance(lam, HomClass):
        lam = lam.representative
    if lam.degree != -1 or not lam.is_cycle() or not is_a_linear(lam):
        raise NotACycle("λ must be an A-linear degree -1 cycle")
    q, n = lam.source, lam.target
    x = block_module(n, q, lam)
    ring = n.ring
    f, g = {}, {}
    for j in x.degrees():
        a, b = n.piece(j).ngens, q.piece(j).ngens
        f[j] = RMatrix.identity(ring, a).vstack(RMatrix.zero(ring, b, a)) if a else RMatrix.zero(ring, a + b, 0)
        g[j] = RMatrix.zero(ring, b, a).hstack(RMatrix.identity(ring, b)) if b else RMatrix.zero(ring, 0, a + b)
    return Extension(n, x, q, GradedMap(n, x, 0, f), GradedMap(x, q, 0, g))


def split_extension(n: DGModule, q: DGModule) -> Extension:
    return extension_from_cycle(GradedMap.zero(q, n, -1))


def cone_extension(f: GradedMap, suspended: DGModule | None = None) -> Extension:
    """0 -> N -> cone(f) -> ΣM -> 0 for a morphism f: M -> N."""
    from .dg import suspend_module
    if f.degree != 0 or not f.is_cycle():
        from .errors import NotAChainMap
        raise NotAChainMap("cone needs a degree-0 chain map")
    sm = suspended or suspend_module(f.source, 1)
    lam = GradedMap(sm, f.target, -1, {j: f.component(j - 1) for j in sm.degrees()})
    return extension_from_cycle(lam)


# ---------------------------------------------------------------------------
# split and equivalence tests
# ---------------------------------------------------------------------------

@dataclass
class Split:
    retraction: GradedMap

    def __bool__(self):
        return True


@dataclass
class NotSplit:
    def __bool__(self):
        return False


def is_split(e: Extension) -> Split | NotSplit:
    """Look for a morphism F: X -> N with F f = 1 (no projectivity needed)."""
    piece = HomPiece(e.x, e.n, 0)
    sol = solve_in_piece(piece, [(lambda F: F.differential(), MapSpace(e.x, e.n, -1), None),
                                 (lambda F: F @ e.f, MapSpace(e.n, e.n, 0), GradedMap.identity(e.n))])
    if sol is None:
        return NotSplit()
    F = sol[0]
    assert is_morphism(F) and (F @ e.f).equals(GradedMap.identity(e.n))
    return Split(F)


def _check_ends(e1: Extension, e2: Extension):
    if not (modules_equal(e1.n, e2.n) and modules_equal(e1.q, e2.q)):
        raise IncompatibleEnds("extensions have different end terms")


def equivalence(e1: Extension, e2: Extension) -> GradedMap | None:
    """A morphism φ: X1 -> X2 with φ f1 = f2 and g2 φ = g1, or None."""
    _check_ends(e1, e2)
    piece = HomPiece(e1.x, e2.x, 0)
    sol = solve_in_piece(piece, [(lambda p: p.differential(), MapSpace(e1.x, e2.x, -1), None),
                                 (lambda p: p @ e1.f, MapSpace(e1.n, e2.x, 0), e2.f),
                                 (lambda p: e2.g @ p, MapSpace(e1.x, e2.q, 0), e1.g)])
    if sol is None:
        return None
    phi = sol[0]
    # five lemma: any such φ is an isomorphism
    assert phi.is_isomorphism()
    return phi


def are_equivalent(e1: Extension, e2: Extension) -> bool:
    return equivalence(e1, e2) is not None


# ---------------------------------------------------------------------------
# Baer sum and pullback
# ---------------------------------------------------------------------------

def _hcat(ring, mats):
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def baer_sum(e1: Extension, e2: Extension) -> Extension:
    """Pull back along the diagonal of Q, then divide out the antidiagonal of N."""
    _check_ends(e1, e2)
    n, q = e1.n, e1.q
    ring = n.ring
    s = direct_sum_modules([e1.x, e2.x], name="X⊕X'")
    G = GradedMap(s, q, 0, {j: _hcat(ring, [e1.g.component(j), -e2.g.component(j)]) for j in s.degrees()})
    y, inc = kernel_module(G, name="X''")
    gamma_s = GradedMap(n, s, 0, {j: (-e1.f.component(j)).vstack(e2.f.component(j)) for j in n.degrees()})
    gamma = factor_through_sub(y, gamma_s)
    xt, proj = cokernel_module(gamma, name="X~")
    f_s = GradedMap(n, s, 0, {j: e1.f.component(j).vstack(RMatrix.zero(ring, e2.x.piece(j).ngens, n.piece(j).ngens))
                              for j in n.degrees()})
    ft = proj @ factor_through_sub(y, f_s)
    g1s = GradedMap(s, q, 0, {j: _hcat(ring, [e1.g.component(j), RMatrix.zero(ring, q.piece(j).ngens,
                                                                              e2.x.piece(j).ngens)])
                              for j in s.degrees()})
    gt = GradedMap(xt, q, 0, {j: (g1s @ inc).component(j) for j in xt.degrees()})
    x2, to, back = simplify_module(xt, name="X~")
    return Extension(n, x2, q, to @ ft, gt @ back)


def pullback_extension(e: Extension, phi: GradedMap) -> Extension:
    """φ*(e): 0 -> N -> X ×_Q Q' -> Q' -> 0 for a morphism φ: Q' -> Q."""
    if not modules_equal(phi.target, e.q):
        raise IncompatibleEnds("φ must land in the quotient term of the extension")
    n, x, q2 = e.n, e.x, phi.source
    ring = n.ring
    s = direct_sum_modules([x, q2], name="X⊕Q'")
    G = GradedMap(s, e.q, 0, {j: _hcat(ring, [e.g.component(j), -phi.component(j)]) for j in s.degrees()})
    y, inc = kernel_module(G, name="P")
    f_s = GradedMap(n, s, 0, {j: e.f.component(j).vstack(RMatrix.zero(ring, q2.piece(j).ngens, n.piece(j).ngens))
                              for j in n.degrees()})
    fy = factor_through_sub(y, f_s)
    p2 = GradedMap(s, q2, 0, {j: _hcat(ring, [RMatrix.zero(ring, q2.piece(j).ngens, x.piece(j).ngens),
                                              RMatrix.identity(ring, q2.piece(j).ngens)]) for j in s.degrees()})
    gy = p2 @ inc
    y2, to, back = simplify_module(y, name="P")
    return Extension(n, y2, q2, to @ fy, gy @ back)


# ---------------------------------------------------------------------------
# truncations
# ---------------------------------------------------------------------------

@dataclass
class ModuleTruncation:
    module: DGModule
    rho: GradedMap
    quasi_isomorphism: bool


def soft_truncate_module(m: DGModule, level: int) -> ModuleTruncation:
    """τ(M)_(≤level) as a DG module quotient of M, with the surjection ρ."""
    t = soft_truncate(m.complex, level)
    c = t.complex
    action = {}
    for (key, j), mat in m.action.items():
        if j + m.algebra.degree_of[key] <= level and j in c.pieces:
            action[(key, j)] = mat
    tm = DGModule(m.algebra, c, action, name=f"τ≤{level}({m.name})", check=False)
    rho = GradedMap(m, tm, 0, {j: mat for j, mat in t.rho.components.items()})
    return ModuleTruncation(tm, rho, t.quasi_isomorphism)


def random_cycle(source: DGModule, target: DGModule, rng: random.Random, degree: int = -1) -> GradedMap:
    """A random element of the cycles in Hom_A(source, target)_degree."""
    hh = HomHomology(source, target, degree, boundaries=False)
    space = hh.space
    ring = source.ring
    P = ring.polys
    v: dict = {}
    for g in hh._sq.gens:
        c = ring.element(rng.randrange(max(ring.characteristic, 2))).coeffs
        if rng.random() < 0.3:
            c = ring.mul(c, P.x_power(1))
        if c:
            _axpy(P, v, P.neg(c), g)
    return space.unvec(reduce_vec(ring, v))


@dataclass
class TruncationSample:
    label: str
    original_split: bool
    pullback_split: bool

    @property
    def violation(self) -> bool:
        return (not self.original_split) and self.pullback_split


@dataclass
class TruncationReport:
    level: int
    samples: list[TruncationSample]
    domain_is_zero: bool
    nonsplit_targets: int
    injective: bool
    surjective: bool | None
    violations: int = field(init=False)

    def __post_init__(self):
        self.violations = sum(s.violation for s in self.samples)


def truncation_map_is_injective_check(m: DGModule, n: DGModule, level: int, samples: int = 8, seed: int = 0,
                                      targets: tuple[Extension, ...] = ()) -> TruncationReport:
    """Sample extensions α of τ(M)_(≤level) by N and compare split verdicts of α and ρ*α."""
    for j in n.degrees():
        if j > level and not n.piece(j).is_zero():
            raise HypothesisViolated(f"N has a nonzero piece in degree {j} > {level}")
    rng = random.Random(seed)
    tr = soft_truncate_module(m, level)
    T = tr.module
    out = []
    domain_zero = T.is_zero()
    if not domain_zero:
        hh = HomHomology(T, n, -1)
        domain_zero = hh.module.is_zero()
        for s in range(samples):
            lam = random_cycle(T, n, rng)
            alpha = extension_from_cycle(lam)
            beta = pullback_extension(alpha, tr.rho)
            out.append(TruncationSample(f"sample {s}", bool(is_split(alpha)), bool(is_split(beta))))
    nonsplit = 0
    for e in targets:
        if not modules_equal(e.q, m) or not modules_equal(e.n, n):
            raise IncompatibleEnds("target extensions must be extensions of M by N")
        if not is_split(e):
            nonsplit += 1
    injective = not any(s.violation for s in out)
    surjective = False if (domain_zero and nonsplit) else None
    return TruncationReport(level, out, domain_zero, nonsplit, injective, surjective)


@dataclass
class Prop43Report:
    hypothesis_holds: bool
    ext1: list[str]
    yext1_cc: list[str]
    yext1_c_tau: list[str]
    truncation_violations: int
    level: int

    @property
    def confirmed(self) -> bool:
        return (self.hypothesis_holds and not self.yext1_cc and not self.yext1_c_tau
                and self.truncation_violations == 0)


def prop43_scenario(c: DGModule, level: int | None = None, samples: int = 4, seed: int = 0) -> Prop43Report:
    """For semi-projective C with Ext¹(C, C) = 0 and level ≥ sup(C): YExt¹ of C and of τC vanish.

    YExt¹(τC, τC) embeds into YExt¹(C, τC) by pulling back along ρ; the latter
    is H_{-1}(Hom_A(C, τC)) since C is graded-projective.
    """
    from .resolutions import ext
    if level is None:
        sup = homology(c.complex).sup
        level = int(sup) if sup != float("-inf") else 0
    if c.is_zero():
        return Prop43Report(True, [], [], [], 0, level)
    e1 = ext(c, c, 1)
    cc = HomHomology(c, c, -1).module
    tr = soft_truncate_module(c, level)
    ct = HomHomology(c, tr.module, -1).module
    rep = truncation_map_is_injective_check(c, tr.module, level, samples=samples, seed=seed) \
        if not tr.module.is_zero() else None
    return Prop43Report(e1.is_zero(), e1.format_invariants(), cc.format_invariants(), ct.format_invariants(),
                        rep.violations if rep else 0, level)
