"""Semi-free resolutions, derived Ext, disk covers and dimension shifting."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import Complex, GradedMap, cone, homology, homology_at
from .dg import DGAlgebra, DGModule, direct_sum_modules, disk, kernel_module, zero_module
from .errors import CutoffTooSmall, HypothesisViolated, ValidationError, WindowExhausted
from .homs import HomHomology
from .linalg.matrix import RMatrix, SparseVec
from .linalg.modules import FPModule, Subquotient
from .linalg.poly import Poly

Elem = dict  # (algebra key, generator index) -> coefficient


class _FreeBuilder:
    """A semi-free DG module grown one generator at a time, with a map ε to a target."""

    def __init__(self, A: DGAlgebra, target: DGModule):
        self.A = A
        self.target = target
        self.ring = A.ring
        self.gen_degree: list[int] = []
        self.gen_diff: list[Elem] = []
        self.gen_eps: list[SparseVec] = []

    def basis(self, d: int) -> list[tuple[object, int]]:
        A = self.A
        out = []
        for g, dg in enumerate(self.gen_degree):
            for k in A.by_degree.get(d - dg, []):
                out.append((k, g))
        return out

    def add(self, degree: int, diff: Elem, eps: SparseVec) -> int:
        self.gen_degree.append(degree)
        self.gen_diff.append(diff)
        self.gen_eps.append(eps)
        return len(self.gen_degree) - 1

    def _acc(self, out: Elem, key, c: Poly):
        R = self.ring
        nv = R.add(out.get(key, ()), c)
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)

    def times(self, a, x: Elem) -> Elem:
        """a · x for a basis key a."""
        R = self.ring
        out: Elem = {}
        for (b, g), c in x.items():
            for k, e in self.A.mul_basis(a, b).items():
                self._acc(out, (k, g), R.mul(c, e))
        return out

    def d(self, x: Elem) -> Elem:
        """∂(b g) = ∂(b) g + (-1)^{|b|} b ∂g."""
        R, A = self.ring, self.A
        out: Elem = {}
        for (b, g), c in x.items():
            for k, e in A.differential.get(b, {}).items():
                self._acc(out, (k, g), R.mul(c, e))
            sign_neg = A.degree_of[b] % 2 == 1
            for key, e in self.times(b, self.gen_diff[g]).items():
                v = R.mul(c, e)
                self._acc(out, key, R.polys.neg(v) if sign_neg else v)
        return out

    def eps(self, x: Elem, d: int) -> SparseVec:
        R = self.ring
        out: dict[int, Poly] = {}
        for (b, g), c in x.items():
            act = self.target.act(b, self.gen_degree[g])
            for s, e in self.gen_eps[g].items():
                for r in range(act.rows):
                    v = act.data[r][s]
                    if v:
                        nv = R.add(out.get(r, ()), R.mul(c, R.mul(v, e)))
                        if nv:
                            out[r] = nv
                        else:
                            out.pop(r, None)
        return out

    @staticmethod
    def to_vec(x: Elem, index: dict) -> SparseVec:
        return {index[k]: c for k, c in x.items()}

    def d_matrix(self, d: int) -> RMatrix:
        src, tgt = self.basis(d), self.basis(d - 1)
        idx = {k: i for i, k in enumerate(tgt)}
        return RMatrix.from_sparse_columns(self.ring, len(tgt), [self.to_vec(self.d({k: (1,)}), idx) for k in src])

    def eps_matrix(self, d: int) -> RMatrix:
        rows = self.target.piece(d).ngens
        return RMatrix.from_sparse_columns(self.ring, rows, [self.eps({k: (1,)}, d) for k in self.basis(d)])

    def cone_window(self, i: int) -> Complex:
        """cone(ε) in degrees i-1, i, i+1: cone_t = M_t ⊕ P_{t-1}."""
        M = self.target.complex
        R = self.ring
        pieces, diffs = {}, {}
        for t in (i - 1, i, i + 1):
            m = M.piece(t)
            npb = len(self.basis(t - 1))
            rel = m.relations.vstack(RMatrix.zero(R, npb, m.relations.cols))
            pieces[t] = FPModule(R, m.ngens + npb, rel)
        for t in (i, i + 1):
            top = M.diff(t).hstack(self.eps_matrix(t - 1))
            nb_src, nb_tgt = len(self.basis(t - 1)), len(self.basis(t - 2))
            bottom = RMatrix.zero(R, nb_tgt, M.piece(t).ngens).hstack(-self.d_matrix(t - 1))
            diffs[t] = top.vstack(bottom) if nb_tgt else top
            assert diffs[t].cols == M.piece(t).ngens + nb_src
        return Complex(R, pieces, diffs, check=False)

    def kill_cycles(self, i: int) -> int:
        """Adjoin one generator of degree i per generator of H_i(cone ε)."""
        sq = homology_at(self.cone_window(i), i)
        if sq.module.is_zero():
            return 0
        mrank = self.target.piece(i).ngens
        pb = self.basis(i - 1)
        new = 0
        for v in sq.gens:
            mpart = {r: e for r, e in v.items() if r < mrank}
            ppart: Elem = {}
            for r, e in v.items():
                if r >= mrank:
                    ppart[pb[r - mrank]] = self.ring.polys.neg(e)
            self.add(i, ppart, mpart)
            new += 1
        return new

    def add_disk(self, i: int, x: SparseVec) -> None:
        """Adjoin e' in degree i-1 and e in degree i with ∂e = e', ε(e) = x."""
        M = self.target.complex
        dx = {}
        d = M.diff(i)
        for r in range(d.rows):
            acc = ()
            for s, e in x.items():
                if d.data[r][s]:
                    acc = self.ring.add(acc, self.ring.mul(d.data[r][s], e))
            if acc:
                dx[r] = acc
        low = self.add(i - 1, {}, dx)
        self.add(i, {(self.A.unit, low): (1,)}, dict(x))

    def module(self, name: str) -> DGModule:
        A = self.A
        degs = sorted({dg + k for dg in self.gen_degree for k in A.by_degree})
        R = self.ring
        pieces = {d: FPModule.free(R, len(self.basis(d))) for d in degs}
        diffs = {d: self.d_matrix(d) for d in degs}
        action = {}
        for key, ia in A.nonunit_basis():
            for d in degs:
                tgt = self.basis(d + ia)
                if not tgt:
                    continue
                idx = {k: n for n, k in enumerate(tgt)}
                action[(key, d)] = RMatrix.from_sparse_columns(
                    R, len(tgt), [self.to_vec(self.times(key, {k: (1,)}), idx) for k in self.basis(d)])
        c = Complex(R, pieces, diffs, check=False)
        return DGModule(A, c, action, name=name, check=False)


@dataclass
class SemifreeResolution:
    target: DGModule
    module: DGModule
    map: GradedMap
    cutoff: int
    generator_degrees: list[int] = field(default_factory=list)
    generator_boundaries: list[dict] = field(default_factory=list)

    @property
    def resolution(self) -> DGModule:
        return self.module

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def filtration_certificate(self) -> bool:
        """Each ∂e_g only involves generators created before g, of lower degree."""
        for g, d in enumerate(self.generator_boundaries):
            for (_, h) in d:
                if h >= g or self.generator_degrees[h] >= self.generator_degrees[g]:
                    return False
        return True

    def certify(self) -> bool:
        """ε is a morphism and cone(ε) is exact through the cutoff."""
        from .dg import is_morphism
        if self.module.is_zero():
            return homology(self.target.complex).all_zero()
        if not is_morphism(self.map):
            return False
        c, _, _ = cone(self.map)
        lo = c.lo if c.lo is not None else 0
        return all(homology_at(c, i).module.is_zero() for i in range(lo, self.cutoff + 1))


def _target_lo(m: DGModule) -> int | None:
    c = m.complex
    return c.lo


def semifree_resolve(m: DGModule, cutoff: int, padded: bool = False) -> SemifreeResolution:
    """Cycle-killing resolution, exact against ``m`` through degree ``cutoff``.

    ``padded`` adds a disk on every generator of ``m`` before killing cycles,
    which yields a different (larger) resolution of the same module.
    """
    A = m.algebra
    H = homology(m.complex)
    if H.all_zero():
        z = zero_module(A)
        return SemifreeResolution(m, z, GradedMap.zero(z, m, 0), cutoff)
    if m.complex.period:
        raise ValidationError("only bounded modules with nonzero homology can be resolved", "bounded")
    lo = _target_lo(m)
    if cutoff < H.inf:
        raise CutoffTooSmall(f"cutoff {cutoff} lies below inf H = {H.inf}")
    b = _FreeBuilder(A, m)
    for i in range(lo, cutoff + 1):
        if padded and i <= m.complex.hi:
            for s in range(m.piece(i).ngens):
                b.add_disk(i, {s: (1,)})
        b.kill_cycles(i)
    P = b.module("P")
    comps = {d: b.eps_matrix(d) for d in P.degrees()}
    eps = GradedMap(P, m, 0, comps)
    return SemifreeResolution(m, P, eps, cutoff, list(b.gen_degree), [dict(x) for x in b.gen_diff])


def minimal_cutoff(n: DGModule, i: int) -> int | None:
    """Degree through which the resolution must be exact for Ext^i(-, n)."""
    if n.complex.period:
        return None
    hi = n.complex.hi
    return None if hi is None else hi + i + 1


@dataclass
class ExtGroup:
    module: FPModule
    homology: HomHomology | None
    resolution: SemifreeResolution

    @property
    def invariants(self) -> list[str]:
        return self.module.format_invariants()


def ext_group(m: DGModule, n: DGModule, i: int, cutoff: int | None = None, padded: bool = False) -> ExtGroup:
    from .dg import _same_algebra
    _same_algebra(m, n)
    need = minimal_cutoff(n, i)
    if need is None:
        if n.complex.period and not n.is_zero():
            res = semifree_resolve(m, cutoff if cutoff is not None else 0, padded)
            if not res.is_zero():
                raise ValidationError("Ext into a periodic module needs a source with zero homology", "bounded")
            return ExtGroup(FPModule.zero(m.ring), None, res)
        z = zero_module(m.algebra)
        return ExtGroup(FPModule.zero(m.ring), None, SemifreeResolution(m, z, GradedMap.zero(z, m, 0), cutoff or 0))
    if cutoff is None:
        cutoff = need
    elif cutoff < need:
        raise CutoffTooSmall(f"cutoff {cutoff} is below sup(N) + i + 1 = {need}")
    if m.complex.period:
        res = semifree_resolve(m, cutoff, padded)
        return ExtGroup(FPModule.zero(m.ring), None, res)
    inf = homology(m.complex).inf
    # generators above the cutoff do not affect Hom in degrees -i and -i + 1
    res = semifree_resolve(m, max(cutoff, inf) if inf != float("inf") else cutoff, padded)
    if res.is_zero():
        return ExtGroup(FPModule.zero(m.ring), None, res)
    hh = HomHomology(res.module, n, -i)
    return ExtGroup(hh.module, hh, res)


def ext(m: DGModule, n: DGModule, i: int, cutoff: int | None = None) -> FPModule:
    """Ext^i_A(M, N) = H_{-i}(Hom_A(P, N)) for a semi-free resolution P of M."""
    return ext_group(m, n, i, cutoff).module


# ---------------------------------------------------------------------------
# categorical projectives
# ---------------------------------------------------------------------------

def disk_map(D: DGModule, n: int, target: DGModule, x: SparseVec) -> GradedMap:
    """The morphism D^n(A) -> target sending e to x ∈ target_n."""
    A = target.algebra
    ring = target.ring
    c = target.complex
    d = c.diff(n)
    dx = {}
    for r in range(d.rows):
        acc = ()
        for s, e in x.items():
            if d.data[r][s]:
                acc = ring.add(acc, ring.mul(d.data[r][s], e))
        if acc:
            dx[r] = acc
    comps = {}
    for deg in D.degrees():
        cols = []
        for b in A.by_degree.get(deg - n + 1, []):
            cols.append(_act_vec(target, b, n - 1, dx, sign_neg=((n - 1) * A.degree_of[b]) % 2 == 1))
        for b in A.by_degree.get(deg - n, []):
            cols.append(_act_vec(target, b, n, x, sign_neg=(n * A.degree_of[b]) % 2 == 1))
        comps[deg] = RMatrix.from_sparse_columns(ring, c.piece(deg).ngens, cols)
    return GradedMap(D, target, 0, comps)


def _act_vec(m: DGModule, key, j: int, v: SparseVec, sign_neg: bool) -> SparseVec:
    ring = m.ring
    act = m.act(key, j)
    out = {}
    for r in range(act.rows):
        acc = ()
        for s, e in v.items():
            if act.data[r][s]:
                acc = ring.add(acc, ring.mul(act.data[r][s], e))
        if acc:
            out[r] = ring.polys.neg(acc) if sign_neg else acc
    return out


@dataclass
class Cover:
    source: DGModule
    map: GradedMap
    disks: list[tuple[int, SparseVec]]


def catproj_cover(m: DGModule) -> Cover:
    """A surjective morphism from a finite sum of disks, one per needed generator.

    Degrees are scanned from the top; an element is needed unless it is a
    boundary image of an already chosen disk or decomposable (A_+ times lower
    degrees).
    """
    A = m.algebra
    c = m.complex
    ring = m.ring
    if m.is_zero():
        z = zero_module(A)
        return Cover(z, GradedMap.zero(z, m, 0), [])
    if c.period:
        raise ValidationError("disk covers need a bounded module", "bounded")
    chosen: list[tuple[int, SparseVec]] = []
    for n in range(c.hi, c.lo - 1, -1):
        p = c.piece(n)
        if not p.ngens:
            continue
        B: list[SparseVec] = [p.relations.sparse_column(k) for k in range(p.relations.cols)]
        up = c.diff(n + 1)
        for (deg, x) in chosen:
            if deg == n + 1:
                B.append({r: e for r in range(up.rows)
                          for e in [_dot(ring, up, r, x)] if e})
        for key, ia in A.nonunit_basis():
            act = m.act(key, n - ia)
            B += [act.sparse_column(k) for k in range(act.cols)]
        sq = Subquotient(ring, p.ngens, [{s: (1,)} for s in range(p.ngens)], B)
        for g in sq.gens:
            chosen.append((n, g))
    disks = [disk(A, n) for n, _ in chosen]
    maps = [disk_map(D, n, m, x) for D, (n, x) in zip(disks, chosen)]
    L = direct_sum_modules(disks, name="L0")
    comps = {}
    for deg in L.degrees():
        blocks = [f.component(deg) for f in maps]
        mat = blocks[0]
        for b in blocks[1:]:
            mat = mat.hstack(b)
        comps[deg] = mat
    return Cover(L, GradedMap(L, m, 0, comps), chosen)


def _dot(ring, mat: RMatrix, r: int, v: SparseVec) -> Poly:
    acc = ()
    for s, e in v.items():
        if mat.data[r][s]:
            acc = ring.add(acc, ring.mul(mat.data[r][s], e))
    return acc


@dataclass
class SyzygyChain:
    modules: list[DGModule]
    covers: list[Cover]
    inclusions: list[GradedMap]


def syzygies(m: DGModule, steps: int) -> SyzygyChain:
    """Q_0 = M and Q_{j+1} = ker(L_j -> Q_j) for disk covers L_j."""
    mods, covers, incs = [m], [], []
    q = m
    for _ in range(steps):
        cov = catproj_cover(q)
        k, inc = kernel_module(cov.map, name=f"Q{len(mods)}")
        mods.append(k)
        covers.append(cov)
        incs.append(inc)
        q = k
    return SyzygyChain(mods, covers, incs)


def is_graded_projective(m: DGModule) -> bool:
    """Every piece is R-projective; necessary in general and sufficient over the base algebra."""
    return all(m.piece(j).is_projective() for j in m.degrees())


def dimension_shift_yext(m: DGModule, n: DGModule, i: int, max_i: int = 4) -> FPModule:
    """YExt^i(M, N) computed as YExt^1(Q_{i-1}, N) = H_{-1}(Hom_A(Q_{i-1}, N)).

    Only valid for graded-projective M; inputs failing the degreewise test are rejected.
    """
    if i < 1:
        raise ValidationError("dimension shifting needs i ≥ 1", "degree")
    if not is_graded_projective(m):
        raise HypothesisViolated("dimension shifting needs a graded-projective first argument")
    if i > max_i:
        raise WindowExhausted(f"i = {i} exceeds the supported depth {max_i}")
    if m.is_zero():
        return FPModule.zero(m.ring)
    q = syzygies(m, i - 1).modules[-1]
    if q.is_zero():
        return FPModule.zero(m.ring)
    return HomHomology(q, n, -1).module
