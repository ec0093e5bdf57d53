"""Random instances for property suites: modules, cycles, basis changes."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complexes import Complex, GradedMap
from .dg import DGAlgebra, DGModule, as_module, zero_module
from .extensions import Extension
from .homs import HomPiece
from .linalg.matrix import RMatrix
from .linalg.modules import FPModule, _kernel_vectors
from .linalg.poly import Poly
from .linalg.ring import RingDescriptor


@dataclass(frozen=True)
class InstanceConfig:
    max_rank: int = 3
    span: int = 4
    lo_range: tuple[int, int] = (-2, 1)
    torsion: bool = False
    max_coeff_degree: int = 1


def random_poly(rng: random.Random, ring: RingDescriptor, max_degree: int = 1, nonzero: bool = False) -> Poly:
    p = ring.characteristic or 5
    while True:
        c = ring.reduce(ring.polys.norm(tuple(rng.randrange(p) for _ in range(max_degree + 1))))
        if c or not nonzero:
            return c


def random_unit(rng: random.Random, ring: RingDescriptor) -> Poly:
    p = ring.characteristic or 5
    return ring.polys.const(rng.randrange(1, p))


def random_invertible(rng: random.Random, ring: RingDescriptor, n: int, steps: int = 3) -> tuple[RMatrix, RMatrix]:
    """A random invertible matrix and its inverse, as a product of elementary matrices."""
    U = RMatrix.identity(ring, n)
    Ui = RMatrix.identity(ring, n)
    if n == 0:
        return U, Ui
    P = ring.polys
    for _ in range(steps):
        if n > 1 and rng.random() < 0.7:
            a, b = rng.sample(range(n), 2)
            c = random_poly(rng, ring, 1)
            E = [[(1,) if i == j else () for j in range(n)] for i in range(n)]
            Ei = [row[:] for row in E]
            E[a][b] = c
            Ei[a][b] = P.neg(c)
            U = RMatrix(ring, E, n, n) @ U
            Ui = Ui @ RMatrix(ring, Ei, n, n)
        else:
            a = rng.randrange(n)
            u = random_unit(rng, ring)
            E = [[(1,) if i == j else () for j in range(n)] for i in range(n)]
            Ei = [row[:] for row in E]
            E[a][a] = u
            Ei[a][a] = ring.inverse(u)
            U = RMatrix(ring, E, n, n) @ U
            Ui = Ui @ RMatrix(ring, Ei, n, n)
    return U, Ui


def conjugate_module(m: DGModule, mats: dict[int, tuple[RMatrix, RMatrix]], name: str | None = None) -> DGModule:
    """The isomorphic module with generators changed by U_j (with inverses)."""
    c = m.complex
    ring = m.ring

    def U(j):
        return mats[c._key(j)][0] if c._key(j) in mats else RMatrix.identity(ring, c.piece(j).ngens)

    def Ui(j):
        return mats[c._key(j)][1] if c._key(j) in mats else RMatrix.identity(ring, c.piece(j).ngens)

    pieces = {j: FPModule(ring, c.piece(j).ngens, U(j) @ c.piece(j).relations) for j in c.degrees()}
    diffs = {j: U(j - 1) @ c.diff(j) @ Ui(j) for j in c.degrees()}
    action = {}
    for key, ia in m.algebra.nonunit_basis():
        for j in c.degrees():
            action[(key, j)] = U(j + ia) @ m.act(key, j) @ Ui(j)
    cx = Complex(ring, pieces, diffs, period=c.period, check=False)
    return DGModule(m.algebra, cx, action, name=name or m.name, check=False)


def random_basis_change(e: Extension, rng: random.Random) -> Extension:
    """An isomorphic copy of e with the middle term's generators scrambled."""
    mats = {j: random_invertible(rng, e.x.ring, e.x.piece(j).ngens) for j in e.x.degrees()}
    x2 = conjugate_module(e.x, mats, name=e.x.name)
    f2 = GradedMap(e.n, x2, 0, {j: mats[j][0] @ e.f.component(j) for j in e.n.degrees() if j in mats})
    g2 = GradedMap(x2, e.q, 0, {j: e.g.component(j) @ mats[j][1] for j in x2.degrees()})
    return Extension(e.n, x2, e.q, f2, g2)


def random_complex(rng: random.Random, ring: RingDescriptor, cfg: InstanceConfig = InstanceConfig(),
                   lo: int | None = None) -> Complex:
    """A direct sum of short strings, conjugated by random invertible matrices.

    Free strings are points R and arrows R --c--> R; with ``torsion`` also
    points R/(a), identities R/(a) --1--> R/(a) and projections R --1--> R/(a).
    """
    if lo is None:
        lo = rng.randint(*cfg.lo_range)
    hi = lo + rng.randint(0, cfg.span - 1)
    ranks = {j: 0 for j in range(lo, hi + 1)}
    # each generator: (degree, annihilator or () for free)
    gens: list[tuple[int, Poly]] = []
    arrows: list[tuple[int, int, Poly]] = []   # source gen, target gen, coefficient
    for _ in range(rng.randint(1, cfg.max_rank * (hi - lo + 1))):
        j = rng.randint(lo, hi)
        kind = rng.random()
        tors = cfg.torsion and rng.random() < 0.4
        ann = random_poly(rng, ring, 1, nonzero=True) if tors else ()
        if ann and ring.is_unit(ann):
            ann = ring.polys.x_power(1)
        if kind < 0.45 or j == lo:
            if ranks[j] < cfg.max_rank:
                ranks[j] += 1
                gens.append((j, ann))
        elif ranks[j] < cfg.max_rank and ranks[j - 1] < cfg.max_rank:
            ranks[j] += 1
            ranks[j - 1] += 1
            if ann:
                src_ann = ann if rng.random() < 0.5 else ()
                coeff = (1,)
            else:
                src_ann = ()
                coeff = random_poly(rng, ring, cfg.max_coeff_degree, nonzero=True)
            gens.append((j, src_ann))
            gens.append((j - 1, ann))
            arrows.append((len(gens) - 2, len(gens) - 1, coeff))
    by_deg: dict[int, list[int]] = {}
    for g, (j, _) in enumerate(gens):
        by_deg.setdefault(j, []).append(g)
    pos = {g: by_deg[j].index(g) for g, (j, _) in enumerate(gens)}
    pieces, diffs = {}, {}
    for j, gs in by_deg.items():
        rel_cols = [{pos[g]: ann} for g in gs for ann in [gens[g][1]] if ann]
        pieces[j] = FPModule(ring, len(gs), RMatrix.from_sparse_columns(ring, len(gs), rel_cols))
    for j in by_deg:
        if j - 1 not in by_deg:
            continue
        cols = [dict() for _ in by_deg[j]]
        for s, t, c in arrows:
            if gens[s][0] == j:
                cols[pos[s]][pos[t]] = c
        diffs[j] = RMatrix.from_sparse_columns(ring, len(by_deg[j - 1]), cols)
    c = Complex(ring, pieces, diffs, check=False)
    mats = {}
    for j in by_deg:
        mats[j] = random_invertible(rng, ring, len(by_deg[j]))
    m = conjugate_module(as_module(c), mats)
    m.complex.validate()
    return m.complex


def random_module(rng: random.Random, ring: RingDescriptor, cfg: InstanceConfig = InstanceConfig(),
                  name: str = "M", lo: int | None = None) -> DGModule:
    return as_module(random_complex(rng, ring, cfg, lo), name=name)


def random_semifree(rng: random.Random, A: DGAlgebra, ngens: int = 3, lo: int = 0, span: int = 3,
                    name: str = "P") -> DGModule:
    """Generators in increasing degree, each bounding a random cycle of the earlier ones."""
    from .resolutions import _FreeBuilder
    ring = A.ring
    b = _FreeBuilder(A, zero_module(A))
    degrees = sorted(rng.randint(lo, lo + span - 1) for _ in range(ngens))
    for d in degrees:
        basis = b.basis(d - 1)
        diff = {}
        if basis:
            dm = b.d_matrix(d - 1)
            Z = _kernel_vectors(dm, FPModule.free(ring, dm.rows))
            for z in Z:
                if rng.random() < 0.6:
                    c = random_poly(rng, ring, 1)
                    for i, e in z.items():
                        v = ring.add(diff.get(basis[i], ()), ring.mul(c, e))
                        if v:
                            diff[basis[i]] = v
                        else:
                            diff.pop(basis[i], None)
        b.add(d, diff, {})
    return b.module(name)


def random_element(rng: random.Random, piece: HomPiece) -> GradedMap:
    ring = piece.space.ring
    return piece.combine([random_poly(rng, ring, 1) for _ in piece.gens])


def random_ring(rng: random.Random, characteristic: int) -> RingDescriptor:
    from .linalg.ring import polynomial_ring, quotient_ring
    if rng.random() < 0.5:
        return polynomial_ring(characteristic)
    return quotient_ring(characteristic, "X^2")
