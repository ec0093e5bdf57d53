"""DG algebras with tabulated products and DG modules over them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Mapping, Sequence

from .complexes import Complex, GradedMap
from .errors import AxiomViolation, IncompatibleAlgebras, ValidationError
from .homs import HomHomology, HomPiece, hom_complex
from .linalg.matrix import RMatrix
from .linalg.modules import FPModule, Subquotient, _kernel_vectors, matrix_is_zero_map, target_respects
from .linalg.ring import RingDescriptor

Key = Hashable
Combo = dict  # basis key -> coefficient polynomial


@dataclass(frozen=True)
class Ok:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Violation:
    law: str
    degree: int | None
    witness: str

    def __bool__(self):
        return False


class DGAlgebra:
    """A degreewise free, non-negatively graded DG algebra with A_0 = R·1.

    ``basis`` lists ``(key, degree)`` pairs with the unit first; ``products``
    maps a pair of non-unit keys to a combination of basis keys, missing
    pairs are zero; ``differential`` maps a key to a combination.
    """

    def __init__(self, ring: RingDescriptor, basis: Sequence[tuple[Key, int]],
                 products: Mapping[tuple[Key, Key], Combo], differential: Mapping[Key, Combo],
                 name: str = "A", labels: Mapping[Key, str] | None = None, check: bool = True):
        self.ring = ring
        self.name = name
        self.basis = list(basis)
        self.unit = self.basis[0][0]
        self.degree_of = dict(self.basis)
        if self.degree_of[self.unit] != 0 or any(d < 0 for _, d in self.basis):
            raise ValidationError("DG algebras live in non-negative degrees with the unit in degree 0", "grading")
        if [k for k, d in self.basis if d == 0] != [self.unit]:
            raise ValidationError("degree 0 must be spanned by the unit", "grading")
        self.by_degree: dict[int, list[Key]] = {}
        for k, d in self.basis:
            self.by_degree.setdefault(d, []).append(k)
        self.index = {k: self.by_degree[d].index(k) for k, d in self.basis}
        self.labels = dict(labels or {k: str(k) for k, _ in self.basis})
        self.products = {kk: self._clean(v) for kk, v in products.items()}
        self.differential = {k: self._clean(v) for k, v in differential.items()}
        self._complex = self._build_complex()
        self._fingerprint = (ring, tuple(self.basis), self._table(self.products), self._table(self.differential))
        if check:
            res = self.check_axioms()
            if not res:
                raise AxiomViolation(f"{res.law} fails in degree {res.degree}: {res.witness}", res.law)

    @staticmethod
    def _table(t: Mapping) -> tuple:
        return tuple(sorted((repr(k), repr(sorted(v.items(), key=repr))) for k, v in t.items()))

    def _clean(self, combo: Combo) -> Combo:
        out = {}
        for k, c in combo.items():
            c = self.ring.reduce(self.ring.polys.norm(c) if isinstance(c, tuple) else self.ring.parse(c))
            if c:
                out[k] = c
        return out

    def __eq__(self, other):
        return isinstance(other, DGAlgebra) and (self is other or self._fingerprint == other._fingerprint)

    def __hash__(self):
        return hash(self._fingerprint)

    def __repr__(self):
        return f"DGAlgebra({self.name} over {self.ring}, ranks={ {d: len(k) for d, k in sorted(self.by_degree.items())} })"

    @property
    def complex(self) -> Complex:
        return self._complex

    @property
    def top_degree(self) -> int:
        return max(self.by_degree)

    def nonunit_basis(self) -> list[tuple[Key, int]]:
        return self.basis[1:]

    def _build_complex(self) -> Complex:
        ring = self.ring
        pieces = {d: FPModule.free(ring, len(ks)) for d, ks in self.by_degree.items()}
        diffs = {}
        for d, ks in self.by_degree.items():
            if d == 0:
                continue
            rows = len(self.by_degree.get(d - 1, []))
            cols = []
            for k in ks:
                cols.append({self.index[b]: c for b, c in self.differential.get(k, {}).items()})
            diffs[d] = RMatrix.from_sparse_columns(ring, rows, cols)
        return Complex(ring, pieces, diffs, check=False)

    # arithmetic on combinations ------------------------------------------
    def mul_basis(self, a: Key, b: Key) -> Combo:
        if a == self.unit:
            return {b: (1,)}
        if b == self.unit:
            return {a: (1,)}
        return self.products.get((a, b), {})

    def mul(self, u: Combo, v: Combo) -> Combo:
        R = self.ring
        out: Combo = {}
        for a, ca in u.items():
            for b, cb in v.items():
                c = R.mul(ca, cb)
                if not c:
                    continue
                for k, e in self.mul_basis(a, b).items():
                    nv = R.add(out.get(k, ()), R.mul(c, e))
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def d(self, u: Combo) -> Combo:
        R = self.ring
        out: Combo = {}
        for a, ca in u.items():
            for k, e in self.differential.get(a, {}).items():
                nv = R.add(out.get(k, ()), R.mul(ca, e))
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def _sub(self, u: Combo, v: Combo) -> Combo:
        R = self.ring
        out = dict(u)
        for k, e in v.items():
            nv = R.sub(out.get(k, ()), e)
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
        return out

    def _scale(self, c: int, u: Combo) -> Combo:
        return {k: self.ring.mul(self.ring.parse(c), e) for k, e in u.items()} if c != 1 else dict(u)

    def check_axioms(self) -> Ok | Violation:
        deg = self.degree_of
        ks = [k for k, _ in self.basis]
        for (a, b), prod in self.products.items():
            for k in prod:
                if deg[k] != deg[a] + deg[b]:
                    return Violation("grading", deg[a] + deg[b], f"{self.labels[a]}·{self.labels[b]}")
        for a in ks:
            for k in self.differential.get(a, {}):
                if deg[k] != deg[a] - 1:
                    return Violation("grading", deg[a], f"∂{self.labels[a]}")
            if self.d(self.d({a: (1,)})):
                return Violation("square-zero", deg[a], f"∂∂{self.labels[a]}")
        for a in ks:
            for b in ks:
                ab = self.mul_basis(a, b)
                sign = -1 if deg[a] * deg[b] % 2 else 1
                if self._sub(ab, self._scale(sign, self.mul_basis(b, a))):
                    return Violation("graded-commutativity", deg[a] + deg[b], f"{self.labels[a]}, {self.labels[b]}")
                if a == b and deg[a] % 2 and ab:
                    return Violation("odd-square", 2 * deg[a], self.labels[a])
                lhs = self.d(ab)
                rhs = self.mul(self.d({a: (1,)}), {b: (1,)})
                rhs2 = self.mul({a: (1,)}, self.d({b: (1,)}))
                rhs = self._sub(rhs, self._scale(-1, rhs2)) if deg[a] % 2 == 0 else self._sub(rhs, rhs2)
                if self._sub(lhs, rhs):
                    return Violation("Leibniz", deg[a] + deg[b], f"{self.labels[a]}, {self.labels[b]}")
                for c in ks:
                    left = self.mul(ab, {c: (1,)})
                    right = self.mul({a: (1,)}, self.mul_basis(b, c))
                    if self._sub(left, right):
                        return Violation("associativity", deg[a] + deg[b] + deg[c],
                                         f"{self.labels[a]}, {self.labels[b]}, {self.labels[c]}")
        return Ok()


def base_algebra(ring: RingDescriptor) -> DGAlgebra:
    """R concentrated in degree 0."""
    return DGAlgebra(ring, [("1", 0)], {}, {}, name="R", labels={"1": "1"})


def _merge_sign(s: tuple[int, ...], t: tuple[int, ...]) -> int:
    inv = sum(1 for a in s for b in t if a > b)
    return -1 if inv % 2 else 1


def koszul_algebra(ring: RingDescriptor, elements: Sequence) -> DGAlgebra:
    """Exterior algebra on e_1..e_n of degree 1 with ∂e_i = x_i."""
    if not elements:
        raise ValidationError("the Koszul algebra needs at least one element", "nonempty")
    xs = [ring.element(x).coeffs for x in elements]
    n = len(xs)
    subsets = [tuple(c) for r in range(n + 1) for c in combinations(range(n), r)]
    labels = {s: ("1" if not s else "".join(f"e{i + 1}" for i in s)) for s in subsets}
    basis = [(s, len(s)) for s in subsets]
    products = {}
    for s in subsets[1:]:
        for t in subsets[1:]:
            if set(s) & set(t):
                continue
            u = tuple(sorted(s + t))
            products[(s, t)] = {u: (1,) if _merge_sign(s, t) > 0 else ring.polys.neg((1,))}
    diff = {}
    for s in subsets[1:]:
        combo: Combo = {}
        for k, i in enumerate(s):
            c = xs[i] if k % 2 == 0 else ring.polys.neg(xs[i])
            rest = s[:k] + s[k + 1:]
            if ring.reduce(c):
                combo[rest] = c
        diff[s] = combo
    name = "K(" + ", ".join(ring.format(x) for x in xs) + ")"
    return DGAlgebra(ring, basis, products, diff, name=name, labels=labels)


# ---------------------------------------------------------------------------
# DG modules
# ---------------------------------------------------------------------------

class DGModule:
    """A complex with a chain-map action of a DG algebra.

    ``action[(key, j)]`` is the matrix of multiplication by the basis element
    ``key`` from degree j to degree j + |key|; the unit acts as the identity
    and missing entries are zero.
    """

    def __init__(self, algebra: DGAlgebra, complex: Complex,
                 action: Mapping[tuple[Key, int], RMatrix] | None = None, name: str = "M", check: bool = True):
        if complex.ring != algebra.ring:
            raise ValidationError("module and algebra live over different rings", "same-ring")
        if complex.period and algebra.nonunit_basis():
            raise ValidationError("periodic modules need an algebra concentrated in degree 0", "periodic")
        self.algebra = algebra
        self._complex = complex
        self.name = name
        self.action = {}
        for (k, j), m in (action or {}).items():
            if k == algebra.unit:
                continue
            j = j % complex.period if complex.period else j
            expect = (complex.piece(j + algebra.degree_of[k]).ngens, complex.piece(j).ngens)
            if m.shape != expect:
                raise ValidationError(f"action of {algebra.labels[k]} on degree {j} has shape {m.shape}, "
                                      f"expected {expect}", "dimensions")
            if not m.is_zero():
                self.action[(k, j)] = m
        if check:
            res = check_axioms(self)
            if not res:
                raise AxiomViolation(f"{res.law} fails in degree {res.degree}: {res.witness}", res.law)

    @property
    def complex(self) -> Complex:
        return self._complex

    @property
    def ring(self) -> RingDescriptor:
        return self._complex.ring

    def piece(self, j: int) -> FPModule:
        return self._complex.piece(j)

    def diff(self, j: int) -> RMatrix:
        return self._complex.diff(j)

    def degrees(self) -> list[int]:
        return self._complex.degrees()

    def is_zero(self) -> bool:
        return self._complex.is_zero()

    def act(self, key: Key, j: int) -> RMatrix:
        c = self._complex
        if key == self.algebra.unit:
            return RMatrix.identity(self.ring, c.piece(j).ngens)
        jj = j % c.period if c.period else j
        m = self.action.get((key, jj))
        if m is None:
            return RMatrix.zero(self.ring, c.piece(j + self.algebra.degree_of[key]).ngens, c.piece(j).ngens)
        return m

    def act_combo(self, combo: Combo, j: int, degree: int) -> RMatrix:
        """Matrix of multiplication by a homogeneous combination of the given degree."""
        c = self._complex
        out = RMatrix.zero(self.ring, c.piece(j + degree).ngens, c.piece(j).ngens)
        for k, e in combo.items():
            out = out + self.act(k, j).scale(e)
        return out

    def __repr__(self):
        return f"DGModule({self.name}, {self._complex!r})"


def check_axioms(m: DGModule) -> Ok | Violation:
    """Well-definedness, square-zero, Leibniz and associativity on generators."""
    A = m.algebra
    c = m.complex
    try:
        c.validate()
    except ValidationError as exc:
        return Violation(exc.invariant, None, str(exc))
    for key, ia in A.nonunit_basis():
        for j in c.degrees():
            act = m.act(key, j)
            if not target_respects(act, c.piece(j), c.piece(j + ia)):
                return Violation("well-defined", j, f"action of {A.labels[key]}")
            # ∂(am) = ∂(a)m + (-1)^{|a|} a ∂m
            lhs = c.diff(j + ia) @ act
            rhs = m.act_combo(A.d({key: (1,)}), j, ia - 1)
            second = m.act(key, j - 1) @ c.diff(j)
            rhs = rhs - second if ia % 2 else rhs + second
            if not matrix_is_zero_map(lhs - rhs, c.piece(j + ia - 1)):
                return Violation("Leibniz", j, f"{A.labels[key]} on degree {j}")
    for a, ia in A.nonunit_basis():
        for b, ib in A.nonunit_basis():
            ab = A.mul_basis(a, b)
            for j in c.degrees():
                lhs = m.act(a, j + ib) @ m.act(b, j)
                rhs = m.act_combo(ab, j, ia + ib)
                if not matrix_is_zero_map(lhs - rhs, c.piece(j + ia + ib)):
                    return Violation("associativity", j, f"{A.labels[a]}·({A.labels[b]}·m)")
    return Ok()


def as_module(c: Complex, algebra: DGAlgebra | None = None, name: str = "M") -> DGModule:
    """A complex viewed as a DG module over the base algebra."""
    return DGModule(algebra or base_algebra(c.ring), c, {}, name=name)


def algebra_module(A: DGAlgebra) -> DGModule:
    """A as a DG module over itself."""
    action = {}
    for key, ia in A.nonunit_basis():
        for j, ks in A.by_degree.items():
            tgt = A.by_degree.get(j + ia, [])
            if not tgt:
                continue
            cols = []
            for b in ks:
                cols.append({A.index[k]: e for k, e in A.mul_basis(key, b).items()})
            action[(key, j)] = RMatrix.from_sparse_columns(A.ring, len(tgt), cols)
    return DGModule(A, A.complex, action, name=A.name)


def suspend_module(m: DGModule, n: int = 1) -> DGModule:
    """Σⁿ M with differential (-1)ⁿ ∂ and action a·σⁿx = (-1)^{n|a|} σⁿ(ax)."""
    from .complexes import suspend
    if n == 0:
        return m
    c = suspend(m.complex, n)
    action = {}
    for (k, j), mat in m.action.items():
        ia = m.algebra.degree_of[k]
        jj = (j + n) % c.period if c.period else j + n
        action[(k, jj)] = -mat if (n * ia) % 2 else mat
    name = f"Σ{m.name}" if n == 1 else f"Σ^{n}{m.name}"
    return DGModule(m.algebra, c, action, name=name, check=False)


def direct_sum_modules(ms: Sequence[DGModule], name: str | None = None) -> DGModule:
    from .complexes import direct_sum_complex
    A = ms[0].algebra
    for m in ms[1:]:
        if m.algebra != A:
            raise IncompatibleAlgebras("direct sum of modules over different algebras")
    c = direct_sum_complex([m.complex for m in ms])
    action = {}
    for key, ia in A.nonunit_basis():
        for j in c.degrees():
            action[(key, j)] = RMatrix.block_diagonal(A.ring, [m.act(key, j) for m in ms])
    return DGModule(A, c, action, name=name or "⊕".join(m.name for m in ms), check=False)


def free_module(A: DGAlgebra, shifts: Sequence[int], name: str | None = None) -> DGModule:
    """⊕ Σ^{s} A over the given shifts."""
    base = algebra_module(A)
    if not shifts:
        return zero_module(A)
    return direct_sum_modules([suspend_module(base, s) for s in shifts],
                              name=name or "⊕".join(f"Σ^{s}A" if s else "A" for s in shifts))


def zero_module(A: DGAlgebra) -> DGModule:
    return DGModule(A, Complex(A.ring, {}), {}, name="0", check=False)


def desuspension_map(q: DGModule, shift: int, lower: DGModule) -> GradedMap:
    """The degree -1 map Σ^{s}M -> Σ^{s-1}M given by identity matrices."""
    return GradedMap(q, lower, -1, {j: RMatrix.identity(q.ring, q.piece(j).ngens) for j in q.degrees()})


def block_module(n: DGModule, q: DGModule, lam: GradedMap, name: str = "X") -> DGModule:
    """N ⊕ Q with ∂ = [[∂^N, λ], [0, ∂^Q]] and componentwise action."""
    from .complexes import block_complex
    if n.algebra != q.algebra:
        raise IncompatibleAlgebras("block module over different algebras")
    A = n.algebra
    c = block_complex(n.complex, q.complex, lam)
    action = {}
    for key, ia in A.nonunit_basis():
        for j in c.degrees():
            action[(key, j)] = RMatrix.block_diagonal(A.ring, [n.act(key, j), q.act(key, j)])
    return DGModule(A, c, action, name=name, check=False)


def disk(A: DGAlgebra, n: int) -> DGModule:
    """D^n(A): free on e in degree n and ∂e in degree n-1; Hom(D^n(A), M) ≅ M_n."""
    base = algebra_module(A)
    top, bottom = suspend_module(base, n), suspend_module(base, n - 1)
    d = block_module(bottom, top, desuspension_map(top, n, bottom), name=f"D^{n}")
    return d


def disk_generator_index(A: DGAlgebra, n: int) -> int:
    """Position of e among the generators of D^n(A) in degree n."""
    return len(A.by_degree.get(1, []))


# ---------------------------------------------------------------------------
# sub- and quotient modules
# ---------------------------------------------------------------------------

def _induced(x: DGModule, sqs: dict[int, Subquotient], name: str) -> DGModule:
    """DG module on the per-degree subquotients ``sqs`` of ``x`` (closed under ∂ and the action)."""
    A = x.algebra
    ring = x.ring
    c = x.complex
    period = c.period
    pieces = {j: sq.module for j, sq in sqs.items()}
    empty = Subquotient(ring, 0, [], [])

    def sq_at(j):
        key = j % period if period else j
        return sqs.get(key, empty)

    def transport(mat_fn, j, shift):
        src, tgt = sq_at(j), sq_at(j + shift)
        cols = []
        for g in src.gens:
            v = mat_fn(g)
            co = tgt.coords(v) if tgt.n else []
            if co is None:
                raise ValidationError("subquotient is not closed under the structure maps", "closed")
            cols.append(co)
        return RMatrix.from_columns(ring, len(tgt.gens), cols) if cols else RMatrix.zero(ring, len(tgt.gens), 0)

    def apply(mat):
        def f(v):
            out = {}
            for i in range(mat.rows):
                acc = ()
                for s, e in v.items():
                    if mat.data[i][s]:
                        acc = ring.polys.add(acc, ring.polys.mul(mat.data[i][s], e))
                acc = ring.reduce(acc)
                if acc:
                    out[i] = acc
            return out
        return f

    degs = list(sqs)
    diffs = {j: transport(apply(c.diff(j)), j, -1) for j in degs}
    action = {}
    for key, ia in A.nonunit_basis():
        for j in degs:
            action[(key, j)] = transport(apply(x.act(key, j)), j, ia)
    cx = Complex(ring, pieces, diffs, period=period, check=False)
    return DGModule(A, cx, action, name=name, check=False)


def kernel_module(f: GradedMap, name: str = "K") -> tuple[DGModule, GradedMap]:
    """Kernel of a morphism with its inclusion."""
    x, y = f.source, f.target
    ring = x.ring
    sqs = {}
    for j in x.degrees():
        p = x.piece(j)
        Z = _kernel_vectors(f.component(j), y.piece(j)) if p.ngens else []
        sqs[j] = Subquotient(ring, p.ngens, Z, [p.relations.sparse_column(k) for k in range(p.relations.cols)])
    k = _induced(x, sqs, name)
    k.parent_coords = sqs
    inc = GradedMap(k, x, 0, {j: RMatrix.from_sparse_columns(ring, x.piece(j).ngens, sq.gens)
                              for j, sq in sqs.items() if sq.gens})
    return k, inc


def image_module(f: GradedMap, name: str = "I") -> tuple[DGModule, GradedMap]:
    y = f.target
    ring = y.ring
    sqs = {}
    degs = y.degrees()
    for j in degs:
        p = y.piece(j)
        fm = f.component(j)
        sqs[j] = Subquotient(ring, p.ngens, [fm.sparse_column(k) for k in range(fm.cols)],
                             [p.relations.sparse_column(k) for k in range(p.relations.cols)])
    im = _induced(y, sqs, name)
    inc = GradedMap(im, y, 0, {j: RMatrix.from_sparse_columns(ring, y.piece(j).ngens, sq.gens)
                               for j, sq in sqs.items() if sq.gens})
    return im, inc


def cokernel_module(f: GradedMap, name: str = "C") -> tuple[DGModule, GradedMap]:
    """Cokernel of a morphism: same generators, image columns added to the relations."""
    y = f.target
    ring = y.ring
    c = y.complex
    pieces = {}
    for j in y.degrees():
        p = y.piece(j)
        pieces[j] = FPModule(ring, p.ngens, p.relations.hstack(f.component(j - f.degree)))
    cx = Complex(ring, pieces, {j: c.diff(j) for j in c.degrees()}, period=c.period, check=False)
    q = DGModule(y.algebra, cx, dict(y.action), name=name, check=False)
    proj = GradedMap(y, q, 0, {j: RMatrix.identity(ring, y.piece(j).ngens) for j in y.degrees()})
    return q, proj


# ---------------------------------------------------------------------------
# Hom_A
# ---------------------------------------------------------------------------

def _same_algebra(m, n):
    a, b = getattr(m, "algebra", None), getattr(n, "algebra", None)
    if a is not None and b is not None and a != b:
        raise IncompatibleAlgebras("modules over different DG algebras")


def hom_complex_A(m: DGModule, n: DGModule, window: Sequence[int] | range | None = None):
    """Hom_A(M, N) on a window of degrees (one period for periodic inputs).

    Returns the presented complex and, per degree, the generators realised
    as graded maps.
    """
    _same_algebra(m, n)
    period = m.complex.period or n.complex.period
    if period:
        c, pieces = hom_complex(m, n, list(range(period)), a_linear=True, period=period)
    else:
        if window is None:
            lo = min(n.degrees(), default=0) - max(m.degrees(), default=0)
            hi = max(n.degrees(), default=0) - min(m.degrees(), default=0)
            window = range(lo, hi + 1)
        c, pieces = hom_complex(m, n, list(window), a_linear=True)
    return c, {d: p.gens for d, p in pieces.items()}


def hom_piece_A(m: DGModule, n: DGModule, d: int) -> HomPiece:
    _same_algebra(m, n)
    return HomPiece(m, n, d, a_linear=True)


def morphism_module(m: DGModule, n: DGModule) -> FPModule:
    """Z_0(Hom_A(M, N)): the module of DG morphisms."""
    _same_algebra(m, n)
    return HomHomology(m, n, 0, boundaries=False).module


def is_morphism(f: GradedMap) -> bool:
    """Degree 0, well defined, A-linear and a cycle."""
    if f.degree != 0 or not f.is_well_defined() or not f.is_cycle():
        return False
    return is_a_linear(f)


def is_a_linear(f: GradedMap) -> bool:
    m, n = f.source, f.target
    A = getattr(m, "algebra", None)
    if A is None or getattr(n, "algebra", None) is None:
        return True
    for key, ia in A.nonunit_basis():
        sign_neg = (f.degree * ia) % 2 == 1
        for j in m.degrees():
            lhs = f.component(j + ia) @ m.act(key, j)
            rhs = n.act(key, j + f.degree) @ f.component(j)
            diff = lhs + rhs if sign_neg else lhs - rhs
            if not matrix_is_zero_map(diff, n.piece(j + ia + f.degree)):
                return False
    return True


def coords_in_sub(k: DGModule, j: int, v: dict) -> dict:
    """Coordinates in a kernel module of an ambient vector of its parent in degree j."""
    sq = k.parent_coords.get(k.complex._key(j))
    if sq is None or not sq.gens:
        if any(v.values()):
            raise ValidationError("vector does not lie in the submodule", "closed")
        return {}
    co = sq.coords(v)
    if co is None:
        raise ValidationError("vector does not lie in the submodule", "closed")
    return {i: c for i, c in enumerate(co) if c}


def factor_through_sub(k: DGModule, phi: GradedMap) -> GradedMap:
    """The map into a kernel module k whose composite with the inclusion is phi."""
    ring = k.ring
    comps = {}
    for j in phi.source.degrees():
        mat = phi.component(j)
        t = j + phi.degree
        cols = [coords_in_sub(k, t, mat.sparse_column(c)) for c in range(mat.cols)]
        comps[j] = RMatrix.from_sparse_columns(ring, k.piece(t).ngens, cols)
    return GradedMap(phi.source, k, phi.degree, comps)


def simplify_module(x: DGModule, name: str | None = None) -> tuple[DGModule, GradedMap, GradedMap]:
    """Smith-reduced presentation of every piece; returns (x', x -> x', x' -> x)."""
    ring = x.ring
    sqs = {}
    for j in x.degrees():
        p = x.piece(j)
        sqs[j] = Subquotient(ring, p.ngens, [{s: (1,)} for s in range(p.ngens)],
                             [p.relations.sparse_column(k) for k in range(p.relations.cols)])
    y = _induced(x, sqs, name or x.name)
    back = GradedMap(y, x, 0, {j: RMatrix.from_sparse_columns(ring, x.piece(j).ngens, sq.gens)
                               for j, sq in sqs.items() if sq.gens})
    to = {}
    for j, sq in sqs.items():
        n = x.piece(j).ngens
        if n and sq.gens:
            to[j] = RMatrix.from_columns(ring, len(sq.gens), [sq.coords({s: (1,)}) for s in range(n)])
    return y, GradedMap(x, y, 0, to), back
