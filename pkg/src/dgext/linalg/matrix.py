"""Matrices over the base ring, Smith normal form and exact linear solving.

All elimination happens over the Euclidean domain k[X].  Systems over a
quotient k[X]/(f) are lifted to k[X] and augmented with the columns f*e_i,
so a single engine serves both kinds of base ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import DimensionMismatch, ValidationError
from .poly import Poly, PolyRing
from .ring import RingDescriptor, RingElement

SparseVec = dict  # row index -> nonzero Poly


class RMatrix:
    """Immutable rows x cols matrix of reduced ring elements."""

    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: RingDescriptor, data: Sequence[Sequence[Poly]], rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(ring.reduce(e) for e in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"entry grid is not {rows} x {cols}")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def _raw(cls, ring, data, rows, cols) -> "RMatrix":
        # trusted constructor: entries already reduced
        m = object.__new__(cls)
        m.ring, m.rows, m.cols, m.data = ring, rows, cols, data
        return m

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ring: RingDescriptor, rows: int, cols: int) -> "RMatrix":
        return cls._raw(ring, tuple(((),) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, ring: RingDescriptor, n: int) -> "RMatrix":
        one = ring.polys.const(1)
        return cls._raw(ring, tuple(tuple(one if i == j else () for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def from_entries(cls, ring: RingDescriptor, entries: Sequence[Sequence], rows: int | None = None,
                     cols: int | None = None) -> "RMatrix":
        def conv(e):
            if isinstance(e, RingElement):
                return e.coeffs
            if isinstance(e, tuple):
                return ring.polys.norm(e)
            return ring.parse(e)
        return cls(ring, [[conv(e) for e in row] for row in entries], rows, cols)

    @classmethod
    def from_columns(cls, ring: RingDescriptor, rows: int, columns: Sequence[Sequence[Poly]]) -> "RMatrix":
        cols = list(columns)
        return cls(ring, [[c[i] for c in cols] for i in range(rows)], rows, len(cols))

    @classmethod
    def from_sparse_columns(cls, ring: RingDescriptor, rows: int, columns: Sequence[SparseVec]) -> "RMatrix":
        return cls(ring, [[c.get(i, ()) for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def diagonal(cls, ring: RingDescriptor, entries: Sequence[Poly], rows: int | None = None,
                 cols: int | None = None) -> "RMatrix":
        n = len(entries)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        return cls(ring, [[entries[i] if i == j and i < n else () for j in range(cols)] for i in range(rows)],
                   rows, cols)

    @classmethod
    def block(cls, ring: RingDescriptor, blocks: Sequence[Sequence["RMatrix"]]) -> "RMatrix":
        rows = []
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise DimensionMismatch("block row heights differ")
            for i in range(h):
                rows.append(sum((b.data[i] for b in brow), ()))
        ncols = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls._raw(ring, tuple(rows), len(rows), ncols)

    @classmethod
    def block_diagonal(cls, ring: RingDescriptor, mats: Sequence["RMatrix"]) -> "RMatrix":
        return cls.block(ring, [[m if i == j else cls.zero(ring, m.rows, o.cols) for j, o in enumerate(mats)]
                                for i, m in enumerate(mats)])

    # access -------------------------------------------------------------
    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return RingElement(self.ring, self.data[i][j])

    def entry(self, i: int, j: int) -> Poly:
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def sparse_column(self, j: int) -> SparseVec:
        return {i: row[j] for i, row in enumerate(self.data) if row[j]}

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(any(row) for row in self.data)

    # arithmetic ---------------------------------------------------------
    def _check_ring(self, other: "RMatrix"):
        if other.ring != self.ring:
            raise ValidationError("matrices over different rings", "same-ring")

    def __add__(self, other: "RMatrix") -> "RMatrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.polys.add
        return RMatrix._raw(self.ring, tuple(tuple(add(a, b) for a, b in zip(r, s))
                                             for r, s in zip(self.data, other.data)), self.rows, self.cols)

    def __neg__(self) -> "RMatrix":
        neg = self.ring.polys.neg
        return RMatrix._raw(self.ring, tuple(tuple(neg(a) for a in r) for r in self.data), self.rows, self.cols)

    def __sub__(self, other: "RMatrix") -> "RMatrix":
        return self + (-other)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        P = ring.polys
        ocols = [other.column(j) for j in range(other.cols)]
        out = []
        for row in self.data:
            nz = [(k, a) for k, a in enumerate(row) if a]
            new = []
            for col in ocols:
                acc = ()
                for k, a in nz:
                    b = col[k]
                    if b:
                        acc = P.add(acc, P.mul(a, b))
                new.append(ring.reduce(acc))
            out.append(tuple(new))
        return RMatrix._raw(ring, tuple(out), self.rows, other.cols)

    def scale(self, c) -> "RMatrix":
        if isinstance(c, RingElement):
            c = c.coeffs
        elif not isinstance(c, tuple):
            c = self.ring.parse(c)
        mul = self.ring.mul
        return RMatrix._raw(self.ring, tuple(tuple(mul(c, a) for a in r) for r in self.data), self.rows, self.cols)

    def transpose(self) -> "RMatrix":
        if not (self.rows and self.cols):
            return RMatrix.zero(self.ring, self.cols, self.rows)
        return RMatrix._raw(self.ring, tuple(zip(*self.data)), self.cols, self.rows)

    def hstack(self, other: "RMatrix") -> "RMatrix":
        return RMatrix.block(self.ring, [[self, other]])

    def vstack(self, other: "RMatrix") -> "RMatrix":
        return RMatrix.block(self.ring, [[self], [other]])

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "RMatrix":
        rows, cols = list(rows), list(cols)
        return RMatrix._raw(self.ring, tuple(tuple(self.data[i][j] for j in cols) for i in rows),
                            len(rows), len(cols))

    def __eq__(self, other):
        return isinstance(other, RMatrix) and self.ring == other.ring and self.shape == other.shape \
            and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def to_strings(self) -> list[list[str]]:
        return [[self.ring.format(e) for e in row] for row in self.data]

    def __repr__(self):
        return f"RMatrix({self.to_strings()})"


# ---------------------------------------------------------------------------
# column echelon form over k[X]
# ---------------------------------------------------------------------------

def _axpy(P: PolyRing, target: dict, q: Poly, source: dict) -> None:
    """target -= q * source, in place, on sparse vectors."""
    for r, v in source.items():
        nv = P.sub(target.get(r, ()), P.mul(q, v))
        if nv:
            target[r] = nv
        else:
            target.pop(r, None)


class ColumnEchelon:
    """Factorisation A V = H with V unimodular and H in column echelon form.

    Works over k[X].  ``solve`` decides membership of a vector in the
    column span exactly and ``kernel`` returns a basis of the null space.
    """

    def __init__(self, polys: PolyRing, nrows: int, columns: Sequence[SparseVec]):
        P = polys
        self.polys = P
        self.nrows = nrows
        self.ncols = len(columns)
        H = [dict(c) for c in columns]
        V = [{j: (1,)} for j in range(self.ncols)]
        active = set(range(self.ncols))
        pivots: list[tuple[int, int]] = []
        while True:
            # pivot on an active entry of least degree to keep degree growth in check
            best = None
            for c in active:
                for r, v in H[c].items():
                    key = (len(v), len(H[c]), r, c)
                    if best is None or key < best:
                        best = key
            if best is None:
                break
            _, _, r, piv = best
            cand = [c for c in active if r in H[c]]
            others = [c for c in cand if c != piv]
            while others:
                c = others.pop()
                while r in H[c]:
                    a = H[piv][r]
                    q, rem = P.divmod(H[c][r], a)
                    _axpy(P, H[c], q, H[piv])
                    _axpy(P, V[c], q, V[piv])
                    if rem:
                        piv, c = c, piv
            active.discard(piv)
            pivots.append((r, piv))
        self.H = H
        self.V = V
        self.pivots = pivots
        self.free = sorted(active)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solve(self, b: SparseVec) -> SparseVec | None:
        """Return y with A y = b, or None when b is outside the column span."""
        P = self.polys
        b = dict(b)
        y: dict[int, Poly] = {}
        for r, c in self.pivots:
            val = b.get(r)
            if not val:
                continue
            q, rem = P.divmod(val, self.H[c][r])
            if rem:
                return None
            _axpy(P, b, q, self.H[c])
            y[c] = q
        if b:
            return None
        x: dict[int, Poly] = {}
        for c, q in y.items():
            _axpy(P, x, P.neg(q), self.V[c])
        return x

    def kernel(self) -> list[SparseVec]:
        return [dict(self.V[c]) for c in self.free]

    def image_basis(self) -> list[SparseVec]:
        return [dict(self.H[c]) for _, c in self.pivots]


def span_basis(polys: PolyRing, nrows: int, vectors: Sequence[SparseVec]) -> list[SparseVec]:
    """A basis of the k[X]-span of the given vectors (a free submodule)."""
    return ColumnEchelon(polys, nrows, vectors).image_basis()


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def _snf_dense(P: PolyRing, A: list[list[Poly]], nrows: int, ncols: int, track_u=True, track_uinv=False,
               track_v=True):
    one = (1,)
    U = [[one if i == j else () for j in range(nrows)] for i in range(nrows)] if track_u else None
    Ui = [[one if i == j else () for j in range(nrows)] for i in range(nrows)] if track_uinv else None
    V = [[one if i == j else () for j in range(ncols)] for i in range(ncols)] if track_v else None

    def row_axpy(i, q, t):  # row_i -= q * row_t
        A[i] = [P.sub(x, P.mul(q, y)) if y else x for x, y in zip(A[i], A[t])]
        if U is not None:
            U[i] = [P.sub(x, P.mul(q, y)) if y else x for x, y in zip(U[i], U[t])]
        if Ui is not None:
            for row in Ui:  # col_t += q * col_i
                if row[i]:
                    row[t] = P.add(row[t], P.mul(q, row[i]))

    def col_axpy(j, q, t):  # col_j -= q * col_t
        for row in A:
            if row[t]:
                row[j] = P.sub(row[j], P.mul(q, row[t]))
        if V is not None:
            for row in V:
                if row[t]:
                    row[j] = P.sub(row[j], P.mul(q, row[t]))

    def swap_rows(i, t):
        A[i], A[t] = A[t], A[i]
        if U is not None:
            U[i], U[t] = U[t], U[i]
        if Ui is not None:
            for row in Ui:
                row[i], row[t] = row[t], row[i]

    def swap_cols(j, t):
        for row in A:
            row[j], row[t] = row[t], row[j]
        if V is not None:
            for row in V:
                row[j], row[t] = row[t], row[j]

    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                e = A[i][j]
                if e and (best is None or len(e) < best[0]):
                    best = (len(e), i, j)
                    if len(e) == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            swap_rows(i0, t)
        if j0 != t:
            swap_cols(j0, t)
        while True:
            changed = False
            for i in range(t + 1, nrows):
                if A[i][t]:
                    q, rem = P.divmod(A[i][t], A[t][t])
                    row_axpy(i, q, t)
                    if rem:
                        swap_rows(i, t)
                        changed = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q, rem = P.divmod(A[t][j], A[t][t])
                    col_axpy(j, q, t)
                    if rem:
                        swap_cols(j, t)
                        changed = True
            if changed:
                continue
            if any(A[i][t] for i in range(t + 1, nrows)) or any(A[t][j] for j in range(t + 1, ncols)):
                continue
            bad = None
            piv = A[t][t]
            if len(piv) > 1:
                for i in range(t + 1, nrows):
                    for j in range(t + 1, ncols):
                        if A[i][j] and not P.divides(piv, A[i][j]):
                            bad = i
                            break
                    if bad is not None:
                        break
            if bad is None:
                break
            # row_t += row_bad
            row_axpy(t, P.const(-1), bad)
        t += 1
    # monic diagonal
    for k in range(min(nrows, ncols)):
        d = A[k][k]
        if d and d[-1] != 1:
            u = P.field.inv(d[-1])
            A[k] = [P.scale(x, u) for x in A[k]]
            if U is not None:
                U[k] = [P.scale(x, u) for x in U[k]]
            if Ui is not None:
                inv_u = d[-1]
                for row in Ui:
                    row[k] = P.scale(row[k], inv_u)
    return A, U, Ui, V


def _check_snf_ring(ring: RingDescriptor):
    if ring.modulus and not ring.is_field:
        raise ValidationError(f"Smith normal form needs a Euclidean domain or a field, got {ring}", "snf-ring")


def smith_normal_form(m: RMatrix) -> tuple[RMatrix, RMatrix, RMatrix]:
    """Return (U, D, V) with U m V = D diagonal, each entry dividing the next."""
    ring = m.ring
    _check_snf_ring(ring)
    A = [list(r) for r in m.data]
    D, U, _, V = _snf_dense(ring.polys, A, m.rows, m.cols)
    return (RMatrix(ring, U, m.rows, m.rows), RMatrix(ring, D, m.rows, m.cols),
            RMatrix(ring, V, m.cols, m.cols))


def smith_diagonal(polys: PolyRing, nrows: int, columns: Sequence[SparseVec]) -> list[Poly]:
    """Diagonal of the Smith form over k[X] of the matrix with the given columns."""
    A = [[c.get(i, ()) for c in columns] for i in range(nrows)]
    D, _, _, _ = _snf_dense(polys, A, nrows, len(columns), track_u=False, track_v=False)
    return [D[k][k] for k in range(min(nrows, len(columns)))]


def smith_with_row_transforms(polys: PolyRing, nrows: int, columns: Sequence[SparseVec]):
    """Diagonal plus U and U^{-1} (row transforms) of the Smith form over k[X]."""
    A = [[c.get(i, ()) for c in columns] for i in range(nrows)]
    D, U, Ui, _ = _snf_dense(polys, A, nrows, len(columns), track_u=True, track_uinv=True, track_v=False)
    diag = [D[k][k] if k < len(columns) else () for k in range(nrows)]
    return diag, U, Ui


# ---------------------------------------------------------------------------
# solve_linear
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    x: RMatrix
    kernel_basis: tuple[RMatrix, ...]


def lifted_system(ring: RingDescriptor, nrows: int, columns: Sequence[SparseVec]) -> ColumnEchelon:
    """Echelon form of [A | f*I] over k[X]; the first len(columns) coordinates are the unknowns."""
    cols = list(columns)
    if ring.modulus:
        cols += [{i: ring.modulus} for i in range(nrows)]
    return ColumnEchelon(ring.polys, nrows, cols)


def solve_linear(a: RMatrix, b: RMatrix) -> Solution | None:
    """Solve a x = b over the base ring; None means no solution exists."""
    if a.ring != b.ring:
        raise ValidationError("matrices over different rings", "same-ring")
    if a.rows != b.rows:
        raise DimensionMismatch(f"a has {a.rows} rows but b has {b.rows}")
    ring = a.ring
    n = a.cols
    ech = lifted_system(ring, a.rows, [a.sparse_column(j) for j in range(n)])
    xcols = []
    for j in range(b.cols):
        y = ech.solve(b.sparse_column(j))
        if y is None:
            return None
        xcols.append({i: ring.reduce(v) for i, v in y.items() if i < n})
    x = RMatrix.from_sparse_columns(ring, n, xcols)
    kernel = []
    seen = set()
    for v in ech.kernel():
        proj = {i: ring.reduce(e) for i, e in v.items() if i < n}
        proj = {i: e for i, e in proj.items() if e}
        if not proj:
            continue
        key = tuple(sorted(proj.items()))
        if key in seen:
            continue
        seen.add(key)
        kernel.append(RMatrix.from_sparse_columns(ring, n, [proj]))
    return Solution(x, tuple(kernel))
