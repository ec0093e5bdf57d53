"""complexes: validation, homology, graded maps, suspension, cones, truncation, contractions."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgext.complexes import (Complex, GradedMap, complex_from_matrices, cone, contraction, homology, soft_truncate,
                             suspend, unroll)
from dgext.errors import DimensionMismatch, NotAChainMap, ValidationError
from dgext.dg import as_module
from dgext.generators import InstanceConfig, conjugate_module, random_complex, random_invertible
from dgext.homs import HomPiece
from dgext.linalg.matrix import RMatrix
from dgext.linalg.modules import FPModule
from dgext.linalg.ring import polynomial_ring, quotient_ring

from oracles import FiniteRing, module_order, submodule_size


def rbar(R):
    return complex_from_matrices(R, {1: 1, 0: 1}, {1: [["1"]]})


def kbar(R):
    return complex_from_matrices(R, {1: 1, 0: 1}, {1: [["1"]]}, relations={0: [["X"]], 1: [["X"]]})


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_square_zero_is_enforced(r2):
    with pytest.raises(ValidationError) as exc:
        complex_from_matrices(r2, {2: 1, 1: 1, 0: 1}, {2: [["1"]], 1: [["X"]]})
    assert exc.value.invariant == "square-zero"


def test_ill_defined_differential_is_rejected(r2):
    # k -> R sending the generator to 1 does not respect X·e = 0
    with pytest.raises(ValidationError) as exc:
        complex_from_matrices(r2, {1: 1, 0: 1}, {1: [["1"]]}, relations={1: [["X"]]})
    assert exc.value.invariant == "well-defined"


def test_differential_shape_is_checked(r2):
    with pytest.raises(DimensionMismatch):
        complex_from_matrices(r2, {1: 1, 0: 2}, {1: [["1", "1"]]})


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------

def test_paper_complexes_are_exact():
    R = polynomial_ring(2)
    assert homology(rbar(R)).all_zero()          # [PAPER] R --1--> R is exact
    assert homology(kbar(R)).all_zero()
    S = quotient_ring(2, "X^2")
    m = complex_from_matrices(S, {0: 1}, {0: [["X"]]}, period=1)
    h = homology(m)
    assert h.all_zero() and h.inf == math.inf and h.sup == -math.inf   # [PAPER] ker X = im X


def test_homology_of_koszul_complex_on_x():
    # [TRIVIAL] R --X--> R has H_0 = k, H_1 = 0
    R = polynomial_ring(3)
    h = homology(complex_from_matrices(R, {1: 1, 0: 1}, {1: [["X"]]}))
    assert h.invariants() == {0: ["X"], 1: []}
    assert (h.inf, h.sup) == (0, 0)


def test_nonzero_periodic_homology_is_unbounded():
    S = quotient_ring(2, "X^2")
    h = homology(complex_from_matrices(S, {0: 1}, {0: [["0"]]}, period=1))
    assert (h.inf, h.sup) == (-math.inf, math.inf)


def _brute_homology_order(FR, c, i):
    """|ker ∂_i| / |im ∂_{i+1}| for a complex with free pieces over a finite ring."""
    n = c.piece(i).ngens
    if n == 0:
        return 1
    d = c.diff(i)
    ker = [v for v in FR.vectors(n) if not any(FR.matvec(d.data, v))] if d.rows else list(FR.vectors(n))
    up = c.diff(i + 1)
    im = submodule_size(FR, [tuple(up.data[r][j] for r in range(n)) for j in range(up.cols)], n)
    assert len(ker) % im == 0
    return len(ker) // im


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_homology_order_matches_enumeration(seed):
    """[DERIVED] over F2[X]/(X^2) every finite module's order is determined by counting."""
    R = quotient_ring(2, "X^2")
    FR = FiniteRing(2, (0, 0, 1))
    c = random_complex(random.Random(seed), R, InstanceConfig(max_rank=2, span=3))
    h = homology(c)
    for i in range(c.lo, c.hi + 1):
        assert module_order(2, h.modules[i].invariants()) == _brute_homology_order(FR, c, i)


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3]))
def test_homology_is_invariant_under_basis_change(seed, p):
    rng = random.Random(seed)
    R = polynomial_ring(p)
    c = random_complex(rng, R, InstanceConfig(max_rank=3, span=4, torsion=True))
    mats = {j: random_invertible(rng, R, c.piece(j).ngens) for j in c.degrees()}
    c2 = conjugate_module(as_module(c), mats).complex
    c2.validate()
    assert homology(c2).invariants() == homology(c).invariants()


# ---------------------------------------------------------------------------
# graded maps and suspension
# ---------------------------------------------------------------------------

@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.integers(-2, 2))
def test_hom_differential_squares_to_zero(seed, degree):
    rng = random.Random(seed)
    R = polynomial_ring(2)
    a = random_complex(rng, R, InstanceConfig(max_rank=2, span=3))
    b = random_complex(rng, R, InstanceConfig(max_rank=2, span=3))
    piece = HomPiece(a, b, degree, a_linear=False)
    if not piece.gens:
        return
    f = piece.combine([(rng.randrange(2),) if rng.random() < 0.7 else () for _ in piece.gens])
    assert f.differential().differential().is_zero()


def test_differential_sign_convention(r2):
    # for f of degree 1 between R̄'s, D(f) = ∂f + f∂
    R = polynomial_ring(3)
    c = complex_from_matrices(R, {1: 1, 0: 1}, {1: [["X"]]})
    s = GradedMap(c, c, 1, {0: RMatrix.from_entries(R, [["1"]])})
    d = s.differential()
    assert d.component(0).to_strings() == [["X"]]       # ∂_1 s_0
    assert d.component(1).to_strings() == [["X"]]       # s_0 ∂_1


def test_suspension_shifts_and_signs():
    R = polynomial_ring(3)
    c = complex_from_matrices(R, {1: 1, 0: 1}, {1: [["X"]]})
    s = suspend(c, 1)
    assert s.degrees() == [1, 2]
    assert s.diff(2).to_strings() == [["2*X"]]
    assert homology(s).invariants() == {1: ["X"], 2: []}
    assert suspend(suspend(c, 1), -1).diff(1) == c.diff(1)


def test_graded_map_composition_and_identity(r2):
    c = rbar(r2)
    one = GradedMap.identity(c)
    x = GradedMap(c, c, 0, {0: RMatrix.from_entries(r2, [["X"]]), 1: RMatrix.from_entries(r2, [["X"]])})
    assert (one @ x).equals(x) and (x @ one).equals(x)
    assert (x - x).is_zero()
    assert x.is_cycle()


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

def test_cone_of_identity_is_acyclic_and_contractible():
    R = polynomial_ring(2)
    c = complex_from_matrices(R, {1: 1, 0: 1}, {1: [["X"]]})
    C, inc, proj = cone(GradedMap.identity(c))
    assert homology(C).all_zero()
    assert inc.is_cycle() and proj.is_cycle()
    s = contraction(C)
    assert s is not None
    assert (s.differential()).equals(GradedMap.identity(C))


def test_cone_of_zero_map_is_a_direct_sum():
    R = polynomial_ring(3)
    c = complex_from_matrices(R, {1: 1, 0: 1}, {1: [["X"]]})
    C, _, _ = cone(GradedMap.zero(c, c))
    assert homology(C).invariants() == {0: ["X"], 1: ["X"], 2: []}


def test_cone_needs_a_chain_map(r2):
    c = rbar(r2)
    with pytest.raises(NotAChainMap):
        cone(GradedMap(c, c, 0, {0: RMatrix.from_entries(r2, [["1"]])}))


# ---------------------------------------------------------------------------
# truncation and contractions
# ---------------------------------------------------------------------------

@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.integers(-2, 3))
def test_soft_truncation_keeps_low_homology(seed, n):
    R = polynomial_ring(2)
    c = random_complex(random.Random(seed), R, InstanceConfig(max_rank=2, span=4, torsion=True))
    t = soft_truncate(c, n)
    assert t.rho.is_cycle()
    h, ht = homology(c), homology(t.complex)
    for i, m in h.modules.items():
        got = ht.modules.get(i)
        if i <= n:
            assert (got.invariants() if got is not None else ()) == m.invariants()
        else:
            assert got is None or got.is_zero()
    assert t.quasi_isomorphism == (h.sup <= n)


def test_truncation_of_paper_module_vanishes():
    # [PAPER] τ(R --π--> k)_(≤0) = 0
    R = polynomial_ring(2)
    m = complex_from_matrices(R, {1: 1, 0: 1}, {1: [["1"]]}, relations={0: [["X"]]})
    assert soft_truncate(m, 0).complex.is_zero()


def test_contraction_of_exact_periodic_complex_fails():
    # [PAPER] the periodic X-complex over k[X]/(X^2) is exact but not contractible
    S = quotient_ring(2, "X^2")
    assert contraction(complex_from_matrices(S, {0: 1}, {0: [["X"]]}, period=1)) is None


def test_contraction_of_rbar(r2):
    s = contraction(rbar(r2))
    assert s is not None and s.differential().equals(GradedMap.identity(rbar(r2)))
    assert contraction(kbar(r2)) is not None
    assert contraction(complex_from_matrices(r2, {0: 1}, {})) is None


def test_unroll_periodic():
    S = quotient_ring(2, "X^2")
    m = complex_from_matrices(S, {0: 1}, {0: [["X"]]}, period=1)
    w = unroll(m, -1, 2)
    assert w.degrees() == [-1, 0, 1, 2]
    assert homology(w).invariants()[0] == []
    assert homology(w).modules[-1].format_invariants() == ["X"]    # window edge


def test_zero_pieces_are_dropped(r2):
    c = Complex(r2, {0: FPModule.free(r2, 1), 1: FPModule.zero(r2)}, {})
    assert c.degrees() == [0]
