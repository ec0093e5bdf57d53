"""extensions: worked examples, split tests, Ψ, Baer sums, pullbacks and truncations."""

import pytest

from dgext.complexes import GradedMap, complex_from_matrices, homology
from dgext.dg import as_module, free_module, koszul_algebra, algebra_module
from dgext.errors import HypothesisViolated, IncompatibleEnds, NotACycle, NotAChainMap, NotGradedSplit, UnknownExample
from dgext.extensions import (Extension, HomClass, are_equivalent, baer_sum, cone_extension, equivalence,
                              extension_from_cycle, graded_splitting, is_split, prop43_scenario, psi,
                              pullback_extension, soft_truncate_module, split_extension,
                              truncation_map_is_injective_check)
from dgext.homs import HomHomology
from dgext.linalg.matrix import RMatrix
from dgext.linalg.ring import polynomial_ring
from dgext.resolutions import ext
from dgext.scenarios import EXAMPLES, ex31_data, ex32_data, ex44_data, verify_example


def one(R, e):
    return RMatrix.from_entries(R, [[e]])


@pytest.fixture
def pair():
    """Q = R in degree 0 and N = R/(X^2) in degree -1 over F3[X]; H_{-1}(Hom(Q, N)) = R/(X^2)."""
    R = polynomial_ring(3)
    q = as_module(complex_from_matrices(R, {0: 1}, {}), name="Q")
    n = as_module(complex_from_matrices(R, {-1: 1}, {}, relations={-1: [["X^2"]]}), name="N")
    return R, q, n


def lam(R, q, n, c):
    return GradedMap(q, n, -1, {0: one(R, c)})


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["3.1", "3.2", "3.7", "4.4", "prop-4.3"])
def test_worked_examples_verify(name):
    rep = verify_example(name)
    assert rep.passed, [c for c in rep.checks if not c.passed]


def test_unknown_example():
    with pytest.raises(UnknownExample):
        verify_example("9.9")
    assert set(EXAMPLES) >= {"3.1", "3.2", "3.7", "4.4"}


def test_nonsplit_extension_with_vanishing_ext(prime):
    # [PAPER] the sequence R̄ --X--> R̄ -> k̄ is exact and non-split although Ext¹(k̄, R̄) = 0
    R, rbar, kbar, e = ex31_data(prime)
    e.validate()
    assert not is_split(e)
    with pytest.raises(NotGradedSplit):
        graded_splitting(e)
    assert ext(kbar, rbar, 1).is_zero()


def test_cone_of_identity_on_periodic_module(prime):
    # [PAPER] Ext^i(M, M) = 0 yet the graded-split cone extension is not split
    R, M, e = ex32_data(prime)
    e.validate()
    s = graded_splitting(e)
    assert s.verify(e)
    assert not is_split(e)
    assert not psi(e).is_zero()
    assert all(ext(M, M, i).is_zero() for i in range(3))


def test_truncation_kills_a_nonsplit_class(prime):
    # [PAPER] τ(M)_(≤0) = 0 while the displayed extension of M by R is non-split
    R, N, M, e = ex44_data(prime)
    e.validate()
    assert not is_split(e)
    tr = soft_truncate_module(M, 0)
    assert tr.module.is_zero()
    rep = truncation_map_is_injective_check(M, N, 0, targets=(e,))
    assert rep.injective and rep.domain_is_zero and rep.surjective is False


# ---------------------------------------------------------------------------
# extensions from cycles, Ψ and splitting
# ---------------------------------------------------------------------------

def test_extension_from_cycle_round_trip(pair):
    R, q, n = pair
    for c in ("0", "1", "X", "1+X", "X^2"):
        e = extension_from_cycle(lam(R, q, n, c))
        e.validate()
        assert psi(e) == HomClass(lam(R, q, n, c))
        assert bool(is_split(e)) == (c in ("0", "X^2"))


def test_split_extension(pair):
    R, q, n = pair
    e = split_extension(n, q)
    sp = is_split(e)
    assert sp and (sp.retraction @ e.f).equals(GradedMap.identity(n))
    assert psi(e).is_zero()


def test_invalid_cycles_are_rejected(pair):
    R, q, n = pair
    with pytest.raises(NotACycle):
        extension_from_cycle(GradedMap(q, n, 0, {}))
    x = as_module(complex_from_matrices(R, {1: 1, 0: 1}, {1: [["X"]]}))
    # a degree -1 map from R in degree 1 to R in degree 0 that is not a cycle
    y = as_module(complex_from_matrices(R, {0: 1, -1: 1}, {0: [["1"]]}))
    with pytest.raises(NotACycle):
        HomClass(GradedMap(x, y, -1, {1: one(R, "1")}))


def test_cone_needs_a_chain_map(r2):
    m = as_module(complex_from_matrices(r2, {1: 1, 0: 1}, {1: [["X"]]}))
    with pytest.raises(NotAChainMap):
        cone_extension(GradedMap(m, m, 0, {0: one(r2, "1")}))


def test_validate_catches_non_exact_sequences(pair):
    R, q, n = pair
    e = extension_from_cycle(lam(R, q, n, "1"))
    bad = Extension(e.n, e.x, e.q, e.f, GradedMap.zero(e.x, e.q, 0))
    assert not bad.is_valid()


# ---------------------------------------------------------------------------
# Baer sum group laws
# ---------------------------------------------------------------------------

def test_baer_sum_is_psi_additive(pair):
    R, q, n = pair
    for a, b in (("1", "X"), ("1", "2"), ("X", "2*X"), ("1+X", "0")):
        s = baer_sum(extension_from_cycle(lam(R, q, n, a)), extension_from_cycle(lam(R, q, n, b)))
        s.validate()
        assert psi(s) == HomClass(lam(R, q, n, a)) + HomClass(lam(R, q, n, b))


def test_baer_sum_group_laws(pair):
    R, q, n = pair
    e = {c: extension_from_cycle(lam(R, q, n, c)) for c in ("1", "X", "1+X", "2")}
    zero = split_extension(n, q)
    assert are_equivalent(baer_sum(e["1"], e["X"]), baer_sum(e["X"], e["1"]))
    assert are_equivalent(baer_sum(baer_sum(e["1"], e["X"]), e["1+X"]),
                          baer_sum(e["1"], baer_sum(e["X"], e["1+X"])))
    assert are_equivalent(baer_sum(e["1"], zero), e["1"])
    assert is_split(baer_sum(e["1"], e["2"]))       # 1 + 2 = 0 in F3
    assert are_equivalent(baer_sum(e["1"], e["1"]), e["2"])
    assert not are_equivalent(e["1"], e["X"])


def test_baer_sum_over_koszul_algebra():
    R = polynomial_ring(3)
    A = koszul_algebra(R, ["X"])
    a = algebra_module(A)
    # Hom_A(ΣA, A)_{-1} ≅ A_0 and H_{-1} = H_0(A) = k
    sa = free_module(A, [1])
    assert HomHomology(sa, a, -1).module.format_invariants() == ["X"]
    e = cone_extension(GradedMap.identity(a))
    assert not is_split(e)
    assert is_split(baer_sum(baer_sum(e, e), e))


def test_equivalence_requires_matching_ends(pair):
    R, q, n = pair
    e = extension_from_cycle(lam(R, q, n, "1"))
    other = split_extension(q, q)
    with pytest.raises(IncompatibleEnds):
        equivalence(e, other)
    with pytest.raises(IncompatibleEnds):
        baer_sum(e, other)
    phi = equivalence(e, e)
    assert phi is not None and phi.is_isomorphism()


# ---------------------------------------------------------------------------
# pullbacks
# ---------------------------------------------------------------------------

def test_pullback_is_precomposition(pair):
    R, q, n = pair
    e = extension_from_cycle(lam(R, q, n, "1"))
    for c in ("1", "X", "2", "0"):
        phi = GradedMap(q, q, 0, {0: one(R, c)})
        p = pullback_extension(e, phi)
        p.validate()
        assert psi(p) == HomClass(lam(R, q, n, "1") @ phi)


def test_pullback_functoriality(pair):
    R, q, n = pair
    e = extension_from_cycle(lam(R, q, n, "1+X"))
    a = GradedMap(q, q, 0, {0: one(R, "X")})
    b = GradedMap(q, q, 0, {0: one(R, "1+X")})
    assert are_equivalent(pullback_extension(e, a @ b), pullback_extension(pullback_extension(e, a), b))
    assert are_equivalent(pullback_extension(e, GradedMap.identity(q)), e)


def test_pullback_target_must_match(pair):
    R, q, n = pair
    e = extension_from_cycle(lam(R, q, n, "1"))
    with pytest.raises(IncompatibleEnds):
        pullback_extension(e, GradedMap.identity(n))


# ---------------------------------------------------------------------------
# truncations
# ---------------------------------------------------------------------------

def test_truncation_check_requires_bounded_target(pair):
    R, q, n = pair
    high = as_module(complex_from_matrices(R, {2: 1}, {}))
    with pytest.raises(HypothesisViolated):
        truncation_map_is_injective_check(q, high, 0)


def test_truncation_pullback_is_injective_on_samples(pair):
    R, q, n = pair
    m = as_module(complex_from_matrices(R, {1: 1, 0: 1}, {1: [["X"]]}))
    rep = truncation_map_is_injective_check(m, n, 0, samples=6, seed=3)
    assert rep.violations == 0 and rep.injective


def test_prop43_scenarios():
    R = polynomial_ring(2)
    K = koszul_algebra(R, ["X"])
    r = prop43_scenario(algebra_module(K))
    assert r.hypothesis_holds and r.confirmed
    assert prop43_scenario(free_module(K, [])).confirmed


def test_prop43_fails_for_a_plus_suspension():
    # C = A ⊕ ΣA has Ext¹(C, C) ⊇ H_{-1}(Hom(ΣA, A)) = H_0(A) ≠ 0, so the hypothesis never holds
    R = polynomial_ring(2)
    K = koszul_algebra(R, ["X"])
    r = prop43_scenario(free_module(K, [0, 1]))
    assert not r.hypothesis_holds
    assert r.ext1 == ["X"]
    assert not homology(free_module(K, [0, 1]).complex).all_zero()
