"""Randomized invariants of Ψ on graded-projective data."""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from dgext.extensions import (GradedSplitting, HomClass, are_equivalent, baer_sum, extension_from_cycle,
                              graded_splitting, is_split, psi, pullback_extension, random_cycle)
from dgext.generators import random_basis_change, random_element
from dgext.homs import HomHomology, HomPiece
from dgext.scenarios import _graded_projective_pair, prop42_instance, theorem35_instance, theorem_a_instance

seeds = st.integers(0, 2 ** 32 - 1)
chars = st.sampled_from([2, 3])


@settings(max_examples=30)
@given(seeds, chars)
def test_theorem35_instances(seed, p):
    r = theorem35_instance(random.Random(seed), p)
    assert r.all_ok, r


@settings(max_examples=20)
@given(seeds, chars)
def test_psi_ignores_the_splitting(seed, p):
    rng = random.Random(seed)
    ring, q, n = _graded_projective_pair(rng, p)
    e = random_basis_change(extension_from_cycle(random_cycle(q, n, rng)), rng)
    s = graded_splitting(e)
    for _ in range(3):
        u = random_element(rng, HomPiece(q, n, 0))
        s2 = GradedSplitting(s.h - u @ e.g, s.k + e.f @ u)
        assert s2.verify(e)
        assert psi(e, s2) == psi(e, s)


@settings(max_examples=20)
@given(seeds, chars)
def test_psi_is_constant_on_equivalence_classes(seed, p):
    rng = random.Random(seed)
    ring, q, n = _graded_projective_pair(rng, p)
    lam = random_cycle(q, n, rng)
    e = extension_from_cycle(lam)
    e2 = random_basis_change(e, rng)
    assert are_equivalent(e, e2)
    assert psi(e2) == psi(e) == HomClass(lam)
    # adding a boundary does not change the class
    b = random_element(rng, HomPiece(q, n, 0)).differential()
    assert are_equivalent(extension_from_cycle(lam + b), e)


@settings(max_examples=15)
@given(seeds, chars)
def test_psi_detects_splitting(seed, p):
    rng = random.Random(seed)
    ring, q, n = _graded_projective_pair(rng, p)
    lam = random_cycle(q, n, rng)
    e = extension_from_cycle(lam)
    assert psi(e).is_zero() == bool(is_split(e)) == HomHomology(q, n, -1).is_zero_class(lam)


@settings(max_examples=15)
@given(seeds, chars)
def test_baer_sum_laws_on_random_cycles(seed, p):
    rng = random.Random(seed)
    ring, q, n = _graded_projective_pair(rng, p)
    l1, l2 = random_cycle(q, n, rng), random_cycle(q, n, rng)
    e1, e2 = extension_from_cycle(l1), extension_from_cycle(l2)
    s = baer_sum(e1, e2)
    s.validate()
    assert are_equivalent(s, baer_sum(e2, e1))
    assert are_equivalent(s, extension_from_cycle(l1 + l2))
    assert is_split(baer_sum(e1, extension_from_cycle(-l1)))


@settings(max_examples=15)
@given(seeds, chars)
def test_pullback_along_endomorphisms(seed, p):
    rng = random.Random(seed)
    ring, q, n = _graded_projective_pair(rng, p)
    lam = random_cycle(q, n, rng)
    e = extension_from_cycle(lam)
    phi = random_cycle(q, q, rng, degree=0)
    pb = pullback_extension(e, phi)
    pb.validate()
    assert psi(pb) == HomClass(lam @ phi)


@settings(max_examples=10)
@given(seeds, chars)
def test_dimension_shift_agrees_with_ext(seed, p):
    assert theorem_a_instance(random.Random(seed), p)


@settings(max_examples=20)
@given(seeds)
def test_truncation_pullback_never_splits_a_nonsplit_class(seed):
    assert prop42_instance(random.Random(seed)) == 0
