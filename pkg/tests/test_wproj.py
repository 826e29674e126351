"""Weighted projective completions, regularity at infinity, genus oracles."""

import dataclasses

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from unipic import (
    BoundTooSmall,
    FieldDesc,
    NotANaiveCompletion,
    SkewPoly,
    TrivialTau,
    WeightedCurve,
    cech_h1_dim,
    genus_from_formula,
    hilbert_dim,
    is_regular_at_infinity,
    make_form,
    make_torsor,
    naive_completion,
    residue_from_plane_model,
    rewrite_plane_model,
)

from conftest import F2T, F3T

T = F2T.var("t")
ONE = F2T.one()
ZERO = F2T.zero()


def form2(n, coeffs):
    m = max(coeffs)
    cs = [coeffs.get(i, ZERO) for i in range(m + 1)]
    return make_form(n, SkewPoly(F2T, cs))


CONIC = form2(1, {0: ONE, 1: T})
TOWER = form2(3, {0: ONE, 1: T, 2: T ** 4})


# ---------------------------------------------------------------- completion

def test_completion_balanced_case():
    C = naive_completion(CONIC)
    assert C.weights == (1, 1, 1)
    assert C.degree == 2
    assert C.height == 2
    assert C.a == 1
    assert C.terms == (((0, 2, 0), ONE), ((1, 0, 1), ONE), ((2, 0, 0), T))


def test_completion_deep_twist():
    # n < m puts the weight on y
    g = form2(2, {0: ONE, 3: T})
    C = naive_completion(g)
    assert C.weights == (1, 2, 1)
    assert (C.degree, C.height) == (8, 4)


def test_completion_deep_frobenius():
    # n > m puts the weight on x
    C = naive_completion(TOWER)
    assert C.weights == (2, 1, 1)
    assert (C.degree, C.height) == (8, 4)
    assert C.terms == (((0, 8, 0), ONE), ((1, 0, 6), ONE),
                       ((2, 0, 4), T), ((4, 0, 0), T ** 4))


def test_completion_of_torsor_keeps_translation():
    C = naive_completion(make_torsor(CONIC, T))
    assert ((0, 0, 2), T) in C.terms


def test_completion_requires_twist():
    with pytest.raises(TrivialTau):
        naive_completion(form2(1, {0: ONE}))


def test_homogeneity_enforced():
    C = naive_completion(CONIC)
    bad = C.terms + (((1, 0, 0), ONE),)
    with pytest.raises(ValueError):
        WeightedCurve(C.field, C.weights, bad, C.degree, C.height, C.source)


def test_tampered_curve_rejected():
    C = naive_completion(CONIC)
    fake = dataclasses.replace(
        C, terms=tuple((e, c if c != T else T + ONE) for e, c in C.terms))
    with pytest.raises(NotANaiveCompletion):
        is_regular_at_infinity(fake)


# ---------------------------------------------------------------- regularity

def test_regular_boundary():
    inf = is_regular_at_infinity(naive_completion(CONIC))
    assert inf.is_field
    assert inf.degree == 2
    assert inf.exponent == 1


def test_non_regular_boundary_pth_power_coeff():
    # top coefficient t^2 is a square, the boundary ring has nilpotents
    g = form2(1, {0: ONE, 1: T, 2: T * T})
    inf = is_regular_at_infinity(naive_completion(g))
    assert not inf.is_field
    assert inf.exponent == 0


def test_non_regular_boundary_deep_frobenius():
    # chart y = 1 sees the inverse top coefficient, here a 4th power
    inf = is_regular_at_infinity(naive_completion(TOWER))
    assert not inf.is_field
    assert inf.degree == 4


def test_regular_boundary_char3():
    k3, t3 = F3T, F3T.var("t")
    g = make_form(1, SkewPoly(k3, [k3.one(), t3]))
    inf = is_regular_at_infinity(naive_completion(g))
    assert inf.is_field
    assert inf.degree == 3


# --------------------------------------------------------------------- genus

def test_genus_formula_values():
    assert genus_from_formula(naive_completion(CONIC)) == 0
    assert genus_from_formula(naive_completion(form2(2, {0: ONE, 3: T}))) == 9
    assert genus_from_formula(naive_completion(TOWER)) == 9
    assert genus_from_formula(naive_completion(form2(2, {0: ONE, 1: T}))) == 1


def test_cech_matches_formula_balanced():
    C = naive_completion(CONIC)
    assert cech_h1_dim(C) == (0, True)


def test_cech_matches_formula_deep_twist():
    C = naive_completion(form2(2, {0: ONE, 3: T}))
    assert cech_h1_dim(C) == (9, True)


def test_cech_matches_formula_deep_frobenius():
    C = naive_completion(form2(2, {0: ONE, 1: T}))
    assert cech_h1_dim(C) == (1, True)


def test_cech_ignores_translation():
    # H^1 of the completed torsor agrees with the completed form
    C = naive_completion(make_torsor(CONIC, T))
    assert cech_h1_dim(C) == (0, True)


def test_cech_bound_too_small():
    with pytest.raises(BoundTooSmall):
        cech_h1_dim(naive_completion(CONIC), 1)


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2))
def test_cech_matches_formula_grid(n, m):
    g = form2(n, {0: ONE, m: T})
    C = naive_completion(g)
    dim, stable = cech_h1_dim(C)
    assert stable
    assert dim == genus_from_formula(C)


# ------------------------------------------------------------------- hilbert

def test_hilbert_pinned():
    assert hilbert_dim(2, 1) == 4
    assert hilbert_dim(2, 1, "count") == 4
    assert hilbert_dim(1, 0) == 1


@given(st.integers(1, 4), st.integers(0, 6))
def test_hilbert_formula_equals_count(a, delta):
    assert hilbert_dim(a, delta, "formula") == hilbert_dim(a, delta, "count")


def test_hilbert_validation():
    with pytest.raises(ValueError):
        hilbert_dim(0, 1)
    with pytest.raises(ValueError):
        hilbert_dim(2, 1, "nope")


# ------------------------------------------------------------------ residues

def test_residue_from_good_plane_model():
    pm = rewrite_plane_model(TOWER, T, 1)
    inf = residue_from_plane_model(pm)
    assert inf is not None and inf.is_field
    assert inf.degree == 4
    assert inf.exponent == 2


def test_residue_needs_matching_top_terms():
    pm = rewrite_plane_model(TOWER, ONE, 0)
    assert residue_from_plane_model(pm) is None
