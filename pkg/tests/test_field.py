"""Exact rational function field arithmetic, p-power tests and root towers."""

import hypothesis.strategies as st
import pytest
import sympy
from hypothesis import given, settings

from unipic import (
    BasisTooLarge,
    DivisionByZero,
    FieldDesc,
    FieldMismatch,
    LevelMismatch,
    MPoly,
    RatFunc,
    UnknownVariable,
    ZeroInput,
    basis_cap,
    compositum_degree,
    partial_derivative,
    pn_power_test,
    poly_gcd,
    power_level,
    pth_root,
    rf_arith,
    root_field_degree,
    subfield_membership,
    tower_field,
    tower_root,
)

from conftest import F2T, F2TU, F3T, mpoly_strategy, ratfunc_strategy


# ---------------------------------------------------------------- arithmetic

def test_basic_arithmetic_char2():
    t = F2T.var("t")
    one = F2T.one()
    assert t + t == F2T.zero()
    assert (t + one) * (t + one) == t * t + one
    assert (t / (t + one)) * ((t + one) / t) == one
    assert str(t * t + one) == "t^2 + 1"


def test_basic_arithmetic_char3():
    t = F3T.var("t")
    one = F3T.one()
    assert t + t + t == F3T.zero()
    assert (t + one) ** 3 == t ** 3 + one
    assert -(t + one) == F3T.const(2) * (t + one)


def test_constants_and_vars():
    assert F2T.const(5) == F2T.one()
    assert F3T.const(3) == F3T.zero()
    with pytest.raises(UnknownVariable):
        F2T.var("z")


def test_division_by_zero():
    t = F2T.var("t")
    with pytest.raises(DivisionByZero):
        t / F2T.zero()
    with pytest.raises(DivisionByZero):
        F2T.zero().inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        F2T.var("t") + F3T.var("t")


def test_canonical_form_reduces_common_factor():
    t, u = F2TU.var("t"), F2TU.var("u")
    f = (t * u + u) / (u * u)
    g = (t + F2TU.one()) / u
    assert f == g
    assert f.den == g.den


@given(ratfunc_strategy(F3T), ratfunc_strategy(F3T), ratfunc_strategy(F3T))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert a - a == F3T.zero()


@given(ratfunc_strategy(F2T), ratfunc_strategy(F2T, nonzero=True))
def test_division_round_trip(a, b):
    assert (a / b) * b == a


@given(ratfunc_strategy(F3T))
def test_scaling_num_and_den_is_invisible(a):
    # multiplying numerator and denominator by the same unit changes nothing
    assert RatFunc(a.num.scale(2), a.den.scale(2)) == a


@given(ratfunc_strategy(F2T), ratfunc_strategy(F2T))
def test_frobenius_is_additive_and_multiplicative(a, b):
    assert (a + b).frobenius(1) == a.frobenius(1) + b.frobenius(1)
    assert (a * b).frobenius(1) == a.frobenius(1) * b.frobenius(1)
    assert a.frobenius(1) == a * a


def test_rf_arith_dispatch():
    t = F2T.var("t")
    one = F2T.one()
    assert rf_arith("add", t, one) == t + one
    assert rf_arith("mul", t, t) == t * t
    assert rf_arith("inv", t) == one / t
    with pytest.raises(ValueError):
        rf_arith("pow", t, one)


# ----------------------------------------------------------------------- gcd

def _to_sympy(f):
    gens = sympy.symbols(f.field.vars)
    expr = sympy.Integer(0)
    for exps, c in f.terms.items():
        mono = sympy.Integer(c)
        for g, e in zip(gens, exps):
            mono *= g ** e
        expr += mono
    return sympy.Poly(expr, *gens, modulus=f.field.p)


def test_gcd_pinned_examples():
    t = MPoly(F2T, {(1,): 1})
    one = MPoly(F2T, {(0,): 1})
    f = (t + one) * (t * t + t + one)
    g = (t + one) * t
    assert poly_gcd(f, g) == t + one

    t2, u2 = MPoly(F2TU, {(1, 0): 1}), MPoly(F2TU, {(0, 1): 1})
    assert poly_gcd((t2 + u2) * t2, (t2 + u2) * u2) == t2 + u2


@settings(max_examples=60)
@given(mpoly_strategy(F3T, nonzero=True), mpoly_strategy(F3T, nonzero=True))
def test_gcd_matches_sympy_univariate(f, g):
    ours = _to_sympy(poly_gcd(f, g))
    theirs = _to_sympy(f).gcd(_to_sympy(g))
    assert ours.monic() == theirs.monic()


@settings(max_examples=40)
@given(mpoly_strategy(F2TU, max_deg=2, nonzero=True),
       mpoly_strategy(F2TU, max_deg=2, nonzero=True))
def test_gcd_matches_sympy_bivariate(f, g):
    ours = _to_sympy(poly_gcd(f, g))
    theirs = _to_sympy(f).gcd(_to_sympy(g))
    assert ours.monic() == theirs.monic()


@given(mpoly_strategy(F2T, nonzero=True), mpoly_strategy(F2T, nonzero=True))
def test_gcd_divides_both(f, g):
    d = RatFunc.from_poly(poly_gcd(f, g))
    assert (RatFunc.from_poly(f) / d).is_polynomial()
    assert (RatFunc.from_poly(g) / d).is_polynomial()


# ---------------------------------------------------------- p-th power tests

def test_pth_root_examples():
    t = F2T.var("t")
    assert (t * t).pth_root() == t
    assert t.pth_root() is None
    assert pth_root(t * t / (t * t + F2T.one())) == t / (t + F2T.one())

    s = F3T.var("t")
    assert (s ** 3).pth_root() == s
    assert (s + F3T.one()).pth_root() is None


def test_pn_power_test_examples():
    t = F2T.var("t")
    assert pn_power_test(t ** 4, 2) == t
    assert pn_power_test(t ** 4, 3) is None
    assert pn_power_test(F2T.one(), 5) == F2T.one()

    s = F3T.var("t")
    assert pn_power_test(s ** 9, 2) == s
    assert pn_power_test(s ** 3, 2) is None


@given(ratfunc_strategy(F2T, nonzero=True), st.integers(1, 3))
def test_pn_power_round_trip(f, n):
    assert pn_power_test(f.frobenius(n), n) == f


def test_power_level_examples():
    t = F2T.var("t")
    assert power_level(t, 3) == 0
    assert power_level(t ** 4, 3) == 2
    assert power_level(F2T.one(), 5) == 5
    assert root_field_degree(t, 3) == 8
    assert root_field_degree(t ** 4, 3) == 2
    assert root_field_degree(F2T.const(1), 4) == 1
    with pytest.raises(ZeroInput):
        power_level(F2T.zero(), 2)


@given(ratfunc_strategy(F3T, nonzero=True), st.integers(0, 2), st.integers(0, 2))
def test_power_level_shifts_under_frobenius(f, j, extra):
    n = j + extra
    assert power_level(f.frobenius(j), n) >= j
    assert root_field_degree(f.frobenius(j), n) <= F3T.p ** extra


def test_partial_derivative():
    t, u = F2TU.var("t"), F2TU.var("u")
    assert partial_derivative(t * t * u, "t") == F2TU.zero()
    assert partial_derivative(t * u, "u") == t
    assert partial_derivative(F3T.var("t") ** 3 + F3T.var("t"), "t") == F3T.one()


# ----------------------------------------------------------- towers / degrees

def test_compositum_degree_single_generator():
    t = F2T.var("t")
    assert compositum_degree([(t, 1)]) == 2
    assert compositum_degree([(t, 2)]) == 4
    assert compositum_degree([(t * t, 1)]) == 1
    assert compositum_degree([(F3T.var("t"), 1)]) == 3


def test_compositum_degree_joins():
    t, u = F2TU.var("t"), F2TU.var("u")
    assert compositum_degree([(t, 1), (u, 1)]) == 4
    assert compositum_degree([(t, 1), (t, 2)]) == 4
    assert compositum_degree([(t * u, 1), (t, 1)]) == 4
    assert compositum_degree([(t * u, 1), (t, 1), (u, 1)]) == 4


def test_tower_field_names():
    kk = tower_field(F2T, 2)
    assert kk.vars == ("t#2",)
    assert kk.p == 2


def test_subfield_membership():
    t = F2T.var("t")
    half = tower_root(t, 1, 2)      # t^(1/2) inside the level-2 tower
    quarter = tower_root(t, 2, 2)   # t^(1/4)
    assert subfield_membership(half, [quarter])
    assert not subfield_membership(quarter, [half])

    tu, uu = F2TU.var("t"), F2TU.var("u")
    rt = tower_root(tu, 1, 1)
    ru = tower_root(uu, 1, 1)
    rtu = tower_root(tu * uu, 1, 1)
    assert subfield_membership(rtu, [rt, ru])
    assert not subfield_membership(ru, [rt])


def test_level_mismatch():
    t = F2T.var("t")
    with pytest.raises(LevelMismatch):
        subfield_membership(tower_root(t, 1, 1), [tower_root(t, 1, 2)])


def test_basis_cap_env(monkeypatch):
    monkeypatch.delenv("UNIPIC_BASIS_CAP", raising=False)
    assert basis_cap() == 4096
    monkeypatch.setenv("UNIPIC_BASIS_CAP", "64")
    assert basis_cap() == 64


def test_basis_cap_enforced():
    t, u = F2TU.var("t"), F2TU.var("u")
    with pytest.raises(BasisTooLarge):
        compositum_degree([(t, 1), (u, 1)], cap=2)
