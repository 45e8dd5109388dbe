import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import XYZ, nonzero_polynomials, polynomials, random_ideal_generators, sympy_reduced_basis
from mmlab import (
    GrevLex,
    Lex,
    MayrMeyerInstance,
    RingSpec,
    buchberger,
    divide,
    is_groebner_basis,
    normal_form,
    parse_polynomial,
    reduce_basis,
    s_polynomial,
)
from mmlab.mayr_meyer import build_J, j_generators, reduced_ideals, reduced_ring, membership_identities

XY = RingSpec(("x", "y"))
XY_LEX = XY.with_order(Lex())


def P(text, ring=XY):
    return parse_polynomial(text, ring)


# -- division -------------------------------------------------------------


def test_divide_simple():
    res = divide(P("x^2 + x*y"), [P("x")])
    assert res.quotients == (P("x + y"),) and res.remainder.is_zero


@pytest.mark.parametrize("d", [1, 2])
def test_divide_identity_by_basis(d):
    inst = MayrMeyerInstance(d)
    gb = build_J(inst).groebner_basis()
    target = membership_identities(inst)["s*(c1-c4)"]
    res = divide(target, gb.elements, gb.order)
    assert res.remainder.is_zero
    assert res.reconstruct(gb.elements) == target


@pytest.mark.parametrize("d", [1, 2])
def test_divide_witness_leaves_remainder(d):
    inst = MayrMeyerInstance(d)
    gb = build_J(inst).groebner_basis()
    x = inst.x
    w = x["c4"] * (x["s"] - x["f"] * x["b3"] ** d)
    assert not divide(w, gb.elements, gb.order).remainder.is_zero


def test_divide_rejects_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        divide(P("x"), [XY.zero])


def test_divide_first_divisor_wins():
    res = divide(P("x*y"), [P("x"), P("y")])
    assert res.quotients == (P("y"), XY.zero)


@given(polynomials(XYZ, max_deg=4, max_terms=5), st.lists(nonzero_polynomials(XYZ, max_deg=2), min_size=1, max_size=3))
def test_division_invariants(f, divisors):
    order = XYZ.order
    key = order.key(XYZ)
    res = divide(f, divisors)
    assert res.reconstruct(divisors) == f
    lms = [g.leading_monomial().exponents for g in divisors]
    for e, _ in res.remainder.items():
        assert not any(all(a <= b for a, b in zip(lm, e)) for lm in lms)
    if not f.is_zero:
        top = key(f.leading_monomial().exponents)
        for q, g in zip(res.quotients, divisors):
            if not q.is_zero:
                assert key((q * g).leading_monomial().exponents) <= top


# -- S-polynomials --------------------------------------------------------


def test_s_polynomial_self():
    f = P("x^2 + 3*y")
    assert s_polynomial(f, f).is_zero


def test_s_polynomial_monomials():
    assert s_polynomial(P("x^2", XY_LEX), P("x*y", XY_LEX), Lex()).is_zero


@pytest.mark.parametrize("d", [1, 2, 3])
def test_s_polynomial_cancels_leading_terms(d):
    inst = MayrMeyerInstance(d)
    x = inst.x
    f = x["s"] - x["f"] * x["b1"] ** d
    g = x["c1"] - x["c2"] * x["b1"] ** d
    order = GrevLex()
    key = order.key(inst.ring)
    lf, lg = f.leading_monomial(order).exponents, g.leading_monomial(order).exponents
    lcm = tuple(map(max, lf, lg))
    s = s_polynomial(f, g, order)
    # direct expansion oracle
    mf = inst.ring.monomial(tuple(a - b for a, b in zip(lcm, lf))).as_polynomial()
    mg = inst.ring.monomial(tuple(a - b for a, b in zip(lcm, lg))).as_polynomial()
    cf, cg = Fraction(1, f.leading_coefficient(order)), Fraction(1, g.leading_coefficient(order))
    assert s == mf * f * cf - mg * g * cg
    assert s.is_zero or key(s.leading_monomial(order).exponents) < key(lcm)


def test_s_polynomial_rejects_zero():
    with pytest.raises(ValueError):
        s_polynomial(P("x"), XY.zero)


# -- Buchberger -----------------------------------------------------------


def test_single_generator():
    assert buchberger([P("x")]).elements == (P("x"),)


def test_zero_and_unit_ideals():
    assert buchberger([XY.zero], ring=XY).is_zero
    assert buchberger([], ring=XY).is_zero
    gb = buchberger([P("x*y - 1"), P("x")])
    assert gb.is_unit and gb.elements == (XY.one,)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_local_ideal_leading_terms(d):
    ids = reduced_ideals(d)
    gb = ids["L"].groebner_basis(Lex())
    R = reduced_ring()
    got = sorted(gb.leading_monomials())
    want = buchberger(ids["leading"].gens, Lex()).leading_monomials()
    assert got == sorted(want)
    names = {str(R.monomial(e)) for e in got}
    assert names == {"s^2", "f^2", "s*c4", "s*c3", "c3^2", "c4^2", "f*c4"}


def _shuffled(gens, seed):
    gens = list(gens)
    random.Random(seed).shuffle(gens)
    return gens


@pytest.mark.parametrize("profile", ["full", "short"])
def test_j11_matches_sympy(profile):
    inst = MayrMeyerInstance(1, shortened=profile == "short")
    gens = j_generators(inst)
    ours = build_J(inst).groebner_basis().elements
    oracle = sympy_reduced_basis(gens, inst.ring)
    assert set(ours) == {g.monic() for g in oracle}


@pytest.mark.parametrize("d", [1, 2])
def test_j_basis_independent_of_permutation_and_strategy(d):
    gens = j_generators(MayrMeyerInstance(d))
    ref = buchberger(gens)
    for seed in range(3):
        assert buchberger(_shuffled(gens, seed)).elements == ref.elements
    for strategy in ("fifo", "lifo"):
        assert buchberger(gens, strategy=strategy).elements == ref.elements


@pytest.mark.parametrize("d", [1, 2])
def test_j_basis_criterion_and_reduced(d):
    gb = build_J(MayrMeyerInstance(d)).groebner_basis()
    assert gb.satisfies_criterion()
    assert gb.is_reduced()


@pytest.mark.parametrize("d", [1, 2])
def test_j_transformation_sound(d):
    gb = buchberger(j_generators(MayrMeyerInstance(d)), track=True)
    assert gb.check_transformation()


@pytest.mark.parametrize("seed", range(12))
def test_random_ideal_matches_sympy(seed):
    gens = random_ideal_generators(seed)
    for order, name in ((GrevLex(), "grevlex"), (Lex(), "lex")):
        ours = buchberger(gens, order).elements
        oracle = sympy_reduced_basis(gens, XYZ, name)
        assert set(ours) == {g.monic(order) for g in oracle}


@settings(max_examples=25)
@given(st.lists(nonzero_polynomials(XYZ, max_deg=2, max_terms=3), min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_random_basis_properties(gens, rnd):
    gb = buchberger(gens, track=True)
    assert gb.satisfies_criterion() and gb.is_reduced()
    assert gb.check_transformation()
    assert all(gb.contains(g) for g in gens)
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert buchberger(shuffled).elements == gb.elements
    assert buchberger(gens, strategy="fifo").elements == gb.elements


@settings(max_examples=25)
@given(
    st.lists(nonzero_polynomials(XYZ, max_deg=2, max_terms=3), min_size=1, max_size=3),
    polynomials(XYZ),
    polynomials(XYZ),
    st.integers(-3, 3),
    st.integers(-3, 3),
)
def test_normal_form_linear(gens, f, g, a, b):
    gb = buchberger(gens)
    lhs = normal_form(f * a + g * b, gb)
    assert lhs == normal_form(gb.normal_form(f) * a + gb.normal_form(g) * b, gb)
    assert gb.contains(lhs - gb.normal_form(f) * a - gb.normal_form(g) * b)


# -- reduce_basis / normal forms -----------------------------------------


def test_reduce_basis_examples():
    gb = buchberger([P("x")])
    raw = type(gb)(XY, gb.order, (P("x"), P("x^2")), reduced=False)
    assert reduce_basis(raw).elements == (P("x"),)
    raw = type(gb)(XY, gb.order, (P("x + y"), P("y")), reduced=False)
    assert set(reduce_basis(raw).elements) == {P("x"), P("y")}


def test_reduce_basis_idempotent():
    gb = build_J(MayrMeyerInstance(2)).groebner_basis()
    assert reduce_basis(gb).elements == gb.elements


def test_normal_form_of_zero():
    gb = build_J(MayrMeyerInstance(1)).groebner_basis()
    assert normal_form(gb.ring.zero, gb).is_zero


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("name", ["s*f*c2*(b1^d-b2^d)", "s*c2^2*(b1^d-b2^d)"])
def test_membership_identities(d, name):
    inst = MayrMeyerInstance(d)
    gb = build_J(inst).groebner_basis()
    assert normal_form(membership_identities(inst)[name], gb).is_zero


def test_is_groebner_basis():
    assert is_groebner_basis([P("x"), P("y")])
    assert not is_groebner_basis([P("x^2 - y"), P("x*y - 1")])
