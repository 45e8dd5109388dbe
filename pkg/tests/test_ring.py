import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import F7_XYZ, XYZ, XYZW, exponents, nonzero_polynomials, polynomials
from mmlab import (
    QQ,
    Block,
    FieldSpec,
    GrevLex,
    Lex,
    Monomial,
    MayrMeyerInstance,
    Polynomial,
    RingMismatchError,
    RingSpec,
    compare_monomials,
    extend_ring,
    multidegree,
    parse_polynomial,
)
from mmlab.mayr_meyer import BIHOMOGENEITY_BLOCKS, FULL_VARIABLES, j_generators

MM = RingSpec(FULL_VARIABLES)


def P(text, ring=MM):
    return parse_polynomial(text, ring)


def mono(ring, text):
    return P(text, ring).leading_monomial()


# -- fields ---------------------------------------------------------------


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        FieldSpec.prime(6)
    assert FieldSpec.prime(7).kind == "PrimeField"
    assert QQ.kind == "Rationals"


def test_rationals_are_reduced():
    assert QQ(Fraction(4, 6)) == Fraction(2, 3)
    assert QQ(Fraction(4, 2)) == 2 and isinstance(QQ(Fraction(4, 2)), int)
    assert QQ("-3/9") == Fraction(-1, 3)


def test_prime_field_inverse():
    F = FieldSpec.prime(7)
    assert all(F.normalize(a * F.inv(a)) == 1 for a in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


# -- monomial orders ------------------------------------------------------


def test_lex_s_squared_beats_sf():
    ring = MM.with_order(Lex())
    assert compare_monomials(mono(ring, "s^2"), mono(ring, "s*f"), Lex()) == 1


def test_reflexive():
    m = mono(MM, "s*c2*b1^3")
    for order in (Lex(), GrevLex(), Block(("s",))):
        assert compare_monomials(m, m, order) == 0


def _grevlex_oracle(a, b):
    # degree first; ties broken by the last non-zero entry of a - b being negative
    if sum(a) != sum(b):
        return 1 if sum(a) > sum(b) else -1
    diff = [x - y for x, y in zip(a, b)]
    for v in reversed(diff):
        if v:
            return 1 if v < 0 else -1
    return 0


def test_grevlex_xz_below_y_squared():
    assert compare_monomials(mono(XYZ, "x*z"), mono(XYZ, "y^2"), GrevLex()) == -1


def test_grevlex_matches_definition_in_degree_two():
    monos = [e for e in itertools.product(range(3), repeat=3) if sum(e) == 2]
    for a, b in itertools.product(monos, repeat=2):
        got = compare_monomials(Monomial(a, XYZ), Monomial(b, XYZ), GrevLex())
        assert got == _grevlex_oracle(a, b), (a, b)


def test_compare_ring_mismatch():
    with pytest.raises(RingMismatchError):
        compare_monomials(mono(XYZ, "x"), mono(XYZW, "x"))


def test_block_order_eliminates():
    order = Block(("x", "y"))
    key = order.key(XYZW)
    with_xy = [e for e in itertools.product(range(3), repeat=4) if e[0] or e[1]]
    without = [e for e in itertools.product(range(4), repeat=4) if not (e[0] or e[1])]
    assert min(map(key, with_xy)) > max(map(key, without))


@pytest.mark.parametrize("order", [Lex(), GrevLex(), Block(("y",)), Block(("x", "w"), Lex())])
@given(a=exponents(4, 4), b=exponents(4, 4), c=exponents(4, 3))
def test_order_laws(order, a, b, c):
    ma, mb, mc = (Monomial(tuple(e), XYZW) for e in (a, b, c))
    ab = compare_monomials(ma, mb, order)
    assert ab in (-1, 0, 1)
    assert (ab == 0) == (ma == mb)
    assert compare_monomials(mb, ma, order) == -ab
    if ab < 0:
        assert compare_monomials(ma * mc, mb * mc, order) < 0
    one = Monomial((0, 0, 0, 0), XYZW)
    assert compare_monomials(one, ma, order) <= 0


# -- arithmetic -----------------------------------------------------------


def test_additive_identity():
    f = P("s*c2 - f*c1*b1")
    assert f + MM.zero == f


def test_generator_expansion():
    got = P("b2 - b3") * P("c2") * P("f")
    assert got == P("f*c2*b2") - P("f*c2*b3")
    assert got == j_generators(MayrMeyerInstance(1))[-1]


def test_difference_of_squares():
    assert P("b1 - b2") * P("b1 + b2") == P("b1^2 - b2^2")


def test_arithmetic_ring_mismatch():
    with pytest.raises(RingMismatchError):
        P("x", XYZ) + P("x", XYZW)


def test_zero_has_no_leading_term():
    with pytest.raises(ValueError):
        MM.zero.leading_monomial()
    assert MM.zero.total_degree() == -1


def test_terms_sorted_descending():
    f = P("b1 + s^2*c1 + f*c3 + 1")
    key = MM.order.key(MM)
    ks = [key(m.exponents) for _, m in f.terms()]
    assert ks == sorted(ks, reverse=True)


@given(polynomials(XYZ), polynomials(XYZ), polynomials(XYZ))
def test_ring_laws(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == XYZ.zero
    assert Polynomial(XYZ, dict(f.items())) == f


@given(polynomials(F7_XYZ), polynomials(F7_XYZ))
def test_ring_laws_mod_p(f, g):
    assert (f + g) * (f - g) == f * f - g * g
    assert all(0 < c < 7 for _, c in (f * g).items())


@given(polynomials(XYZ), polynomials(XYZ), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_evaluation_is_a_homomorphism(f, g, pt):
    assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
    assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)


@given(polynomials(F7_XYZ), polynomials(F7_XYZ), st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_evaluation_mod_p(f, g, pt):
    assert (f * g).evaluate(pt) == (f.evaluate(pt) * g.evaluate(pt)) % 7


# -- multidegree ----------------------------------------------------------


def test_multidegree_examples():
    assert multidegree(P("s*(c4 - c1)"), BIHOMOGENEITY_BLOCKS) == (1, 1)
    assert multidegree(P("s + c1"), BIHOMOGENEITY_BLOCKS) is None


@pytest.mark.parametrize("d", [1, 2, 3])
def test_j_generators_bihomogeneous(d):
    inst = MayrMeyerInstance(d)
    gens = j_generators(inst)
    assert [multidegree(g, BIHOMOGENEITY_BLOCKS) for g in gens[2:]] == [(1, 1)] * 9
    assert all(multidegree(g, BIHOMOGENEITY_BLOCKS) is None for g in gens[:2])


def test_multidegree_unknown_variable():
    with pytest.raises(ValueError):
        multidegree(P("s"), (("s", "q"),))


bihomog = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), st.integers(1, 3), min_size=1, max_size=3
)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), bihomog, bihomog)
def test_multidegree_additive(a1, a2, b1, b2, f_tail, g_tail):
    # x,y form one block and z,w the other; build bihomogeneous f and g by construction
    def make(a, b, tail):
        terms = {}
        for (i, j, k, l), c in tail.items():
            i = min(i, a)
            k = min(k, b)
            terms[(i, a - i, k, b - k)] = c
        return Polynomial(XYZW, terms)

    blocks = (("x", "y"), ("z", "w"))
    f, g = make(a1, b1, f_tail), make(a2, b2, g_tail)
    assert multidegree(f * g, blocks) == tuple(u + v for u, v in zip(multidegree(f, blocks), multidegree(g, blocks)))


# -- ring extension -------------------------------------------------------


def test_extend_embeds_unchanged():
    big, embed = extend_ring(MM, ["t"], "front")
    assert big.nvars == 13 and big.variables[0] == "t"
    sc2 = P("s*c2")
    e = embed(sc2)
    assert e.ring == big and str(e) == "s*c2"
    assert e.embed(MM) == sc2


def test_extend_rabinowitsch_shape():
    big, embed = extend_ring(XYZ, ["y0"], "back")
    y = big.var("y0")
    g = 1 - y * embed(P("x*z", XYZ))
    assert g.total_degree() == 3 and g.coefficient((0, 0, 0, 0)) == 1


def test_extend_name_collision():
    with pytest.raises(ValueError):
        extend_ring(MM, ["s"])


def test_restrict_rejects_new_variable():
    big, embed = extend_ring(XYZ, ["t"])
    with pytest.raises(ValueError):
        (big.var("t") * embed(P("x", XYZ))).embed(XYZ)


@given(nonzero_polynomials(XYZ))
def test_extend_round_trip(f):
    big, embed = extend_ring(XYZ, ["t"], "front")
    assert embed(f).embed(XYZ) == f
