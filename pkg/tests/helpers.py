"""Shared strategies, samplers and the sympy oracle bridge."""
import random

import sympy
from hypothesis import strategies as st

from mmlab import FieldSpec, Polynomial, RingSpec, parse_polynomial
from mmlab.parse import render_polynomial

XYZW = RingSpec(("x", "y", "z", "w"))
XYZ = RingSpec(("x", "y", "z"))
F7_XYZ = RingSpec(("x", "y", "z"), FieldSpec.prime(7))


def exponents(nvars, max_deg):
    return st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars).filter(lambda e: sum(e) <= max_deg)


def polynomials(ring, max_deg=3, max_terms=4, coeffs=st.integers(-3, 3)):
    terms = st.dictionaries(exponents(ring.nvars, max_deg).map(tuple), coeffs, max_size=max_terms)
    return terms.map(lambda t: Polynomial(ring, t))


def nonzero_polynomials(ring, **kw):
    return polynomials(ring, **kw).filter(lambda p: not p.is_zero)


def random_polynomial(rng, ring, max_deg=3, max_terms=4, coeff=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(ring.nvars)] += 1
        terms[tuple(e)] = rng.randint(-coeff, coeff)
    return Polynomial(ring, terms)


def random_ideal_generators(seed, ring=XYZ, n=3, max_deg=2, max_terms=3):
    rng = random.Random(seed)
    gens = []
    while len(gens) < n:
        g = random_polynomial(rng, ring, max_deg, max_terms)
        if not g.is_zero and not g.is_constant():
            gens.append(g)
    return gens


def sample_polynomials(seed, ring, count=100, max_deg=3, max_terms=3):
    rng = random.Random(seed)
    return [random_polynomial(rng, ring, max_deg, max_terms) for _ in range(count)]


# -- sympy bridge ---------------------------------------------------------


def to_sympy(p, symbols):
    text = render_polynomial(p).replace("^", "**")
    return sympy.sympify(text, locals=dict(zip(p.ring.variables, symbols)))


def from_sympy(expr, ring):
    return parse_polynomial(str(sympy.expand(expr)).replace("**", "^"), ring)


def sympy_reduced_basis(gens, ring, order="grevlex"):
    syms = sympy.symbols(ring.variables)
    G = sympy.groebner([to_sympy(g, syms) for g in gens], *syms, order=order, domain="QQ")
    return [from_sympy(e, ring) for e in G.exprs]
