import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import XYZ, nonzero_polynomials, random_polynomial
from mmlab import (
    CertificateQuery,
    FieldSpec,
    Ideal,
    MayrMeyerInstance,
    NotHomogeneousError,
    Restriction,
    RingSpec,
    build_system,
    find_certificate,
    min_certificate_degree,
    monomial_basis,
    solve_exact,
)
from mmlab.linalg import solve_sparse
from mmlab.mayr_meyer import BIHOMOGENEITY_BLOCKS, COEFFICIENT_VARIABLES, FULL_VARIABLES, build_radical, j_generators, certificate_target

MM = RingSpec(FULL_VARIABLES)
X1 = RingSpec(("x",))
XY = RingSpec(("x", "y"))
SUB = Restriction.subring(COEFFICIENT_VARIABLES)
RESTRICTED = Restriction.block_homogeneous(BIHOMOGENEITY_BLOCKS, COEFFICIENT_VARIABLES)


def _prop6(d):
    inst = MayrMeyerInstance(d)
    return inst, certificate_target(inst), j_generators(inst)


# -- monomial bases -------------------------------------------------------


def test_basis_degree_zero():
    assert monomial_basis(MM, 0, COEFFICIENT_VARIABLES) == [(0,) * 12]


def test_basis_degree_one():
    assert len(monomial_basis(MM, 1, COEFFICIENT_VARIABLES)) == 5


def test_basis_degree_three():
    assert len(monomial_basis(MM, 3, COEFFICIENT_VARIABLES)) == math.comb(7, 3)


@given(st.integers(1, 5), st.integers(0, 5))
def test_basis_count(n, deg):
    ring = RingSpec(tuple(f"v{i}" for i in range(n)))
    basis = monomial_basis(ring, deg)
    assert len(basis) == len(set(basis)) == math.comb(n + deg, deg)
    assert all(sum(e) <= deg for e in basis)


def test_basis_negative_degree():
    with pytest.raises(ValueError):
        monomial_basis(MM, -1)


# -- systems --------------------------------------------------------------


def test_prop6_d1_system_feasible():
    inst, target, gens = _prop6(1)
    q = CertificateQuery(target, tuple(gens), 1, SUB)
    system = build_system(q)
    assert system.n_unknowns == 11 * 5
    assert solve_exact(system) is not None


def test_unit_not_in_proper_ideal():
    x = X1.var("x")
    for D in range(4):
        assert find_certificate(CertificateQuery(X1.one, (x,), D)) is None


def test_xy_over_x():
    x, y = XY.gens
    cert = find_certificate(CertificateQuery(x * y, (x,), 1))
    assert cert.coefficients == (y,)


def test_unknown_count_matches_slots():
    inst, target, gens = _prop6(2)
    system = build_system(CertificateQuery(target, tuple(gens), 2))
    assert system.n_unknowns == 11 * math.comb(12 + 2, 2)
    covered = {m for m in system.row_monomials if m is not None}
    assert all(e in covered for e, _ in target.items())


def test_block_restriction_needs_homogeneous_target():
    inst, _, gens = _prop6(1)
    bad = inst.x["s"] + inst.x["c1"]
    with pytest.raises(NotHomogeneousError):
        build_system(CertificateQuery(bad, tuple(gens), 1, RESTRICTED))


# -- exact solving --------------------------------------------------------


def test_solve_single_row():
    assert solve_sparse([{0: 1}], [1], 1, FieldSpec(0)) == [1]


def test_solve_inconsistent():
    assert solve_sparse([{0: 1}, {0: 1}], [1, 0], 1, FieldSpec(0)) is None


def test_solve_mod_p():
    F = FieldSpec.prime(7)
    sol = solve_sparse([{0: 3, 1: 1}, {1: 2}], [1, 4], 2, F)
    assert (3 * sol[0] + sol[1]) % 7 == 1 and (2 * sol[1]) % 7 == 4


@pytest.mark.parametrize("method", ["gauss", "fraction-free"])
def test_prop6_d2_full_ring_infeasible_below_bound(method):
    _, target, gens = _prop6(2)
    system = build_system(CertificateQuery(target, tuple(gens), 2))
    assert solve_exact(system, method) is None
    system = build_system(CertificateQuery(target, tuple(gens), 3))
    assert solve_exact(system, method) is not None


def _dense_feasible(system):
    cols = system.n_unknowns
    A = sympy.zeros(len(system.rows), cols)
    for i, row in enumerate(system.rows):
        for j, v in row.items():
            A[i, j] = v
    b = sympy.Matrix(system.rhs)
    return A.rank() == A.row_join(b).rank()


@pytest.mark.parametrize(
    "d, D, restriction",
    [(1, 0, Restriction.full_ring()), (1, 1, SUB), (2, 2, RESTRICTED), (2, 3, RESTRICTED), (3, 4, RESTRICTED)],
)
def test_feasibility_matches_dense_rank(d, D, restriction):
    _, target, gens = _prop6(d)
    system = build_system(CertificateQuery(target, tuple(gens), D, restriction))
    assert (solve_exact(system) is not None) == _dense_feasible(system)


@given(st.integers(0, 10**6))
@settings(max_examples=30)
def test_random_systems_match_dense_rank(seed):
    import random

    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
    rows = [{j: rng.randint(-3, 3) for j in range(ncols) if rng.random() < 0.5} for _ in range(nrows)]
    rows = [{j: v for j, v in r.items() if v} for r in rows]
    rhs = [rng.randint(-2, 2) for _ in range(nrows)]
    A = sympy.Matrix([[r.get(j, 0) for j in range(ncols)] for r in rows])
    want = A.rank() == A.row_join(sympy.Matrix(rhs)).rank()
    for method in ("gauss", "fraction-free"):
        sol = solve_sparse(rows, rhs, ncols, FieldSpec(0), method)
        assert (sol is not None) == want
        if sol is not None:
            assert all(sum(v * sol[j] for j, v in r.items()) == b for r, b in zip(rows, rhs))


# -- least degree ---------------------------------------------------------


def test_prop6_d2_full_ring():
    _, target, gens = _prop6(2)
    res = min_certificate_degree(target, gens, 10)
    assert res.degree == 3 and res.certificate.verify()
    assert res.feasibility == {0: False, 1: False, 2: False, 3: True}
    assert res.certificate.max_degree == 3


def test_prop6_d2_radical_generators():
    inst, target, _ = _prop6(2)
    res = min_certificate_degree(target, list(build_radical(inst).gens), 10)
    assert res.degree == 3


def test_generator_itself():
    _, _, gens = _prop6(2)
    res = min_certificate_degree(gens[0], gens, 3)
    assert res.degree == 0 and res.certificate.coefficients[0] == MM.one


def test_none_up_to():
    x = X1.var("x")
    res = min_certificate_degree(X1.one, [x], 3)
    assert not res.found and res.feasibility == {0: False, 1: False, 2: False, 3: False}


@pytest.mark.parametrize("d", [1, 2])
def test_monotone_in_degree(d):
    _, target, gens = _prop6(d)
    res = min_certificate_degree(target, gens, 2 * d)
    assert find_certificate(CertificateQuery(target, tuple(gens), res.degree + 1)) is not None


@pytest.mark.parametrize("d", [1, 2])
def test_restriction_agrees_with_full_ring(d):
    _, target, gens = _prop6(d)
    full = min_certificate_degree(target, gens, 2 * d).degree
    assert min_certificate_degree(target, gens, 2 * d, RESTRICTED).degree == full
    assert min_certificate_degree(target, gens, 2 * d, SUB).degree == full


@pytest.mark.parametrize("d", [3, 4])
def test_restricted_bound(d):
    _, target, gens = _prop6(d)
    assert min_certificate_degree(target, gens, 2 * d, RESTRICTED).degree == 2 * d - 1


@pytest.mark.parametrize("d", [1, 2, 3])
def test_hand_certificate_shape(d):
    # slots 2, 5, 6, 7 hold c1*(s - f*b1^d), c4*(s - f*b4^d), f*c1 - s*c2, f*c4 - s*c3
    inst, target, gens = _prop6(d)
    x = inst.x
    pinned = {5: MM.one, 2: -MM.one, 7: x["b4"] ** d, 6: -(x["b1"] ** d)}
    res = min_certificate_degree(target, gens, 2 * d - 1, RESTRICTED, pinned=pinned, start=2 * d - 1)
    assert res.found
    r = res.certificate.coefficients
    assert (r[5], r[2], r[7], r[6]) == (MM.one, -MM.one, x["b4"] ** d, -(x["b1"] ** d))


def test_pinned_infeasible_value():
    _, target, gens = _prop6(1)
    res = min_certificate_degree(target, gens, 1, SUB, pinned={5: MM.one * 2}, start=1)
    assert not res.found


@settings(max_examples=20)
@given(st.lists(nonzero_polynomials(XYZ, max_deg=2, max_terms=2), min_size=1, max_size=2), st.integers(0, 10**6))
def test_agrees_with_groebner_membership(gens, seed):
    import random

    rng = random.Random(seed)
    I = Ideal(XYZ, gens)
    members = [sum((random_polynomial(rng, XYZ, 1, 2) * g for g in gens), XYZ.zero) for _ in range(2)]
    for h in members + [random_polynomial(rng, XYZ, 2, 2)]:
        res = min_certificate_degree(h, gens, 3)
        if res.found:
            assert I.contains(h) and res.certificate.verify()
        if h in members:
            assert res.found and res.degree <= 1


def test_certificate_over_prime_field():
    F = FieldSpec.prime(7)
    inst = MayrMeyerInstance(2, F)
    res = min_certificate_degree(certificate_target(inst), j_generators(inst), 4)
    assert res.degree == 3


def test_fraction_free_matches_gauss():
    _, target, gens = _prop6(2)
    a = min_certificate_degree(target, gens, 4, RESTRICTED, method="gauss")
    b = min_certificate_degree(target, gens, 4, RESTRICTED, method="fraction-free")
    assert a.degree == b.degree == 3
    assert a.certificate.coefficients == b.certificate.coefficients
