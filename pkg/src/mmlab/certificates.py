"""Degree-bounded ideal membership certificates by exact linear algebra.

Given generators ``g_1..g_k``, a target ``h`` and a bound ``D``, decide
whether ``h = sum(r_i * g_i)`` with every ``r_i`` of total degree at most
``D``.  Unknowns are the coefficients of the ``r_i`` on a monomial basis; one
equation per monomial of the products (a Macaulay-style matrix).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .exceptions import NotHomogeneousError, RingMismatchError
from .linalg import solve_sparse
from .ring import Polynomial, multidegree


def monomial_basis(ring, max_deg, variables=None):
    """All monomials of total degree ``<= max_deg`` in ``variables`` (default: every variable).

    Ordered by degree, then by ``itertools.combinations_with_replacement``
    over the ring's variable order.  There are ``C(n + max_deg, max_deg)``.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be non-negative")
    idx = sorted(ring.index(v) for v in (variables if variables is not None else ring.variables))
    out = []
    for deg in range(max_deg + 1):
        for combo in itertools.combinations_with_replacement(idx, deg):
            e = [0] * ring.nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def monomial_count(nvars, max_deg):
    return math.comb(nvars + max_deg, max_deg)


@dataclass(frozen=True)
class Restriction:
    """Which coefficient monomials are allowed.

    ``variables`` limits the coefficient ring (``None``: all variables).
    ``blocks`` additionally keeps only products ``m * g_i`` that are
    block-homogeneous of the target's multidegree.
    """

    variables: tuple = None
    blocks: tuple = None

    @classmethod
    def full_ring(cls):
        return cls()

    @classmethod
    def subring(cls, variables):
        return cls(tuple(variables), None)

    @classmethod
    def block_homogeneous(cls, blocks, variables=None):
        return cls(tuple(variables) if variables is not None else None, tuple(tuple(b) for b in blocks))

    @property
    def is_full(self):
        return self.variables is None and self.blocks is None

    def describe(self):
        if self.is_full:
            return "FullRing"
        parts = []
        if self.variables is not None:
            parts.append("SubringVars(" + ",".join(self.variables) + ")")
        if self.blocks is not None:
            parts.append("BlockHomogeneous(" + "|".join(",".join(b) for b in self.blocks) + ")")
        return "+".join(parts)


@dataclass(frozen=True)
class CertificateQuery:
    target: Polynomial
    generators: tuple
    degree_bound: int
    restriction: Restriction = Restriction()
    pinned: dict = field(default_factory=dict)  # generator index -> required coefficient


@dataclass(frozen=True)
class Certificate:
    """Coefficients with ``sum(coefficients[i] * generators[i]) == target``."""

    target: Polynomial
    generators: tuple
    coefficients: tuple

    @property
    def max_degree(self):
        return max((c.total_degree() for c in self.coefficients), default=-1)

    def verify(self):
        total = self.target.ring.zero
        for c, g in zip(self.coefficients, self.generators):
            total = total + c * g
        return total == self.target


@dataclass
class LinearSystem:
    """Sparse equations over the coefficient unknowns.

    ``columns[j] = (generator index, exponent tuple)``; ``rows[i]`` maps
    column index to coefficient and ``row_monomials[i]`` is the monomial
    whose coefficient that equation compares.
    """

    query: CertificateQuery
    columns: list
    rows: list
    rhs: list
    row_monomials: list

    @property
    def n_unknowns(self):
        return len(self.columns)

    @property
    def n_equations(self):
        return len(self.rows)

    @property
    def n_nonzeros(self):
        return sum(len(r) for r in self.rows)


def _slot_monomials(query):
    ring = query.target.ring
    restriction = query.restriction
    basis = monomial_basis(ring, query.degree_bound, restriction.variables)
    if restriction.blocks is None:
        return [basis for _ in query.generators]
    target_deg = multidegree(query.target, restriction.blocks)
    if target_deg is None:
        raise NotHomogeneousError(f"target {query.target} is not homogeneous in {restriction.blocks}")
    idx = [tuple(ring.index(v) for v in b) for b in restriction.blocks]
    out = []
    for g in query.generators:
        gdeg = multidegree(g, restriction.blocks)
        if gdeg is None:
            out.append([])
            continue
        want = tuple(t - x for t, x in zip(target_deg, gdeg))
        out.append([m for m in basis if tuple(sum(m[i] for i in b) for b in idx) == want])
    return out


def build_system(query):
    """Assemble the linear system of a :class:`CertificateQuery`."""
    ring = query.target.ring
    for g in query.generators:
        if g.ring != ring:
            raise RingMismatchError(f"generator {g} is not in {ring}")
    slots = _slot_monomials(query)
    columns = [(i, m) for i, ms in enumerate(slots) for m in ms]
    row_index = {}
    rows = []
    row_monos = []

    def row_for(mono):
        k = row_index.get(mono)
        if k is None:
            k = row_index[mono] = len(rows)
            rows.append({})
            row_monos.append(mono)
        return k

    fld = ring.field
    for j, (i, m) in enumerate(columns):
        for e, c in query.generators[i].items():
            row = rows[row_for(tuple(a + b for a, b in zip(m, e)))]
            v = fld.normalize(row.get(j, 0) + c)
            if v:
                row[j] = v
            else:
                row.pop(j, None)
    rhs = [0] * len(rows)
    for e, c in query.target.items():
        k = row_for(e)
        rhs.extend([0] * (len(rows) - len(rhs)))
        rhs[k] = c
    rhs.extend([0] * (len(rows) - len(rhs)))
    # pinned coefficients: x_(i,m) equals the coefficient of m in the pinned polynomial
    for i, poly in query.pinned.items():
        allowed = set(slots[i])
        for e in poly._terms:
            if e not in allowed:
                rows.append({})
                rhs.append(1)
                row_monos.append(None)
        for j, (gi, m) in enumerate(columns):
            if gi == i:
                rows.append({j: 1})
                rhs.append(poly.coefficient(m))
                row_monos.append(None)
    return LinearSystem(query, columns, rows, rhs, row_monos)


def solve_exact(system, method="gauss"):
    """Exact solution vector (free unknowns zero) or ``None`` when infeasible."""
    fld = system.query.target.ring.field
    return solve_sparse(system.rows, system.rhs, len(system.columns), fld, method)


def extract_certificate(system, solution):
    q = system.query
    ring = q.target.ring
    coeffs = [{} for _ in q.generators]
    for (i, m), v in zip(system.columns, solution):
        if v:
            coeffs[i][m] = v
    cert = Certificate(q.target, tuple(q.generators), tuple(Polynomial._make(ring, c) for c in coeffs))
    if not cert.verify():
        raise AssertionError("certificate does not re-expand to the target")
    return cert


def find_certificate(query, method="gauss"):
    """Certificate of degree ``<= query.degree_bound`` or ``None``."""
    system = build_system(query)
    solution = solve_exact(system, method)
    if solution is None:
        return None
    return extract_certificate(system, solution)


@dataclass
class DegreeSearch:
    """Outcome of :func:`min_certificate_degree`.

    ``degree`` is the least feasible bound (``None`` if none up to
    ``max_degree``); ``feasibility`` records every probe.
    """

    degree: int
    certificate: Certificate
    max_degree: int
    feasibility: dict
    sizes: dict

    @property
    def found(self):
        return self.degree is not None


def min_certificate_degree(target, generators, max_degree, restriction=None, pinned=None, start=0, method="gauss"):
    """Smallest ``D <= max_degree`` admitting a certificate, searched upward from ``start``.

    Feasibility is monotone in ``D``, so the first feasible bound is the
    minimum; the certificate extracted there has maximal coefficient degree
    exactly ``D``.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    generators = tuple(generators)
    restriction = restriction or Restriction()
    feasibility = {}
    sizes = {}
    for D in range(start, max_degree + 1):
        query = CertificateQuery(target, generators, D, restriction, dict(pinned or {}))
        system = build_system(query)
        sizes[D] = (system.n_unknowns, system.n_equations)
        solution = solve_exact(system, method)
        feasibility[D] = solution is not None
        if solution is not None:
            cert = extract_certificate(system, solution)
            if start == 0 and not pinned and not target.is_zero and cert.max_degree != D:
                raise AssertionError(f"certificate degree {cert.max_degree} differs from minimal bound {D}")
            return DegreeSearch(D, cert, max_degree, feasibility, sizes)
    return DegreeSearch(None, None, max_degree, feasibility, sizes)
