"""Multivariate division, Buchberger's algorithm and reduced Groebner bases.

The engine works on raw ``{exponents: coefficient}`` dicts; the public
functions wrap and unwrap :class:`~mmlab.ring.Polynomial` values.
"""
from __future__ import annotations

import heapq
import itertools
import operator
from dataclasses import dataclass

from .exceptions import RingMismatchError
from .ring import Polynomial, monomial_divides, monomial_lcm

_add = operator.add
_sub = operator.sub
_gt = operator.gt


@dataclass(frozen=True)
class DivisionResult:
    """``f = sum(q_i * g_i) + remainder`` with no remainder term divisible by any ``LM(g_i)``."""

    quotients: tuple
    remainder: Polynomial

    def reconstruct(self, divisors):
        total = self.remainder
        for q, g in zip(self.quotients, divisors):
            total = total + q * g
        return total


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis of the ideal generated by ``generators``.

    Attributes
    ----------
    ring, order
        Ambient ring and the monomial order the basis is taken in.
    elements : tuple of Polynomial
        Monic basis elements sorted by decreasing leading monomial.
    generators : tuple of Polynomial
        The input generators, zeros included, in their original positions.
    transformation : tuple of tuple of Polynomial or None
        Row ``k`` expresses ``elements[k]`` in ``generators`` when tracking
        was requested.
    reduced : bool
    """

    ring: object
    order: object
    elements: tuple
    generators: tuple = ()
    transformation: tuple = None
    reduced: bool = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def is_unit(self):
        return len(self.elements) == 1 and self.elements[0].is_constant()

    @property
    def is_zero(self):
        return not self.elements

    def leading_monomials(self):
        key = self.order.key(self.ring)
        return [max(g._terms, key=key) for g in self.elements]

    def normal_form(self, f):
        return normal_form(f, self)

    def contains(self, f):
        return normal_form(f, self).is_zero

    def satisfies_criterion(self):
        """Every S-polynomial of a pair of elements reduces to zero."""
        return all(
            normal_form(s_polynomial(f, g, self.order), self).is_zero
            for f, g in itertools.combinations(self.elements, 2)
        )

    def is_reduced(self):
        lms = self.leading_monomials()
        for i, g in enumerate(self.elements):
            if g.leading_coefficient(self.order) != 1:
                return False
            for j, lm in enumerate(lms):
                if i != j and any(monomial_divides(lm, e) for e in g._terms):
                    return False
        return True

    def check_transformation(self):
        if self.transformation is None:
            raise ValueError("this basis was computed without tracking")
        for g, row in zip(self.elements, self.transformation):
            total = self.ring.zero
            for coeff, gen in zip(row, self.generators):
                total = total + coeff * gen
            if total != g:
                return False
        return True


# --------------------------------------------------------------------------
# dict-level engine


def _reduce(p, basis, lms, key, fld, quotients=None, coeffs_monic=True):
    """Fully reduce ``p`` by ``basis``; first divisor in list order wins.

    When ``quotients`` is a list, ``(index, coefficient, monomial)`` steps
    are appended to it.
    """
    mod = fld.characteristic
    norm = fld.normalize
    p = dict(p)
    r = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, lm in enumerate(lms):
            if not any(map(_gt, lm, m)):
                g = basis[i]
                if not coeffs_monic:
                    c = norm(c * fld.inv(g[lm]))
                u = tuple(map(_sub, m, lm))
                for e, a in g.items():
                    e2 = tuple(map(_add, e, u))
                    v = p.get(e2, 0) - c * a
                    if mod:
                        v %= mod
                    else:
                        v = norm(v)
                    if v:
                        p[e2] = v
                    else:
                        del p[e2]
                if quotients is not None:
                    quotients.append((i, c, u))
                break
        else:
            r[m] = c
            del p[m]
    return r


def _monic(p, key, fld):
    lc = p[max(p, key=key)]
    if lc == 1:
        return p, 1
    inv = fld.inv(lc)
    return {e: fld.normalize(c * inv) for e, c in p.items()}, inv


def _shift_add(acc, p, coef, mono, fld):
    """``acc += coef * mono * p`` in place."""
    norm = fld.normalize
    for e, a in p.items():
        e2 = tuple(map(_add, e, mono)) if mono is not None else e
        v = norm(acc.get(e2, 0) + coef * a)
        if v:
            acc[e2] = v
        else:
            acc.pop(e2, None)


def _row_combine(terms, fld):
    """Sum of ``coef * mono * row`` over ``terms``; rows map generator index -> dict."""
    out = {}
    for coef, mono, row in terms:
        for j, q in row.items():
            acc = out.setdefault(j, {})
            _shift_add(acc, q, coef, mono, fld)
    return {j: q for j, q in out.items() if q}


def _apply_quotients(row, quotients, rows, fld):
    terms = [(1, None, row)] + [(-c, u, rows[i]) for i, c, u in quotients]
    return _row_combine(terms, fld)


def _scale_row(row, c, fld):
    if c == 1:
        return row
    return _row_combine([(c, None, row)], fld)


class _PairQueue:
    """Critical pairs with Gebauer-Moeller pruning and a selection strategy."""

    def __init__(self, key, strategy):
        self.key = key
        self.strategy = strategy
        self.pairs = {}
        self.heap = []
        self.counter = itertools.count()

    def _priority(self, pair, lcm):
        if self.strategy == "normal":
            return (sum(lcm), self.key(lcm), pair[1], pair[0])
        if self.strategy == "fifo":
            return (next(self.counter),)
        if self.strategy == "lifo":
            return (-next(self.counter),)
        raise ValueError(f"unknown selection strategy {self.strategy!r}")

    def update(self, lms, h):
        lm_h = lms[h]
        cand = [(g, monomial_lcm(lms[g], lm_h)) for g in range(h)]
        kept = []
        for k, (g, lcm) in enumerate(cand):
            coprime = lcm == tuple(map(_add, lms[g], lm_h))
            if coprime or not (
                any(monomial_divides(l2, lcm) for _, l2 in cand[k + 1:])
                or any(monomial_divides(l2, lcm) for _, l2, _ in kept)
            ):
                kept.append((g, lcm, coprime))
        for (i, j), lcm in list(self.pairs.items()):
            if (
                monomial_divides(lm_h, lcm)
                and monomial_lcm(lms[i], lm_h) != lcm
                and monomial_lcm(lms[j], lm_h) != lcm
            ):
                del self.pairs[(i, j)]
        for g, lcm, coprime in kept:
            if not coprime:
                self.pairs[(g, h)] = lcm
                heapq.heappush(self.heap, (self._priority((g, h), lcm), g, h))

    def pop(self):
        while self.heap:
            _, i, j = heapq.heappop(self.heap)
            lcm = self.pairs.pop((i, j), None)
            if lcm is not None:
                return i, j, lcm
        return None


def _buchberger(gens, ring, order, track=False, strategy="normal"):
    """Return ``(elements, rows)`` of the reduced basis as dicts (rows ``None`` unless tracking)."""
    key = order.key(ring)
    fld = ring.field
    one = (0,) * ring.nvars
    G, lms, rows = [], [], []
    queue = _PairQueue(key, strategy)

    def insert(h, row):
        q = [] if track else None
        h = _reduce(h, G, lms, key, fld, q)
        if not h:
            return False
        if track:
            row = _apply_quotients(row, q, rows, fld)
        h, inv = _monic(h, key, fld)
        if track:
            row = _scale_row(row, inv, fld)
        lm = max(h, key=key)
        G.append(h)
        lms.append(lm)
        rows.append(row)
        if lm == one:
            return True
        queue.update(lms, len(G) - 1)
        return False

    unit = False
    for j, g in enumerate(gens):
        if g and insert(g, {j: {one: 1}} if track else None):
            unit = True
            break
    while not unit:
        nxt = queue.pop()
        if nxt is None:
            break
        i, j, lcm = nxt
        ui = tuple(map(_sub, lcm, lms[i]))
        uj = tuple(map(_sub, lcm, lms[j]))
        s = {}
        _shift_add(s, G[i], 1, ui, fld)
        _shift_add(s, G[j], -1, uj, fld)
        row = _row_combine([(1, ui, rows[i]), (-1, uj, rows[j])], fld) if track else None
        unit = insert(s, row)
    if unit:
        return [{one: 1}], [rows[-1]] if track else None
    return _interreduce(G, rows if track else None, key, fld)


def _interreduce(G, rows, key, fld):
    """Minimalise then tail-reduce a Groebner basis given as dicts."""
    order_idx = sorted(range(len(G)), key=lambda i: key(max(G[i], key=key)))
    keep = []
    for i in order_idx:
        lm = max(G[i], key=key)
        if not any(monomial_divides(max(G[k], key=key), lm) for k in keep):
            keep.append(i)
    elems = [G[i] for i in keep]
    erows = [rows[i] for i in keep] if rows is not None else None
    lms = [max(g, key=key) for g in elems]
    for k in range(len(elems)):
        others = elems[:k] + elems[k + 1:]
        other_lms = lms[:k] + lms[k + 1:]
        q = [] if rows is not None else None
        red = _reduce(elems[k], others, other_lms, key, fld, q)
        red, inv = _monic(red, key, fld)
        if rows is not None:
            other_rows = erows[:k] + erows[k + 1:]
            erows[k] = _scale_row(_apply_quotients(erows[k], q, other_rows, fld), inv, fld)
        elems[k] = red
    perm = sorted(range(len(elems)), key=lambda k: key(lms[k]), reverse=True)
    elems = [elems[k] for k in perm]
    if rows is not None:
        erows = [erows[k] for k in perm]
    return elems, erows


# --------------------------------------------------------------------------
# public API


def _common_ring(polys, ring=None):
    for p in polys:
        if ring is None:
            ring = p.ring
        elif p.ring is not ring and p.ring != ring:
            raise RingMismatchError(f"ring mismatch: {p.ring} vs {ring}")
    if ring is None:
        raise ValueError("cannot infer the ring of an empty generator list")
    return ring


def buchberger(gens, order=None, track=False, strategy="normal", ring=None):
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Parameters
    ----------
    gens : sequence of Polynomial
    order : MonomialOrder, optional
        Defaults to the ring's order (grevlex unless changed).
    track : bool
        Also compute the matrix expressing each basis element in ``gens``.
    strategy : {"normal", "fifo", "lifo"}
        S-pair selection.  The reduced basis does not depend on it.
    ring : RingSpec, optional
        Needed only when ``gens`` is empty.

    Returns
    -------
    GroebnerBasis
        Empty for the zero ideal, ``[1]`` for the unit ideal.
    """
    gens = tuple(gens)
    ring = _common_ring(gens, ring)
    order = order or ring.order
    elems, rows = _buchberger([g._terms for g in gens], ring, order, track, strategy)
    elements = tuple(Polynomial._make(ring, e) for e in elems)
    transformation = None
    if track:
        transformation = tuple(
            tuple(Polynomial._make(ring, row.get(j, {})) for j in range(len(gens))) for row in rows
        )
    return GroebnerBasis(ring, order, elements, gens, transformation, True)


def reduce_basis(gb):
    """Canonical reduced form of a Groebner basis (minimal, tail-reduced, monic)."""
    ring, order = gb.ring, gb.order
    key = order.key(ring)
    fld = ring.field
    G = [_monic(g._terms, key, fld)[0] for g in gb.elements if g]
    if not G:
        return GroebnerBasis(ring, order, (), gb.generators, None, True)
    elems, _ = _interreduce(G, None, key, fld)
    if any(not any(lm) for lm in (max(g, key=key) for g in elems)):
        elems = [{(0,) * ring.nvars: 1}]
    return GroebnerBasis(ring, order, tuple(Polynomial._make(ring, e) for e in elems), gb.generators, None, True)


def divide(f, divisors, order=None):
    """Multivariate division of ``f`` by an ordered list of non-zero divisors."""
    divisors = tuple(divisors)
    ring = _common_ring((f,) + divisors)
    if any(g.is_zero for g in divisors):
        raise ZeroDivisionError("division by the zero polynomial")
    order = order or ring.order
    key = order.key(ring)
    fld = ring.field
    basis = [g._terms for g in divisors]
    lms = [max(g, key=key) for g in basis]
    steps = []
    r = _reduce(f._terms, basis, lms, key, fld, steps, coeffs_monic=False)
    q = [{} for _ in divisors]
    for i, c, u in steps:
        _shift_add(q[i], {u: 1}, c, None, fld)
    return DivisionResult(tuple(Polynomial._make(ring, x) for x in q), Polynomial._make(ring, r))


def s_polynomial(f, g, order=None):
    """``(L/LT(f))*f - (L/LT(g))*g`` with ``L`` the lcm of the leading monomials."""
    ring = _common_ring((f, g))
    if f.is_zero or g.is_zero:
        raise ValueError("S-polynomial of the zero polynomial")
    order = order or ring.order
    key = order.key(ring)
    fld = ring.field
    mf, mg = max(f._terms, key=key), max(g._terms, key=key)
    lcm = monomial_lcm(mf, mg)
    s = {}
    _shift_add(s, f._terms, fld.inv(f._terms[mf]), tuple(map(_sub, lcm, mf)), fld)
    _shift_add(s, g._terms, -fld.inv(g._terms[mg]), tuple(map(_sub, lcm, mg)), fld)
    return Polynomial._make(ring, s)


def normal_form(f, basis, order=None):
    """Remainder of ``f`` on division by ``basis`` (a GroebnerBasis or a polynomial list)."""
    if isinstance(basis, GroebnerBasis):
        polys, order, ring = basis.elements, basis.order, basis.ring
        if f.ring != ring:
            raise RingMismatchError(f"ring mismatch: {f.ring} vs {ring}")
    else:
        polys = tuple(basis)
        ring = _common_ring((f,) + polys)
        order = order or ring.order
    key = order.key(ring)
    fld = ring.field
    terms = [g._terms for g in polys if g]
    lms = [max(g, key=key) for g in terms]
    monic = all(g[lm] == 1 for g, lm in zip(terms, lms))
    return Polynomial._make(ring, _reduce(f._terms, terms, lms, key, fld, None, coeffs_monic=monic))


def is_groebner_basis(polys, order=None):
    """Buchberger's criterion on an arbitrary list."""
    polys = [p for p in polys if p]
    if not polys:
        return True
    order = order or polys[0].ring.order
    return all(
        normal_form(s_polynomial(f, g, order), polys, order).is_zero
        for f, g in itertools.combinations(polys, 2)
    )


def leading_monomials(gb):
    return [gb.ring.monomial(e) for e in gb.leading_monomials()]
