"""Ideal-level algebra: membership, equality, sums, products, intersections,
quotients, elimination, radical membership and Krull dimension."""
from __future__ import annotations

import itertools

from .exceptions import RingMismatchError
from .groebner import buchberger, divide, normal_form
from .ring import Block, GrevLex, Polynomial

CANONICAL_ORDER = GrevLex()


class Ideal:
    """An ideal given by generators, with reduced Groebner bases cached per order.

    Ideals are immutable; the cache only ever receives values that are
    determined by the generators, so concurrent fills are harmless.
    """

    def __init__(self, ring, gens=()):
        gens = tuple(gens)
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError(f"generators must be polynomials, got {type(g).__name__}")
            if g.ring != ring:
                raise RingMismatchError(f"generator {g} is not in {ring}")
        self.ring = ring
        self.gens = gens
        self._gb = {}

    @classmethod
    def of(cls, *gens):
        return cls(gens[0].ring, gens)

    def __repr__(self):
        return f"Ideal({self.ring}, [{', '.join(map(str, self.gens))}])"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def _check(self, other):
        ring = other.ring
        if ring != self.ring:
            raise RingMismatchError(f"ring mismatch: {self.ring} vs {ring}")

    def groebner_basis(self, order=None, track=False):
        order = order or CANONICAL_ORDER
        cache_key = (order, track)
        gb = self._gb.get(cache_key)
        if gb is None:
            if not track and (order, True) in self._gb:
                gb = self._gb[(order, True)]
            else:
                gb = buchberger(self.gens, order, track=track, ring=self.ring)
            self._gb[cache_key] = gb
        return gb

    @property
    def is_zero(self):
        return self.groebner_basis().is_zero

    @property
    def is_unit(self):
        return self.groebner_basis().is_unit

    # -- membership -------------------------------------------------------

    def normal_form(self, f):
        self._check(f)
        return normal_form(f, self.groebner_basis())

    def contains(self, f):
        self._check(f)
        if f.is_zero:
            return True
        return normal_form(f, self.groebner_basis()).is_zero

    __contains__ = contains

    def certificate(self, f):
        """Coefficients ``r`` with ``f == sum(r_j * gens[j])``, or ``None`` if ``f`` is not a member.

        Built from the tracked basis: divide by the basis, then push the
        quotients through the transformation matrix.  The identity is
        re-checked before returning.
        """
        self._check(f)
        gb = self.groebner_basis(track=True)
        if gb.is_zero:
            return [self.ring.zero] * len(self.gens) if f.is_zero else None
        res = divide(f, gb.elements, gb.order)
        if not res.remainder.is_zero:
            return None
        coeffs = [self.ring.zero] * len(self.gens)
        for q, row in zip(res.quotients, gb.transformation):
            if q.is_zero:
                continue
            for j, t in enumerate(row):
                if not t.is_zero:
                    coeffs[j] = coeffs[j] + q * t
        total = self.ring.zero
        for c, g in zip(coeffs, self.gens):
            total = total + c * g
        if total != f:
            raise AssertionError("membership certificate failed to re-expand")
        return coeffs

    def contains_ideal(self, other):
        self._check(other)
        gb = self.groebner_basis()
        return all(normal_form(g, gb).is_zero for g in other.gens)

    def equals(self, other):
        """Ideal equality: identical reduced grevlex bases."""
        self._check(other)
        return self.groebner_basis().elements == other.groebner_basis().elements

    def leading_ideal(self, order=None):
        """Monomial ideal generated by the leading monomials of the reduced basis."""
        gb = self.groebner_basis(order)
        key = gb.order.key(self.ring)
        return Ideal(self.ring, [Polynomial._make(self.ring, {max(g._terms, key=key): 1}) for g in gb.elements])

    # -- constructions ----------------------------------------------------

    def __add__(self, other):
        return sum_ideals(self, other)

    def __mul__(self, other):
        return product(self, other)

    def __and__(self, other):
        return intersect(self, other)


# --------------------------------------------------------------------------


def _same_ring(*ideals):
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != ring:
            raise RingMismatchError(f"ring mismatch: {ring} vs {I.ring}")
    return ring


def _as_ideal(x, ring=None):
    if isinstance(x, Ideal):
        return x
    if isinstance(x, Polynomial):
        return Ideal(x.ring, [x])
    x = list(x)
    return Ideal(ring or x[0].ring, x)


def contains(I, f):
    return I.contains(f)


def ideal_equal(I, J):
    return I.equals(J)


def sum_ideals(I, J):
    ring = _same_ring(I, J)
    return Ideal(ring, [g for g in I.gens + J.gens if not g.is_zero])


def product(I, J):
    ring = _same_ring(I, J)
    return Ideal(ring, [f * g for f in I.gens for g in J.gens if not (f.is_zero or g.is_zero)])


def eliminate(I, variables, inner=None):
    """Generators of ``I`` intersected with the subring free of ``variables``.

    The result stays in ``I.ring``; its generators simply avoid ``variables``.
    """
    variables = tuple(variables)
    for v in variables:
        I.ring.index(v)
    if not variables:
        return I
    gb = I.groebner_basis(Block(variables, inner or GrevLex()))
    drop = set(variables)
    return Ideal(I.ring, [g for g in gb.elements if not (g.support() & drop)])


def intersect(I, J):
    """``I`` intersected with ``J`` via a fresh variable ``t``: eliminate ``t`` from ``t*I + (1-t)*J``."""
    ring = _same_ring(I, J)
    if I.is_zero or J.is_zero:
        return Ideal(ring, [])
    if I.is_unit:
        return J
    if J.is_unit:
        return I
    t = ring.fresh_name("t")
    big = ring.extend([t], "front")
    tv = big.var(t)
    gens = [tv * g.embed(big) for g in I.gens] + [(1 - tv) * g.embed(big) for g in J.gens]
    elim = eliminate(Ideal(big, gens), [t])
    return Ideal(ring, [g.embed(ring) for g in elim.gens])


def intersect_all(ideals):
    ideals = list(ideals)
    result = ideals[0]
    for I in ideals[1:]:
        result = intersect(result, I)
    return result


def colon(I, f):
    """``I : f``, computed from ``I`` intersected with ``(f)`` by exact division by ``f``."""
    if f.is_zero:
        raise ZeroDivisionError("colon by the zero polynomial")
    if f.ring != I.ring:
        raise RingMismatchError(f"ring mismatch: {I.ring} vs {f.ring}")
    ring = I.ring
    if I.contains(f):
        return Ideal(ring, [ring.one])
    if f.is_constant():
        return I
    meet = intersect(I, Ideal(ring, [f]))
    quotients = []
    for g in meet.gens:
        res = divide(g, [f])
        if not res.remainder.is_zero:
            raise AssertionError(f"generator {g} of I meet (f) is not divisible by {f}")
        quotients.append(res.quotients[0])
    return Ideal(ring, quotients)


def colon_ideal(I, J):
    """``I : J`` as the intersection of ``I : g`` over the generators of ``J``."""
    _same_ring(I, J)
    gens = [g for g in J.gens if not g.is_zero]
    if not gens:
        return Ideal(I.ring, [I.ring.one])
    return intersect_all([colon(I, g) for g in gens])


def radical_member(I, f):
    """Whether ``f`` lies in the radical of ``I``: is ``1`` in ``I + (1 - y*f)`` with ``y`` fresh?"""
    if f.ring != I.ring:
        raise RingMismatchError(f"ring mismatch: {I.ring} vs {f.ring}")
    if f.is_zero or I.is_unit:
        return True
    if I.contains(f):
        return True
    ring = I.ring
    y = ring.fresh_name("y")
    big = ring.extend([y], "back")
    yv = big.var(y)
    gens = [g.embed(big) for g in I.gens] + [1 - yv * f.embed(big)]
    return buchberger(gens, GrevLex()).is_unit


def membership_power(I, f, max_power=32):
    """Smallest ``k <= max_power`` with ``f**k`` in ``I``, else ``None``."""
    gb = I.groebner_basis()
    if f.is_zero:
        return 1
    power = normal_form(f, gb)
    for k in range(1, max_power + 1):
        if power.is_zero:
            return k
        power = normal_form(power * f, gb)
    return None


def dimension(I, order=None):
    """Krull dimension of ``R/I``; ``-1`` for the unit ideal.

    The maximum size of a variable set containing the support of no leading
    monomial of a Groebner basis.
    """
    gb = I.groebner_basis(order)
    if gb.is_unit:
        return -1
    n = I.ring.nvars
    supports = []
    for lm in gb.leading_monomials():
        supports.append(frozenset(i for i, e in enumerate(lm) if e))
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def height(I, order=None):
    """``nvars - dim R/I`` (the height when ``I`` is prime)."""
    return I.ring.nvars - dimension(I, order)
