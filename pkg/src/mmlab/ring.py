"""Exact coefficient fields, monomial orders and canonical multivariate polynomials.

Polynomials are immutable maps from exponent tuples to non-zero coefficients.
The map itself is the canonical form, so structural equality is ideal-free
equality of polynomials.  Monomial orders are applied when terms are listed
or leading terms are requested, never baked into the stored value.
"""
from __future__ import annotations

import functools
import itertools
import operator
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from numbers import Integral, Rational
from typing import Mapping

from .exceptions import NotHomogeneousError, RingMismatchError

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    k = 17
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


# --------------------------------------------------------------------------
# coefficient fields


@dataclass(frozen=True)
class FieldSpec:
    """The rationals (``characteristic == 0``) or the prime field of order p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, Integral) or isinstance(p, bool):
            raise TypeError("characteristic must be an integer")
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")

    @classmethod
    def rationals(cls):
        return cls(0)

    @classmethod
    def prime(cls, p):
        return cls(int(p))

    @property
    def kind(self):
        return "Rationals" if self.characteristic == 0 else "PrimeField"

    def __call__(self, value):
        """Coerce an int, Fraction or numeric string into a canonical coefficient."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool) or not isinstance(value, Rational):
            raise TypeError(f"cannot coerce {value!r} to a coefficient")
        if p:
            num, den = value.numerator, value.denominator
            if den % p == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{p}")
            return num * pow(den, -1, p) % p if den != 1 else num % p
        if isinstance(value, Integral):
            return int(value)
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value

    def normalize(self, c):
        """Canonical representative of an already-valid coefficient."""
        if self.characteristic:
            return c % self.characteristic
        if c.__class__ is Fraction and c.denominator == 1:
            return c.numerator
        return c

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        c = Fraction(1, 1) / c
        return c.numerator if c.denominator == 1 else c

    def symmetric(self, c):
        """Signed representative used for display (``6`` in F_7 prints as ``-1``)."""
        p = self.characteristic
        if p and c > p // 2:
            return c - p
        return c

    def __str__(self):
        return "Q" if self.characteristic == 0 else f"Fp({self.characteristic})"


QQ = FieldSpec(0)


# --------------------------------------------------------------------------
# monomial orders
#
# Every order is realised as a key function on exponent tuples such that
# plain tuple comparison of keys is the order.  Keys are linear in the
# exponents, which makes each order multiplicative for free.


class MonomialOrder:
    """Base class; subclasses implement :meth:`_raw_key`."""

    name = "order"

    def key(self, ring):
        """Return the (memoised) sort key for exponent tuples of ``ring``."""
        return _key_function(self, ring.variables)

    def _raw_key(self, variables):
        raise NotImplementedError


@dataclass(frozen=True)
class Lex(MonomialOrder):
    """Lexicographic order; variable precedence is the ring's variable order."""

    name = "lex"

    def _raw_key(self, variables):
        return _identity

    def __str__(self):
        return "lex"


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    """Graded reverse lexicographic order."""

    name = "grevlex"

    def _raw_key(self, variables):
        return _grevlex_key

    def __str__(self):
        return "grevlex"


@dataclass(frozen=True)
class Block(MonomialOrder):
    """Elimination order: ``eliminate`` variables form a dominant first block.

    Both blocks are compared with ``inner``; any monomial involving an
    eliminated variable exceeds every monomial free of them.
    """

    eliminate: tuple = ()
    inner: MonomialOrder = GrevLex()

    name = "block"

    def __post_init__(self):
        object.__setattr__(self, "eliminate", tuple(self.eliminate))

    def _raw_key(self, variables):
        unknown = set(self.eliminate) - set(variables)
        if unknown:
            raise ValueError(f"unknown variables in block order: {sorted(unknown)}")
        first = [i for i, v in enumerate(variables) if v in self.eliminate]
        rest = [i for i, v in enumerate(variables) if v not in self.eliminate]
        pick_first, pick_rest = _picker(first), _picker(rest)
        k1 = self.inner._raw_key(tuple(variables[i] for i in first))
        k2 = self.inner._raw_key(tuple(variables[i] for i in rest))

        def key(e):
            return (*k1(pick_first(e)), *k2(pick_rest(e)))

        return key

    def __str__(self):
        return f"block({','.join(self.eliminate)};{self.inner})"


def _identity(e):
    return e


def _grevlex_key(e):
    return (sum(e), *map(operator.neg, reversed(e)))


def _picker(indices):
    if not indices:
        return lambda e: ()
    if len(indices) == 1:
        i = indices[0]
        return lambda e: (e[i],)
    return operator.itemgetter(*indices)


@functools.lru_cache(maxsize=256)
def _key_function(order, variables):
    return functools.lru_cache(maxsize=1 << 17)(order._raw_key(variables))


def order_from_name(name):
    """Map ``"lex"`` / ``"grevlex"`` to an order instance."""
    if isinstance(name, MonomialOrder):
        return name
    table = {"lex": Lex(), "grevlex": GrevLex(), "degrevlex": GrevLex()}
    try:
        return table[name.lower()]
    except (KeyError, AttributeError):
        raise ValueError(f"unknown monomial order {name!r}") from None


# --------------------------------------------------------------------------
# rings and monomials


@dataclass(frozen=True)
class RingSpec:
    """A polynomial ring: ordered variable names over a coefficient field.

    Two rings are the same ring when variables and field agree; the default
    order is a computational preference and does not take part in equality.
    """

    variables: tuple
    field: FieldSpec = QQ
    order: MonomialOrder = dc_field(default=GrevLex(), compare=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        for v in variables:
            if not isinstance(v, str) or not _IDENT.match(v):
                raise ValueError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})

    @property
    def nvars(self):
        return len(self.variables)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a variable of {self}") from None

    def var(self, name):
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial._make(self, {tuple(e): 1})

    @property
    def gens(self):
        return tuple(self.var(v) for v in self.variables)

    def __getitem__(self, name):
        return self.var(name)

    @property
    def zero(self):
        return Polynomial._make(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field(c)
        return Polynomial._make(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exponents):
        return Monomial(tuple(exponents), self)

    def with_order(self, order):
        return RingSpec(self.variables, self.field, order_from_name(order))

    def extend(self, new_vars, position="front"):
        """A ring with extra variables placed before or after the existing ones."""
        new_vars = tuple(new_vars)
        clash = set(new_vars) & set(self.variables)
        if clash:
            raise ValueError(f"variable names already in use: {sorted(clash)}")
        if position == "front":
            variables = new_vars + self.variables
        elif position == "back":
            variables = self.variables + new_vars
        else:
            raise ValueError("position must be 'front' or 'back'")
        return RingSpec(variables, self.field, self.order)

    def fresh_name(self, stem):
        if stem not in self._index:
            return stem
        for k in itertools.count():
            name = f"{stem}{k}_"
            if name not in self._index:
                return name

    def __str__(self):
        return f"{self.field}[{','.join(self.variables)}]"


@dataclass(frozen=True)
class Monomial:
    exponents: tuple
    ring: RingSpec

    def __post_init__(self):
        if len(self.exponents) != self.ring.nvars:
            raise ValueError("exponent vector length does not match the ring")
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be non-negative")

    @property
    def degree(self):
        return sum(self.exponents)

    def divides(self, other):
        _check_same(self.ring, other.ring)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other):
        _check_same(self.ring, other.ring)
        return Monomial(tuple(map(operator.add, self.exponents, other.exponents)), self.ring)

    def lcm(self, other):
        _check_same(self.ring, other.ring)
        return Monomial(tuple(map(max, self.exponents, other.exponents)), self.ring)

    def support(self):
        return frozenset(v for v, e in zip(self.ring.variables, self.exponents) if e)

    def as_polynomial(self, coeff=1):
        return Polynomial(self.ring, {self.exponents: coeff})

    def __str__(self):
        return str(self.as_polynomial())


def compare_monomials(a, b, order=None):
    """Three-way comparison: ``-1``, ``0`` or ``1`` as ``a`` is below, equal to or above ``b``."""
    _check_same(a.ring, b.ring)
    order = a.ring.order if order is None else order
    key = order.key(a.ring)
    ka, kb = key(a.exponents), key(b.exponents)
    return (ka > kb) - (ka < kb)


def _check_same(r1, r2):
    if r1 is not r2 and r1 != r2:
        raise RingMismatchError(f"ring mismatch: {r1} vs {r2}")


def monomial_lcm(a, b):
    return tuple(map(max, a, b))


def monomial_divides(a, b):
    return not any(map(operator.gt, a, b))


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable multivariate polynomial with exact coefficients.

    Parameters
    ----------
    ring : RingSpec
    terms : mapping of exponent tuple -> coefficient, optional
        Zero coefficients are dropped and coefficients coerced into the field.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {ring}")
            c = ring.field(c) + clean.get(e, 0)
            c = ring.field.normalize(c)
            if c:
                clean[e] = c
            else:
                clean.pop(e, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, ring, terms):
        # trusted constructor: terms already canonical and owned by the result
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    def items(self):
        return self._terms.items()

    def monomials(self):
        return [Monomial(e, self.ring) for e in self._terms]

    def coefficient(self, exponents):
        if isinstance(exponents, Monomial):
            exponents = exponents.exponents
        return self._terms.get(tuple(exponents), 0)

    def terms(self, order=None):
        """``(coefficient, Monomial)`` pairs, strictly descending in ``order``."""
        key = (order or self.ring.order).key(self.ring)
        return [(self._terms[e], Monomial(e, self.ring)) for e in sorted(self._terms, key=key, reverse=True)]

    def leading_monomial(self, order=None):
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        key = (order or self.ring.order).key(self.ring)
        return Monomial(max(self._terms, key=key), self.ring)

    def leading_coefficient(self, order=None):
        return self._terms[self.leading_monomial(order).exponents]

    def leading_term(self, order=None):
        m = self.leading_monomial(order)
        return Polynomial._make(self.ring, {m.exponents: self._terms[m.exponents]})

    def monic(self, order=None):
        if not self._terms:
            return self
        inv = self.ring.field.inv(self.leading_coefficient(order))
        return self * inv

    @property
    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def total_degree(self):
        """Maximum total degree of a term; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree(self, var):
        i = self.ring.index(var)
        return max((e[i] for e in self._terms), default=-1)

    def support(self):
        """Names of the variables that actually occur."""
        used = [any(e[i] for e in self._terms) for i in range(self.ring.nvars)]
        return frozenset(v for v, u in zip(self.ring.variables, used) if u)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            _check_same(self.ring, other.ring)
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._make(self.ring, _add(self._terms, other._terms, 1, self.ring.field))

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return Polynomial._make(self.ring, {e: fld.normalize(-c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._make(self.ring, _add(self._terms, other._terms, -1, self.ring.field))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero
            fld = self.ring.field
            return Polynomial._make(self.ring, {e: fld.normalize(v * c) for e, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial._make(self.ring, _mul(self._terms, other._terms, self.ring.field))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, Integral) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        return self * c

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, Rational) and not isinstance(other, bool):
            try:
                return self._terms == self.ring.constant(other)._terms
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation and change of ring ------------------------------------

    def evaluate(self, point):
        """Evaluate at a point given as a mapping ``name -> value`` or a sequence."""
        if isinstance(point, Mapping):
            values = [point[v] for v in self.ring.variables]
        else:
            values = list(point)
            if len(values) != self.ring.nvars:
                raise ValueError("point has the wrong number of coordinates")
        fld = self.ring.field
        values = [fld(v) for v in values]
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = t * v ** k
            total += t
        return fld.normalize(fld(total))

    def embed(self, ring):
        """Re-express in another ring sharing (by name) every variable in use.

        Serves both as the inclusion into a larger ring and as the restriction
        back to a smaller one.
        """
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise RingMismatchError(f"cannot move {self.ring.field} coefficients into {ring.field}")
        missing = self.support() - set(ring.variables)
        if missing:
            raise RingMismatchError(f"variables {sorted(missing)} are not in {ring}")
        pos = [(i, ring.index(v)) for i, v in enumerate(self.ring.variables) if v in ring._index]
        n = ring.nvars
        out = {}
        for e, c in self._terms.items():
            new = [0] * n
            for i, j in pos:
                new[j] = e[i]
            out[tuple(new)] = c
        return Polynomial._make(ring, out)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        from .parse import render_polynomial

        return render_polynomial(self)


def _add(a, b, sign, fld):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + (c if sign == 1 else -c)
        v = fld.normalize(v)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _mul(a, b, fld):
    out = {}
    add = operator.add
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(map(add, e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in ((e, fld.normalize(c)) for e, c in out.items()) if c}


def polynomials(ring, *exprs):
    """Build several polynomials from a ring and string expressions."""
    from .parse import parse_polynomial

    return [parse_polynomial(x, ring) for x in exprs]


# --------------------------------------------------------------------------
# gradings


def multidegree(f, blocks):
    """Shared per-block degree of every term of ``f``.

    Parameters
    ----------
    f : Polynomial
    blocks : sequence of sequences of variable names
        Disjoint variable sets.  Variables outside every block are ignored.

    Returns
    -------
    tuple of int or None
        ``None`` when the terms disagree (``f`` is not block-homogeneous) or
        ``f`` is zero.
    """
    idx = _block_indices(f.ring, blocks)
    degrees = {tuple(sum(e[i] for i in block) for block in idx) for e in f._terms}
    if len(degrees) != 1:
        return None
    return degrees.pop()


def _block_indices(ring, blocks):
    seen = set()
    idx = []
    for block in blocks:
        block = tuple(block)
        for v in block:
            if v not in ring._index:
                raise ValueError(f"unknown variable {v!r} in blocks")
            if v in seen:
                raise ValueError(f"variable {v!r} appears in two blocks")
            seen.add(v)
        idx.append(tuple(ring.index(v) for v in block))
    return idx


def require_multidegree(f, blocks):
    deg = multidegree(f, blocks)
    if deg is None:
        raise NotHomogeneousError(f"{f} is not homogeneous in blocks {blocks}")
    return deg


def extend_ring(ring, new_vars, position="front"):
    """Return ``(bigger_ring, embed)`` where ``embed`` maps polynomials across."""
    bigger = ring.extend(new_vars, position)
    return bigger, lambda p: p.embed(bigger)
