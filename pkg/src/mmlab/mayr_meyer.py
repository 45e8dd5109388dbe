"""Constructors for the first Mayr-Meyer ideal J(1,d) and its companion ideals.

All ideals live in ``K[s,f,s1,f1,c1..c4,b1..b4]`` or, for the shortened
profile, in ``K[s,f,c1..c4,b1..b4]`` where the two generators
``s1 - s*c1`` and ``f1 - s*c4`` (and the variables ``s1``, ``f1``) are
dropped from every ideal.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exceptions import UnsupportedClaimError
from .ideal import Ideal
from .ring import QQ, FieldSpec, RingSpec

FULL_VARIABLES = ("s", "f", "s1", "f1", "c1", "c2", "c3", "c4", "b1", "b2", "b3", "b4")
SHORT_VARIABLES = ("s", "f", "c1", "c2", "c3", "c4", "b1", "b2", "b3", "b4")
REDUCED_VARIABLES = ("s", "f", "c4", "c3", "b4", "b3")
BIHOMOGENEITY_BLOCKS = (("s", "f"), ("c1", "c2", "c3", "c4"))
COEFFICIENT_VARIABLES = ("b1", "b2", "b3", "b4")

# heights of the associated primes, in row order
PRIME_HEIGHTS = (6, 9, 4, 8, 8, 10)


def char_split(d, field=QQ):
    """``(d', i)`` with ``d = d' * i``, ``i`` the largest power of the characteristic dividing ``d``.

    In characteristic zero ``d' = d`` and ``i = 1``.
    """
    if d < 1:
        raise ValueError("d must be a positive integer")
    p = field.characteristic if isinstance(field, FieldSpec) else int(field)
    i = 1
    if p:
        while d % (i * p) == 0:
            i *= p
    return d // i, i


def roots_of_unity(n, field):
    """All ``n``-th roots of unity of ``field``, or raise if it lacks some of them."""
    p = field.characteristic
    if p:
        roots = [a for a in range(1, p) if pow(a, n, p) == 1]
    else:
        roots = {1: [1], 2: [1, -1]}.get(n, [])
    if len(roots) != n:
        raise UnsupportedClaimError(
            f"{field} does not contain all {n}-th roots of unity"
            + (" (split mode needs p = 1 mod d')" if p else "")
        )
    return roots


@dataclass(frozen=True)
class MayrMeyerInstance:
    """Parameters of one J(1,d): degree, field, and ring profile."""

    d: int
    field: FieldSpec = QQ
    shortened: bool = False

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError("d must be a positive integer")

    @property
    def d_prime(self):
        return char_split(self.d, self.field)[0]

    @property
    def i(self):
        return char_split(self.d, self.field)[1]

    @cached_property
    def ring(self):
        return RingSpec(SHORT_VARIABLES if self.shortened else FULL_VARIABLES, self.field)

    def short(self):
        return MayrMeyerInstance(self.d, self.field, True)

    def full(self):
        return MayrMeyerInstance(self.d, self.field, False)

    @cached_property
    def x(self):
        """Variables of the ring by name."""
        return {v: self.ring.var(v) for v in self.ring.variables}

    def ideal(self, gens):
        return Ideal(self.ring, gens)

    def _prefix(self):
        # s1 - s*c1, f1 - s*c4 head every ideal of the full profile
        if self.shortened:
            return []
        x = self.x
        return [x["s1"] - x["s"] * x["c1"], x["f1"] - x["s"] * x["c4"]]

    def describe(self):
        return {
            "d": self.d,
            "d_prime": self.d_prime,
            "i": self.i,
            "field": str(self.field),
            "ring": "shortened" if self.shortened else "full",
        }


def _sfcb(inst):
    x = inst.x
    return x["s"], x["f"], [x[f"c{k}"] for k in range(1, 5)], [x[f"b{k}"] for k in range(1, 5)]


def j_generators(inst, d=None):
    """The generators of J(1,d) in the fixed order used throughout.

    Full profile: ``s1-s*c1, f1-s*c4`` then the nine below; the shortened
    profile keeps only the nine::

        c_k*(s - f*b_k^d)  (k = 1..4),  f*c1 - s*c2,  f*c4 - s*c3,
        s*(c3 - c2),  f*(c2*b1 - c3*b4),  f*c2*(b2 - b3)
    """
    d = inst.d if d is None else d
    s, f, c, b = _sfcb(inst)
    return inst._prefix() + [c[k] * (s - f * b[k] ** d) for k in range(4)] + [
        f * c[0] - s * c[1],
        f * c[3] - s * c[2],
        s * (c[2] - c[1]),
        f * (c[1] * b[0] - c[2] * b[3]),
        f * c[1] * (b[1] - b[2]),
    ]


def build_J(inst):
    return inst.ideal(j_generators(inst))


@dataclass(frozen=True)
class ComponentSpec:
    """One primary component from the decomposition of J(1,d).

    ``row`` is 1..6 in display order; ``alpha`` is set only for split row-2
    components.  Row 6 is the embedded component.
    """

    row: int
    mode: str
    gens: tuple
    alpha: int = None

    @property
    def embedded(self):
        return self.row == 6

    def ideal(self, ring):
        return Ideal(ring, self.gens)


def _row2_common(inst, d):
    s, f, c, b = _sfcb(inst)
    return inst._prefix() + [c[3] - c[0], c[2] - c[1], c[0] - c[1] * b[0] ** d, s - f * b[0] ** d, b[0] - b[3], b[1] - b[2]]


def build_components(inst, mode="combined"):
    """The components of J(1,d) as :class:`ComponentSpec` values.

    ``combined`` gives six ideals; row 2 carries the single generator
    ``b1^d - b2^d`` standing for the whole root-of-unity family.  ``split``
    gives one row-2 component per ``d'``-th root of unity ``alpha`` (with
    generator ``b1^i - alpha*b2^i``), ``d' + 5`` ideals in all.
    """
    d, i = inst.d, inst.i
    s, f, c, b = _sfcb(inst)
    pre = inst._prefix()
    rows = {
        1: pre + [c[0], c[1], c[2], c[3]],
        3: pre + [s, f],
        4: pre + [s, c[0], c[1], c[3], b[2] ** d, b[3]],
        5: pre + [s, c[0], c[3], b[2] ** d, b[1] - b[2], c[1] * b[0] - c[2] * b[3]],
        6: pre
        + [
            s**2,
            f**2,
            c[3] * (s - f * b[3] ** d),
            c[2] * (s - f * b[2] ** d),
            s * c[2] - f * c[3],
            c[2] ** 2,
            c[3] ** 2,
            c[0] - c[3],
            c[1] - c[2],
            b[1] - b[2],
            b[0] - b[3],
        ],
    }
    out = [ComponentSpec(1, mode, tuple(rows[1]))]
    if mode == "combined":
        out.append(ComponentSpec(2, mode, tuple(_row2_common(inst, d) + [b[0] ** d - b[1] ** d])))
    elif mode == "split":
        for alpha in roots_of_unity(inst.d_prime, inst.field):
            a = inst.field(alpha)
            gen = b[0] ** i - b[1] ** i * a
            out.append(ComponentSpec(2, mode, tuple(_row2_common(inst, d) + [gen]), alpha=a))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out += [ComponentSpec(r, mode, tuple(rows[r])) for r in (3, 4, 5, 6)]
    return out


def component_ideals(inst, mode="combined", minimal_only=False):
    return [cs.ideal(inst.ring) for cs in build_components(inst, mode) if not (minimal_only and cs.embedded)]


def minimal_prime_count(inst):
    return inst.d_prime + 4


def build_minimal_intersection(inst):
    """``J + (s*c2*(b1^d - b2^d))``."""
    s, f, c, b = _sfcb(inst)
    d = inst.d
    return inst.ideal(j_generators(inst) + [s * c[1] * (b[0] ** d - b[1] ** d)])


def radical_extras(inst, degree=None):
    """``f*b3*(c3 - c2)`` and ``f*b3*c2*(b1^e - b2^e)`` with ``e = d'`` by default."""
    e = inst.d_prime if degree is None else degree
    s, f, c, b = _sfcb(inst)
    return [f * b[2] * (c[2] - c[1]), f * b[2] * c[1] * (b[0] ** e - b[1] ** e)]


def build_radical(inst):
    """``J(1,d') + f*b3*(c3 - c2, c2*(b1^d' - b2^d'))``, the radical as stated."""
    return inst.ideal(j_generators(inst, inst.d_prime) + radical_extras(inst))


def build_radical_display(inst):
    """``J(1,d) + f*b3*(c3 - c2, c2*(b1^d' - b2^d'))``.

    Agrees with :func:`build_radical` when ``d' = d``.  In characteristic
    ``p`` with ``p | d`` this is the form that the intersection of the
    minimal primes actually takes.
    """
    return inst.ideal(j_generators(inst) + radical_extras(inst))


def radical_rows(inst, mode="combined"):
    """The minimal primes, with the root-of-unity family of row 2 combined into
    ``b1^d' - b2^d'`` (``combined``) or listed one prime per root (``split``)."""
    d, dp = inst.d, inst.d_prime
    s, f, c, b = _sfcb(inst)
    pre = inst._prefix()
    row2 = _row2_common(inst, d)
    if mode == "combined":
        middle = [row2 + [b[0] ** dp - b[1] ** dp]]
    elif mode == "split":
        middle = [row2 + [b[0] - b[1] * inst.field(a)] for a in roots_of_unity(dp, inst.field)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    rows = [pre + [c[0], c[1], c[2], c[3]]] + middle + [
        pre + [s, f],
        pre + [s, c[0], c[1], c[3], b[2], b[3]],
        pre + [s, c[0], c[3], b[1], b[2], c[1] * b[0] - c[2] * b[3]],
    ]
    return [inst.ideal(r) for r in rows]


def associated_primes(inst, alpha=1):
    """The six associated primes in row order, row 2 taken at root ``alpha``."""
    d = inst.d
    s, f, c, b = _sfcb(inst)
    pre = inst._prefix()
    a = inst.field(alpha)
    rows = [
        pre + [c[0], c[1], c[2], c[3]],
        _row2_common(inst, d) + [b[0] - b[1] * a],
        pre + [s, f],
        pre + [s, c[0], c[1], c[3], b[2], b[3]],
        pre + [s, c[0], c[3], b[1], b[2], c[1] * b[0] - c[2] * b[3]],
        pre + [s, f, c[0], c[1], c[2], c[3], b[1] - b[2], b[0] - b[3]],
    ]
    return [inst.ideal(r) for r in rows]


def embedded_witness(inst):
    """``c4*(s - f*b3^d)``: in every minimal component, not in J."""
    s, f, c, b = _sfcb(inst)
    return c[3] * (s - f * b[2] ** inst.d)


def certificate_target(inst):
    """``s*(c4 - c1)``."""
    s, f, c, b = _sfcb(inst)
    return s * (c[3] - c[0])


def membership_identities(inst):
    """Named elements the proofs show to lie in J(1,d)."""
    d = inst.d
    s, f, c, b = _sfcb(inst)
    diff = b[0] ** d - b[1] ** d
    return {
        "s*(c1-c4)": s * (c[0] - c[3]),
        "s*f*c2*(b1^d-b2^d)": s * f * c[1] * diff,
        "s*c2^2*(b1^d-b2^d)": s * c[1] ** 2 * diff,
        "f*(c1-c4)": f * (c[0] - c[3]),
        "s*(c1-c2*b1^d)": s * (c[0] - c[1] * b[0] ** d),
        "f*(c3-c2)*b3^d": f * (c[2] - c[1]) * b[2] ** d,
        "s*c2*(b1-b4)": s * c[1] * (b[0] - b[3]),
        "f*(c3-c2)*b4 - f*c2*(b1-b4)": f * (c[2] - c[1]) * b[3] - f * c[1] * (b[0] - b[3]),
        "f*(c1-c2*b1^d) - f*c2*(b2^d-b1^d)": f * (c[0] - c[1] * b[0] ** d) - f * c[1] * (b[1] ** d - b[0] ** d),
    }


PRIMARY_IDENTITIES = ("s*(c1-c4)", "s*f*c2*(b1^d-b2^d)", "s*c2^2*(b1^d-b2^d)")


# --------------------------------------------------------------------------
# the ideal L of the primaryness argument for the embedded component


def reduced_ring(field=QQ):
    """``K[s,f,c4,c3,b4,b3]``; lex in this variable order is ``s > f > c4 > c3 > b4 > b3``."""
    return RingSpec(REDUCED_VARIABLES, field)


def reduced_ideals(d, field=QQ):
    """``L`` and the ideals its proof computes, all in :func:`reduced_ring`.

    Returns a dict with keys ``L``, ``L_colon_f``, ``leading``, ``L_plus_f``
    and ``sqrt_L``.
    """
    R = reduced_ring(field)
    s, f, c4, c3, b4, b3 = R.gens
    L = Ideal(R, [s**2, f**2, c4 * (s - f * b4**d), c3 * (s - f * b3**d), s * c3 - f * c4, c3**2, c4**2])
    return {
        "L": L,
        "L_colon_f": Ideal(R, [s**2, f, c4 - c3 * b3**d, s * c3, c3**2]),
        "leading": Ideal(R, [s**2, f**2, s * c4, s * c3, c3**2, c4**2, f * c4]),
        "L_plus_f": Ideal(R, [s**2, f, s * c4, s * c3, c3**2, c4**2]),
        "sqrt_L": Ideal(R, [s, f, c3, c4]),
    }


def embedded_component_short(inst):
    """Row 6 in the shortened ring and its radical (for the ``L : s*c2`` step)."""
    short = inst.short()
    s, f, c, b = _sfcb(short)
    comp = [cs for cs in build_components(short) if cs.row == 6][0].ideal(short.ring)
    sqrt = short.ideal([s, f, c[0], c[1], c[2], c[3], b[1] - b[2], b[0] - b[3]])
    return comp, sqrt, s * c[1]
