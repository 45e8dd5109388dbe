"""Input checks shared by the estimator wrappers."""
from __future__ import annotations

from .exceptions import RingMismatchError
from .parse import parse_polynomial
from .ring import Polynomial, RingSpec


def check_ring(ring):
    if ring is None or isinstance(ring, RingSpec):
        return ring
    if isinstance(ring, str):
        from .parse import parse_ring

        return parse_ring(ring)
    raise TypeError(f"expected a RingSpec or ring text, got {type(ring).__name__}")


def check_polynomials(X, ring=None, allow_empty=False):
    """Coerce ``X`` to a list of polynomials over one ring.

    Strings are parsed in ``ring``; a bare polynomial counts as a list of one.
    Returns ``(polys, ring)``.
    """
    ring = check_ring(ring)
    if isinstance(X, (Polynomial, str)):
        X = [X]
    out = []
    for item in X:
        if isinstance(item, str):
            if ring is None:
                raise ValueError("a ring is needed to parse polynomial strings")
            item = parse_polynomial(item, ring)
        elif not isinstance(item, Polynomial):
            raise TypeError(f"expected polynomials or strings, got {type(item).__name__}")
        if ring is None:
            ring = item.ring
        elif item.ring != ring:
            raise RingMismatchError(f"{item} is not in {ring}")
        out.append(item)
    if not out and not allow_empty:
        raise ValueError("at least one polynomial is required")
    return out, ring
