"""Exact sparse linear solving over Q and F_p.

Systems are given row-wise as ``{column: coefficient}`` dicts with a
right-hand side.  Before elimination the column/row incidence graph is split
into connected components; a component whose right-hand sides are all zero
is solved by zero, so only components touching the right-hand side are
eliminated.  This is an exact block-diagonal decomposition, not a heuristic.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def _components(rows, ncols):
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        cols = iter(row)
        first = next(cols, None)
        if first is None:
            continue
        r0 = find(first)
        for c in cols:
            rc = find(c)
            if rc != r0:
                parent[rc] = r0
    return find


def relevant_rows(rows, rhs, ncols):
    """Indices of rows whose component touches a non-zero right-hand side.

    Returns ``None`` when some non-zero right-hand side sits on an empty row
    (the system is then trivially inconsistent).
    """
    find = _components(rows, ncols)
    live = set()
    for row, b in zip(rows, rhs):
        if b:
            if not row:
                return None
            live.add(find(next(iter(row))))
    return [i for i, row in enumerate(rows) if row and find(next(iter(row))) in live]


def solve_sparse(rows, rhs, ncols, field, method="gauss"):
    """Solve ``rows . x = rhs`` exactly.

    Parameters
    ----------
    rows : list of dict
        Row ``i`` maps column index to a non-zero coefficient.
    rhs : list
    ncols : int
    field : FieldSpec
    method : {"gauss", "fraction-free"}
        ``"fraction-free"`` keeps integer rows (content removed after each
        step) and is only meaningful over Q with integer data.

    Returns
    -------
    list or None
        A solution with free variables set to zero, or ``None`` when the
        system has no solution over the field.
    """
    keep = relevant_rows(rows, rhs, ncols)
    if keep is None:
        return None
    sub_rows = [rows[i] for i in keep]
    sub_rhs = [rhs[i] for i in keep]
    if method == "gauss" or field.characteristic:
        pivots = _echelon_field(sub_rows, sub_rhs, field)
    elif method == "fraction-free":
        pivots = _echelon_integer(sub_rows, sub_rhs)
    else:
        raise ValueError(f"unknown elimination method {method!r}")
    if pivots is None:
        return None
    return _back_substitute(pivots, ncols, field)


def _echelon_field(rows, rhs, field):
    norm = field.normalize
    inv = field.inv
    mod = field.characteristic
    pivots = {}
    for row, b in zip(rows, rhs):
        r = dict(row)
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                break
            prow, pb = piv
            a = r[c]
            for k, v in prow.items():
                x = r.get(k, 0) - a * v
                x = x % mod if mod else norm(x)
                if x:
                    r[k] = x
                else:
                    r.pop(k, None)
            b = b - a * pb
            b = b % mod if mod else norm(b)
        if not r:
            if b:
                return None
            continue
        c = min(r)
        s = inv(r[c])
        pivots[c] = ({k: norm(v * s) for k, v in r.items()}, norm(b * s))
    return {c: (row, b) for c, (row, b) in pivots.items()}


def _echelon_integer(rows, rhs):
    pivots = {}
    for row, b in zip(rows, rhs):
        r = {k: _as_int(v) for k, v in row.items()}
        b = _as_int(b)
        r, b = _primitive(r, b)
        while r:
            c = min(r)
            piv = pivots.get(c)
            if piv is None:
                break
            prow, pb = piv
            p, a = prow[c], r[c]
            g = gcd(p, a)
            mp, ma = p // g, a // g
            new = {k: v * mp for k, v in r.items()}
            for k, v in prow.items():
                x = new.get(k, 0) - ma * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            r, b = _primitive(new, b * mp - ma * pb)
        if not r:
            if b:
                return None
            continue
        pivots[min(r)] = (r, b)
    return {c: ({k: Fraction(v, row[c]) for k, v in row.items()}, Fraction(b, row[c])) for c, (row, b) in pivots.items()}


def _as_int(v):
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError("fraction-free elimination needs integer data")
        return v.numerator
    return int(v)


def _primitive(r, b):
    g = 0
    for v in r.values():
        g = gcd(g, v)
        if g == 1:
            return r, b
    g = gcd(g, b)
    if g > 1:
        r = {k: v // g for k, v in r.items()}
        b //= g
    return r, b


def _back_substitute(pivots, ncols, field):
    norm = field.normalize
    mod = field.characteristic
    x = [0] * ncols
    for c in sorted(pivots, reverse=True):
        row, b = pivots[c]
        v = b
        for k, a in row.items():
            if k != c and x[k]:
                v -= a * x[k]
        v = v % mod if mod else norm(v)
        x[c] = v
    return [norm(v) if not mod else v for v in x]
