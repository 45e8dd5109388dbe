"""Claim-by-claim verification harness for J(1,d).

Every claim becomes a list of named checks, each reduced to ideal equality,
membership, radical membership, dimension or a certificate search.  A
failing check records a witness: a polynomial, a non-zero normal form, or a
degree that differs from the expected one.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import mayr_meyer as mm
from .certificates import CertificateQuery, Restriction, find_certificate, min_certificate_degree
from .exceptions import UnsupportedClaimError
from .ideal import Ideal, colon, dimension, ideal_equal, intersect_all, membership_power, radical_member
from .parse import render_polynomial
from .ring import Lex

CLAIMS = ("identities", "theorem1", "prop4", "prop5", "lemma2_colon", "lemma3", "prop6", "heights")
SPLIT_CLAIMS = ("theorem1", "prop4", "prop5")
DEFAULTS = {"full_max_d": 2, "prop6_full_max_d": 2, "prop6_restricted_max_d": 6, "max_power": 32}


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "pass": self.passed, **self.detail}


@dataclass
class VerificationReport:
    """Outcome of one claim: its checks, an overall verdict and a witness on failure."""

    claim: str
    params: dict
    checks: list
    ring: str
    timings: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    @property
    def witness(self):
        for c in self.checks:
            if not c.passed:
                return {"check": c.name, **c.detail}
        return None

    def to_dict(self):
        out = {
            "claim": self.claim,
            "params": dict(self.params),
            "pass": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "timings": dict(self.timings),
        }
        if self.info:
            out["info"] = dict(self.info)
        if not self.passed:
            out["witness"] = self.witness or {"reason": "no checks ran"}
        return out

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        head = f"{status} {self.claim} " + " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [head]
        for c in self.checks:
            lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}")
        if not self.passed:
            lines.append(f"  witness: {self.witness}")
        return "\n".join(lines)


class _Recorder:
    def __init__(self):
        self.checks = []
        self.timings = {}
        self.info = {}

    def add(self, name, passed, **detail):
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    def timed(self, name, fn, *args):
        t0 = time.perf_counter()
        out = fn(*args)
        self.timings[name] = round(time.perf_counter() - t0, 6)
        return out


def _p(poly):
    return render_polynomial(poly)


def _equal_check(rec, name, left, right):
    """Ideal equality with a concrete witness: a generator of one side outside the other."""
    if ideal_equal(left, right):
        return rec.add(name, True)
    for a, b, side in ((right, left, "right"), (left, right, "left")):
        for g in a.gens:
            nf = b.normal_form(g)
            if not nf.is_zero:
                return rec.add(name, False, witness=_p(g), witness_from=side, normal_form=_p(nf))
    return rec.add(name, False, witness="bases differ")


def _member_check(rec, name, ideal, poly, expect=True):
    nf = ideal.normal_form(poly)
    ok = nf.is_zero == expect
    detail = {"polynomial": _p(poly), "normal_form": _p(nf)}
    if not ok:
        detail["witness"] = _p(poly)
    return rec.add(name, ok, **detail)


def _profiles(inst, opts):
    """Ring profiles a claim runs on: shortened always, full for small d."""
    out = [inst.short()]
    if inst.d <= opts["full_max_d"]:
        out.append(inst.full())
    return out


def _tag(inst):
    return "short" if inst.shortened else "full"


# --------------------------------------------------------------------------


def _identities(inst, mode, opts, rec):
    target = inst.full()
    J = mm.build_J(target)
    for name, poly in mm.membership_identities(target).items():
        _member_check(rec, f"in_J:{name}", J, poly)
    return target


def _theorem1(inst, mode, opts, rec):
    for prof in _profiles(inst, opts):
        J = mm.build_J(prof)
        comps = mm.component_ideals(prof, mode)
        rec.add(f"component_count:{_tag(prof)}", len(comps) == (6 if mode == "combined" else prof.d_prime + 5),
                count=len(comps))
        contained = [k for k, C in enumerate(comps) if not C.contains_ideal(J)]
        rec.add(f"J_in_each_component:{_tag(prof)}", not contained,
                **({"witness": f"component {contained[0]}"} if contained else {}))
        meet = rec.timed(f"intersection:{_tag(prof)}", intersect_all, comps)
        _equal_check(rec, f"J_equals_intersection:{_tag(prof)}", J, meet)
        if prof.shortened and inst.d <= 2:
            _first_two_rows(prof, rec)
        if mode == "split":
            _split_cross_check(prof, rec)
    return inst.short()


def _first_two_rows(prof, rec):
    s, f, c, b = mm._sfcb(prof)
    d = prof.d
    combined = mm.component_ideals(prof, "combined")
    left = intersect_all(combined[:2])
    row2 = [s - f * b[0] ** d, b[0] - b[3], b[1] - b[2], b[0] ** d - b[1] ** d]
    right = prof.ideal([c[3] - c[0], c[2] - c[1], c[0] - c[1] * b[0] ** d] + [ci * g for ci in c for g in row2])
    _equal_check(rec, "first_two_rows_sum_product_form", left, right)


def _split_cross_check(prof, rec):
    split = [cs for cs in mm.build_components(prof, "split") if cs.row == 2]
    combined = [cs for cs in mm.build_components(prof, "combined") if cs.row == 2][0]
    meet = intersect_all([cs.ideal(prof.ring) for cs in split])
    _equal_check(rec, f"split_row2_meet_equals_combined:{_tag(prof)}", meet, combined.ideal(prof.ring))
    b1, b2 = prof.x["b1"], prof.x["b2"]
    prod = prof.ring.one
    for cs in split:
        prod = prod * (b1**prof.i - b2**prof.i * cs.alpha)
    want = b1**prof.d - b2**prof.d
    rec.add(f"alpha_product_identity:{_tag(prof)}", prod == want,
            **({} if prod == want else {"witness": _p(prod - want)}))
    rec.add(f"alphas_are_roots:{_tag(prof)}",
            all(prof.field.normalize(cs.alpha ** prof.d_prime) == 1 for cs in split),
            alphas=[int(cs.alpha) for cs in split])


def _prop4(inst, mode, opts, rec):
    for prof in _profiles(inst, opts):
        comps = mm.component_ideals(prof, mode, minimal_only=True)
        meet = rec.timed(f"intersection:{_tag(prof)}", intersect_all, comps)
        M = mm.build_minimal_intersection(prof)
        _equal_check(rec, f"minimal_intersection:{_tag(prof)}", meet, M)
        s, c, b = prof.x["s"], prof.x["c2"], (prof.x["b1"], prof.x["b2"])
        extra = s * c * (b[0] ** prof.d - b[1] ** prof.d)
        _member_check(rec, f"J_strictly_smaller:{_tag(prof)}", mm.build_J(prof), extra, expect=False)
    return inst.short()


def _prop5(inst, mode, opts, rec):
    for prof in _profiles(inst, opts):
        tag = _tag(prof)
        J = mm.build_J(prof)
        rows = mm.radical_rows(prof, mode)
        meet = rec.timed(f"intersection:{tag}", intersect_all, rows)
        _equal_check(rec, f"radical_rows_equal_formula:{tag}", meet, mm.build_radical(prof))
        if prof.i > 1:
            # the form the row intersection takes when p divides d
            _equal_check(rec, f"radical_rows_equal_Jd_form:{tag}", meet, mm.build_radical_display(prof))
        rad = mm.build_radical(prof)
        outside = [g for g in J.gens if not rad.contains(g)]
        rec.add(f"J_in_radical_formula:{tag}", not outside, **({"witness": _p(outside[0])} if outside else {}))
        bad = [g for g in rad.gens if not radical_member(J, g)]
        rec.add(f"radical_formula_in_sqrt_J:{tag}", not bad, **({"witness": _p(bad[0])} if bad else {}))
        if prof.shortened:
            comps = mm.component_ideals(prof, mode, minimal_only=True)
            off = []
            for k, (C, P) in enumerate(zip(comps, rows)):
                if not P.contains_ideal(C):
                    off.append((k, "component not inside prime"))
                else:
                    miss = [g for g in P.gens if not radical_member(C, g)]
                    if miss:
                        off.append((k, _p(miss[0])))
            rec.add(f"rows_are_radicals_of_components:{tag}", not off,
                    **({"witness": f"row {off[0][0] + 1}: {off[0][1]}"} if off else {}))
    return inst.short()


def _lemma2(inst, mode, opts, rec):
    ids = mm.reduced_ideals(inst.d, inst.field)
    L = ids["L"]
    f = L.ring.var("f")
    _equal_check(rec, "L_colon_f", colon(L, f), ids["L_colon_f"])
    lex = Lex()
    _equal_check(rec, "leading_ideal_lex", L.leading_ideal(lex), ids["leading"])
    _equal_check(rec, "L_plus_f", L + Ideal(L.ring, [f]), ids["L_plus_f"])
    sq = ids["sqrt_L"]
    rec.add("sqrt_L_contains_L", sq.contains_ideal(L))
    bad = [g for g in sq.gens if not radical_member(L, g)]
    rec.add("sqrt_L_in_radical", not bad, **({"witness": _p(bad[0])} if bad else {}))
    comp, sqrt, sc2 = mm.embedded_component_short(inst)
    _member_check(rec, "s*c2_not_in_L", comp, sc2, expect=False)
    _equal_check(rec, "L_colon_sc2_equals_sqrt", colon(comp, sc2), sqrt)
    return inst.short()


def _lemma3(inst, mode, opts, rec):
    prof = inst.full()
    w = mm.embedded_witness(prof)
    comps = mm.component_ideals(prof, "combined", minimal_only=True)
    for cs, C in zip([c for c in mm.build_components(prof) if not c.embedded], comps):
        _member_check(rec, f"in_row{cs.row}", C, w)
    J = mm.build_J(prof)
    nf = J.normal_form(w)
    rec.add("not_in_J", not nf.is_zero, witness=_p(w), normal_form=_p(nf))
    rec.add("in_sqrt_J", radical_member(J, w), polynomial=_p(w))
    k = membership_power(J, w, opts["max_power"])
    rec.add("power_in_J", k is not None, power=k)
    return prof


def _prop6(inst, mode, opts, rec):
    if inst.i > 1:
        raise UnsupportedClaimError("prop6 is checked only when the characteristic does not divide d")
    prof = inst.full()
    d = prof.d
    want = 2 * d - 1
    dmax = opts.get("max_deg") or want + 1
    if dmax < want:
        raise UnsupportedClaimError(f"prop6 needs max_deg >= 2d-1 = {want}")
    target = mm.certificate_target(prof)
    J_gens = mm.j_generators(prof)
    rad_gens = list(mm.build_radical(prof).gens)
    restricted = Restriction.block_homogeneous(mm.BIHOMOGENEITY_BLOCKS, mm.COEFFICIENT_VARIABLES)
    modes = []
    if d <= opts["prop6_full_max_d"]:
        modes.append(("FullRing", Restriction.full_ring()))
    if d <= opts["prop6_restricted_max_d"]:
        modes.append(("Restricted", restricted))
    if not modes:
        raise UnsupportedClaimError(f"prop6 is run only for d <= {opts['prop6_restricted_max_d']}")
    found = {}
    for label, restriction in modes:
        for gname, gens in (("J", J_gens), ("radical", rad_gens)):
            res = rec.timed(f"{label}:{gname}", min_certificate_degree, target, gens, dmax, restriction)
            found[(label, gname)] = res.degree
            detail = {"D_star": res.degree, "expected": want, "restriction": restriction.describe(),
                      "sizes": {str(k): list(v) for k, v in res.sizes.items()}}
            if res.found:
                detail["certificate"] = [_p(r) for r in res.certificate.coefficients]
            else:
                detail["witness"] = f"no certificate up to degree {dmax}"
            rec.add(f"D_star:{label}:{gname}", res.degree == want, **detail)
            if res.found:
                nxt = find_certificate(CertificateQuery(target, tuple(gens), res.degree + 1, restriction))
                rec.add(f"monotone:{label}:{gname}", nxt is not None, degree=res.degree + 1)
    if len(modes) == 2:
        agree = all(found[("FullRing", g)] == found[("Restricted", g)] for g in ("J", "radical"))
        rec.add("modes_agree", agree, **({} if agree else {"witness": str(found)}))
    # the shape of the hand-built certificate: r4 = 1, r1 = -1, r6 = b4^d, r5 = -b1^d
    b1, b4 = prof.x["b1"], prof.x["b4"]
    one = prof.ring.one
    pinned = {5: one, 2: -one, 7: b4**d, 6: -(b1**d)}
    label, restriction = modes[-1]
    res = min_certificate_degree(target, J_gens, want, restriction, pinned=pinned, start=want)
    rec.add("hand_certificate_shape", res.found, restriction=restriction.describe(),
            **({} if res.found else {"witness": "pinned system infeasible at 2d-1"}))
    # informational: the generator list J + s*c2*(b1^d - b2^d)
    if opts.get("report_minimal", True):
        gens = list(mm.build_minimal_intersection(prof).gens)
        res = min_certificate_degree(target, gens, dmax, modes[-1][1])
        rec.info["minimal_intersection_D_star"] = res.degree
    return prof


def _heights(inst, mode, opts, rec):
    prof = inst.full()
    primes = mm.associated_primes(prof)
    got = []
    for k, P in enumerate(primes):
        dim = dimension(P)
        got.append(prof.ring.nvars - dim)
        lex_dim = dimension(P, Lex())
        if lex_dim != dim:
            rec.add(f"order_independent:row{k + 1}", False, witness=f"grevlex {dim}, lex {lex_dim}")
    rec.add("heights", tuple(got) == mm.PRIME_HEIGHTS, heights=got, expected=list(mm.PRIME_HEIGHTS),
            **({} if tuple(got) == mm.PRIME_HEIGHTS else {"witness": str(got)}))
    emb = primes[5]
    rec.add("embedded_contains_row3", emb.contains_ideal(primes[2]))
    minimal = primes[:5]
    nested = [(a, b) for a in range(5) for b in range(5) if a != b and minimal[b].contains_ideal(minimal[a])]
    rec.add("minimal_primes_incomparable", not nested,
            **({"witness": f"row {nested[0][0] + 1} inside row {nested[0][1] + 1}"} if nested else {}))
    return prof


_RUNNERS = {
    "identities": _identities,
    "theorem1": _theorem1,
    "prop4": _prop4,
    "prop5": _prop5,
    "lemma2_colon": _lemma2,
    "lemma3": _lemma3,
    "prop6": _prop6,
    "heights": _heights,
}


def supported(claim, inst, mode="combined"):
    """``None`` if the combination can be verified, else the reason it cannot."""
    if claim not in _RUNNERS:
        return f"unknown claim {claim!r}"
    if mode not in ("combined", "split"):
        return f"unknown mode {mode!r}"
    if mode == "split":
        if claim not in SPLIT_CLAIMS:
            return f"{claim} has no split-mode variant"
        try:
            mm.roots_of_unity(inst.d_prime, inst.field)
        except UnsupportedClaimError as exc:
            return str(exc)
    if claim == "prop6" and inst.i > 1:
        return "prop6 is checked only when the characteristic does not divide d"
    return None


def verify(claim, inst, mode="combined", **options):
    """Run one claim and return its :class:`VerificationReport`.

    Raises :class:`UnsupportedClaimError` for combinations that cannot be
    checked (see :func:`supported`).
    """
    reason = supported(claim, inst, mode)
    if reason:
        raise UnsupportedClaimError(reason)
    opts = {**DEFAULTS, **options}
    rec = _Recorder()
    t0 = time.perf_counter()
    used = _RUNNERS[claim](inst, mode, opts, rec)
    rec.timings["total"] = round(time.perf_counter() - t0, 6)
    params = {"d": inst.d, "d_prime": inst.d_prime, "i": inst.i, "field": str(inst.field), "mode": mode}
    return VerificationReport(claim, params, rec.checks, str(used.ring), rec.timings, rec.info)


def _verify_star(args):
    claim, inst, mode, options = args
    return verify(claim, inst, mode, **options)


def verify_many(claims, inst, mode="combined", jobs=1, **options):
    """Verify several claims; returns ``(reports, skipped)`` in claim order.

    ``skipped`` lists ``(claim, reason)`` for combinations that cannot be
    checked.  With ``jobs > 1`` claims run in worker processes.
    """
    runnable, skipped = [], []
    for c in claims:
        reason = supported(c, inst, mode)
        (skipped.append((c, reason)) if reason else runnable.append(c))
    tasks = [(c, inst, mode, options) for c in runnable]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_verify_star, tasks))
    else:
        reports = [_verify_star(t) for t in tasks]
    return reports, skipped
