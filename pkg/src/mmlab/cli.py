"""``mmlab`` command line.

Exit status: 0 when every requested claim passes, 1 when a claim fails
(the witness is printed), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import mayr_meyer as mm
from .certificates import Restriction, min_certificate_degree
from .exceptions import MMLabError
from .ideal import colon, dimension, eliminate, ideal_equal, intersect, radical_member
from .parse import REPORT_SCHEMA, emit_report, parse_polynomial, parse_session, render, render_polynomial
from .ring import FieldSpec, order_from_name
from .verify import CLAIMS, verify_many

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# helpers


def _field(args):
    p = getattr(args, "char", 0) or 0
    try:
        return FieldSpec(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _instance(args, d=None):
    d = args.d if d is None else d
    if d is None or d < 1:
        raise UsageError("--d must be a positive integer")
    return mm.MayrMeyerInstance(d, _field(args))


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_session(text)


def _ideal(session, name):
    try:
        return session.ideals[name]
    except KeyError:
        raise UsageError(f"no ideal named {name!r} in the session") from None


def _poly(session, text):
    return parse_polynomial(text, session.ring, session.polys)


def _out(args, doc, text):
    """Write ``doc`` as JSON (``--json``) or ``text``; honours ``--output``."""
    payload = (json.dumps(doc, indent=2, sort_keys=True) if isinstance(doc, dict) else doc) if args.json else text
    if getattr(args, "output", None):
        Path(args.output).write_text(payload + "\n", encoding="utf-8")
    else:
        print(payload)


def _result_doc(ring, command, result):
    return {"schema": REPORT_SCHEMA, "ring": str(ring), "command": command, "result": result}


# --------------------------------------------------------------------------
# commands


def cmd_gb(args):
    session = _load(args.session)
    I = _ideal(session, args.ideal)
    gb = I.groebner_basis(order_from_name(args.order))
    text = render(gb)
    _out(args, _result_doc(I.ring, "gb", {"order": str(gb.order), "basis": [render_polynomial(g, gb.order) for g in gb]}), text)
    return EXIT_OK


def cmd_nf(args):
    session = _load(args.session)
    I = _ideal(session, args.ideal)
    order = order_from_name(args.order)
    nf = I.groebner_basis(order).normal_form(_poly(session, args.poly))
    text = render_polynomial(nf, order)
    _out(args, _result_doc(I.ring, "nf", {"normal_form": text}), text)
    return EXIT_OK


def cmd_ideal(args):
    session = _load(args.session)
    I = _ideal(session, args.ideal)
    op = args.op
    if op in ("intersect", "equal"):
        other = _ideal(session, args.arg)
        if op == "intersect":
            res = intersect(I, other)
            value = [render_polynomial(g) for g in res.groebner_basis()]
            text = ", ".join(value) or "0"
        else:
            value = ideal_equal(I, other)
            text = str(value).lower()
    elif op in ("colon", "member", "radical-member"):
        f = _poly(session, args.arg)
        if op == "colon":
            if f.is_zero:
                raise UsageError("colon by the zero polynomial")
            value = [render_polynomial(g) for g in colon(I, f).groebner_basis()]
            text = ", ".join(value)
        elif op == "member":
            value = I.contains(f)
            text = str(value).lower()
        else:
            value = radical_member(I, f)
            text = str(value).lower()
    elif op == "eliminate":
        names = [v.strip() for v in (args.arg or "").split(",") if v.strip()]
        try:
            res = eliminate(I, names)
        except KeyError as exc:
            raise UsageError(f"unknown variable {exc.args[0]!r}") from None
        value = [render_polynomial(g) for g in res.gens]
        text = ", ".join(value) or "0"
    else:  # dim
        value = dimension(I)
        text = str(value)
    _out(args, _result_doc(I.ring, f"ideal {op}", value), text)
    return EXIT_OK


def _generated_session(inst, mode, with_tasks):
    lines = [f"# J(1,{inst.d}) over {inst.field}: d' = {inst.d_prime}, i = {inst.i}", f"ring {inst.ring};"]

    def ideal(name, gens):
        lines.append(f"ideal {name} = " + ", ".join(render_polynomial(g) for g in gens) + ";")

    ideal("J", mm.j_generators(inst))
    for k, cs in enumerate(mm.build_components(inst, mode), 1):
        suffix = f"  # row {cs.row}" + (f", alpha = {cs.alpha}" if cs.alpha is not None else "") + (", embedded" if cs.embedded else "")
        ideal(f"C{k}", cs.gens)
        lines[-1] += suffix
    ideal("M", mm.build_minimal_intersection(inst).gens)
    ideal("RAD", mm.build_radical(inst).gens)
    for k, P in enumerate(mm.radical_rows(inst, mode), 1):
        ideal(f"P{k}", P.gens)
    lines.append(f"poly target = {render_polynomial(mm.certificate_target(inst))};")
    lines.append(f"poly w = {render_polynomial(mm.embedded_witness(inst))};")
    if with_tasks:
        for claim in CLAIMS:
            lines.append(f"task verify {claim} d={inst.d};")
    return "\n".join(lines)


def cmd_mm_gen(args):
    inst = _instance(args)
    if args.short:
        inst = inst.short()
    _out(args, _generated_session(inst, args.mode, args.tasks), _generated_session(inst, args.mode, args.tasks))
    return EXIT_OK


def _options(args):
    opts = {}
    if getattr(args, "max_deg", None) is not None:
        opts["max_deg"] = args.max_deg
    if getattr(args, "full_max_d", None) is not None:
        opts["full_max_d"] = args.full_max_d
    return opts


def _report(args, reports, skipped, ring):
    if args.json:
        doc = json.loads(emit_report(reports, ring))
        if skipped:
            doc["skipped"] = [{"claim": c, "reason": r} for c, r in skipped]
        _out(args, doc, "")
    else:
        lines = [r.summary() for r in reports]
        lines += [f"SKIP {c}: {r}" for c, r in skipped]
        passed = sum(r.passed for r in reports)
        lines.append(f"{passed}/{len(reports)} claims passed" + (f", {len(skipped)} skipped" if skipped else ""))
        _out(args, None, "\n".join(lines))
    for r in reports:
        if not r.passed:
            print(f"witness for {r.claim}: {json.dumps(r.witness, sort_keys=True)}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_mm_verify(args):
    inst = _instance(args)
    if args.claim == "all":
        claims = CLAIMS
    elif args.claim in CLAIMS:
        claims = (args.claim,)
    else:
        raise UsageError(f"unknown claim {args.claim!r}; choose from all, {', '.join(CLAIMS)}")
    reports, skipped = verify_many(claims, inst, args.mode, jobs=args.jobs, **_options(args))
    if args.claim != "all" and skipped:
        raise UsageError(f"unsupported: {skipped[0][1]}")
    return _report(args, reports, skipped, reports[0].ring if reports else inst.ring)


_RESTRICTIONS = {
    "full": lambda: Restriction.full_ring(),
    "subring": lambda: Restriction.subring(mm.COEFFICIENT_VARIABLES),
    "restricted": lambda: Restriction.block_homogeneous(mm.BIHOMOGENEITY_BLOCKS, mm.COEFFICIENT_VARIABLES),
}


def cmd_cert(args):
    if args.session:
        session = _load(args.session)
        gens = list(_ideal(session, args.gens).gens)
        target = _poly(session, args.target)
        ring = session.ring
    else:
        inst = _instance(args)
        table = {
            "J": lambda: mm.j_generators(inst),
            "radical": lambda: list(mm.build_radical(inst).gens),
            "minimal": lambda: list(mm.build_minimal_intersection(inst).gens),
        }
        if args.gens not in table:
            raise UsageError(f"--gens must be one of {', '.join(table)} without a session file")
        gens = table[args.gens]()
        ring = inst.ring
        target = parse_polynomial(args.target, ring)
    restriction = _RESTRICTIONS[args.restriction]()
    res = min_certificate_degree(target, gens, args.max_deg, restriction, method=args.method)
    result = {
        "target": render_polynomial(target),
        "restriction": restriction.describe(),
        "D_star": res.degree,
        "feasibility": {str(k): v for k, v in res.feasibility.items()},
        "sizes": {str(k): {"unknowns": u, "equations": e} for k, (u, e) in res.sizes.items()},
    }
    if res.found:
        result["certificate"] = [render_polynomial(r) for r in res.certificate.coefficients]
        lines = [f"D*={res.degree}"]
        u, e = res.sizes[res.degree]
        lines.append(f"system at D*: {u} unknowns, {e} equations")
        lines += [f"r{k} = {render_polynomial(r)}" for k, r in enumerate(res.certificate.coefficients, 1) if not r.is_zero]
    else:
        result["witness"] = f"no certificate up to degree {args.max_deg}"
        lines = [f"no certificate with coefficients of degree <= {args.max_deg}"]
    _out(args, _result_doc(ring, "cert", result), "\n".join(lines))
    return EXIT_OK if res.found else EXIT_FAIL


def cmd_run(args):
    session = _load(args.session)
    ring = session.ring
    out, reports, status = [], [], EXIT_OK
    for task in session.tasks:
        a = task.args
        if task.name == "verify":
            d = int(task.options.get("d", 1))
            inst = mm.MayrMeyerInstance(d, ring.field)
            claims = CLAIMS if a[0] == "all" else (a[0],)
            if a[0] != "all" and a[0] not in CLAIMS:
                raise UsageError(f"unknown claim {a[0]!r}")
            got, skipped = verify_many(claims, inst, task.options.get("mode", "combined"))
            if a[0] != "all" and skipped:
                raise UsageError(f"unsupported: {skipped[0][1]}")
            reports += got
            out += [r.summary() for r in got]
            if not all(r.passed for r in got):
                status = EXIT_FAIL
            continue
        I = session.ideals[a[0]]
        if task.name == "gb":
            order = order_from_name(task.options.get("order", "grevlex"))
            value = render(I.groebner_basis(order))
        elif task.name == "nf":
            value = render_polynomial(I.normal_form(session.polys[a[1]]))
        elif task.name == "member":
            value = str(I.contains(session.polys[a[1]])).lower()
        elif task.name == "radical-member":
            value = str(radical_member(I, session.polys[a[1]])).lower()
        elif task.name == "equal":
            value = str(ideal_equal(I, session.ideals[a[1]])).lower()
        elif task.name == "dim":
            value = str(dimension(I))
        elif task.name == "intersect":
            value = render(intersect(I, session.ideals[a[1]]).groebner_basis())
        elif task.name == "colon":
            value = render(colon(I, session.polys[a[1]]).groebner_basis())
        else:  # eliminate
            var = task.options.get("var")
            value = render(eliminate(I, [var] if var else []))
        out.append(f"{task.render()}\n  {value}")
    if args.json:
        doc = json.loads(emit_report(reports, ring))
        doc["tasks"] = out
        _out(args, doc, "")
    else:
        _out(args, None, "\n".join(out))
    return status


# --------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="mmlab", description="Groebner bases, ideal operations and Mayr-Meyer verification.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, session=True):
        if session:
            sp.add_argument("session", help="session file ('-' for stdin)")
        sp.add_argument("--json", action="store_true", help="emit an mmlab-report-v1 JSON document")
        sp.add_argument("--output", "-o", help="write output to this path")

    sp = sub.add_parser("gb", help="reduced Groebner basis of a session ideal")
    common(sp)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    sp.set_defaults(func=cmd_gb)

    sp = sub.add_parser("nf", help="normal form of a polynomial")
    common(sp)
    sp.add_argument("--ideal", required=True)
    sp.add_argument("--poly", required=True, help="expression or declared poly name")
    sp.add_argument("--order", default="grevlex", choices=["grevlex", "lex"])
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("ideal", help="ideal operations on session ideals")
    sp.add_argument("op", choices=["intersect", "colon", "eliminate", "dim", "equal", "member", "radical-member"])
    common(sp)
    sp.add_argument("ideal")
    sp.add_argument("arg", nargs="?", help="second ideal, polynomial, or comma-separated variables")
    sp.set_defaults(func=cmd_ideal)

    mmp = sub.add_parser("mm", help="Mayr-Meyer ideals")
    mmsub = mmp.add_subparsers(dest="mm_command", required=True, parser_class=_Parser)

    def instance_args(sp):
        sp.add_argument("--d", type=int, required=True)
        sp.add_argument("--char", type=int, default=0, help="prime characteristic (default: rationals)")
        sp.add_argument("--mode", default="combined", choices=["combined", "split"])

    sp = mmsub.add_parser("gen", help="write a session file with J(1,d) and its companion ideals")
    instance_args(sp)
    common(sp, session=False)
    sp.add_argument("--short", action="store_true", help="use the 10-variable ring without s1, f1")
    sp.add_argument("--tasks", action="store_true", help="append verify tasks for every claim")
    sp.set_defaults(func=cmd_mm_gen)

    sp = mmsub.add_parser("verify", help="verify claims about J(1,d)")
    instance_args(sp)
    common(sp, session=False)
    sp.add_argument("--claim", default="all", help=f"all or one of {', '.join(CLAIMS)}")
    sp.add_argument("--max-deg", type=int, help="degree cap for the prop6 search")
    sp.add_argument("--full-max-d", type=int, help="largest d checked in the 12-variable ring as well")
    sp.add_argument("--jobs", type=int, default=1, help="verify independent claims in N processes")
    sp.set_defaults(func=cmd_mm_verify)

    sp = sub.add_parser("cert", help="least-degree membership certificate")
    sp.add_argument("session", nargs="?", help="session file; without it the Mayr-Meyer ring is used")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--output", "-o")
    sp.add_argument("--d", type=int)
    sp.add_argument("--char", type=int, default=0)
    sp.add_argument("--target", required=True)
    sp.add_argument("--gens", default="J", help="J, radical, minimal, or a session ideal name")
    sp.add_argument("--max-deg", type=int, default=10)
    sp.add_argument("--restriction", default="full", choices=sorted(_RESTRICTIONS))
    sp.add_argument("--method", default="gauss", choices=["gauss", "fraction-free"])
    sp.set_defaults(func=cmd_cert)

    sp = sub.add_parser("run", help="execute the tasks of a session file")
    common(sp)
    sp.set_defaults(func=cmd_run)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        if getattr(args, "max_deg", None) is not None and args.max_deg < 0:
            raise UsageError("--max-deg must be non-negative")
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (MMLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
