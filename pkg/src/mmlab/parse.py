"""Text formats: polynomial expressions, session files, canonical rendering, JSON reports.

Polynomial grammar (``^`` binds tighter than ``*``/``/``, unary minus allowed)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' INT)?
    atom   := INT | NAME | '(' expr ')'

Division is accepted only by a non-zero constant, which is what rendered
rational coefficients (``3/2*x``) need.  Multiplication is always explicit.

Session files hold one ring and any number of declarations::

    ring Q[s,f,s1,f1,c1,c2,c3,c4,b1,b2,b3,b4];
    poly g = s*(c4 - c1);
    ideal J = s1 - s*c1, f1 - s*c4;
    task verify theorem1 d=2;
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import ParseError
from .ring import FieldSpec, Polynomial, RingSpec

REPORT_SCHEMA = "mmlab-report-v1"

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<num>\d+(?:\.\d*)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),;=\[\]])"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op", "eof"
    text: str
    line: int
    column: int


def tokenize(text):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                tokens.append(Token(kind, lexeme, line, col))
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Stream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    @property
    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def accept(self, text):
        if self.peek.kind == "op" and self.peek.text == text:
            return self.next()
        return None

    def expect(self, text, what=None):
        tok = self.peek
        if tok.kind == "op" and tok.text == text:
            return self.next()
        raise ParseError(f"expected {what or repr(text)}, found {_describe(tok)}", tok.line, tok.column)

    def expect_name(self, what="a name"):
        tok = self.peek
        if tok.kind != "name":
            raise ParseError(f"expected {what}, found {_describe(tok)}", tok.line, tok.column)
        return self.next()


def _describe(tok):
    return "end of input" if tok.kind == "eof" else repr(tok.text)


# --------------------------------------------------------------------------
# polynomials


class _PolyParser:
    def __init__(self, stream, ring, names=None):
        self.s = stream
        self.ring = ring
        self.names = names or {}

    def expr(self):
        value = self.term()
        while True:
            if self.s.accept("+"):
                value = value + self.term()
            elif self.s.accept("-"):
                value = value - self.term()
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            if self.s.accept("*"):
                value = value * self.unary()
            elif self.s.peek.kind == "op" and self.s.peek.text == "/":
                tok = self.s.next()
                divisor = self.unary()
                if not divisor.is_constant() or divisor.is_zero:
                    raise ParseError("division is only allowed by a non-zero constant", tok.line, tok.column)
                value = value * self.ring.field.inv(divisor.coefficient((0,) * self.ring.nvars))
            else:
                tok = self.s.peek
                if tok.kind in ("name", "num") or (tok.kind == "op" and tok.text == "("):
                    raise ParseError(
                        f"expected an operator before {tok.text!r} (multiplication must be explicit)",
                        tok.line,
                        tok.column,
                    )
                return value

    def unary(self):
        if self.s.accept("-"):
            return -self.unary()
        if self.s.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        caret = self.s.accept("^")
        if caret is None:
            return base
        tok = self.s.peek
        if tok.kind != "num" or not tok.text.isdigit():
            raise ParseError(
                f"malformed exponent {_describe(tok)}: expected a non-negative integer", tok.line, tok.column
            )
        self.s.next()
        if self.s.peek.kind == "op" and self.s.peek.text == "^":
            t = self.s.peek
            raise ParseError("chained exponents need parentheses", t.line, t.column)
        return base ** int(tok.text)

    def atom(self):
        tok = self.s.next()
        if tok.kind == "num":
            if not tok.text.isdigit():
                raise ParseError(f"non-integer literal {tok.text!r}", tok.line, tok.column)
            return self.ring.constant(int(tok.text))
        if tok.kind == "name":
            if tok.text in self.ring._index:
                return self.ring.var(tok.text)
            if tok.text in self.names:
                return self.names[tok.text]
            raise ParseError(f"unknown identifier {tok.text!r}", tok.line, tok.column)
        if tok.kind == "op" and tok.text == "(":
            value = self.expr()
            close = self.s.peek
            if not (close.kind == "op" and close.text == ")"):
                raise ParseError(f"unbalanced parentheses: expected ')', found {_describe(close)}", close.line, close.column)
            self.s.next()
            return value
        if tok.kind == "op" and tok.text == ")":
            raise ParseError("unbalanced parentheses: unexpected ')'", tok.line, tok.column)
        raise ParseError(f"expected a number, variable or '(', found {_describe(tok)}", tok.line, tok.column)


def parse_polynomial(text, ring, names=None):
    """Parse ``text`` into a canonical :class:`Polynomial` of ``ring``.

    ``names`` optionally maps extra identifiers to already-built polynomials.
    """
    stream = _Stream(tokenize(text))
    value = _PolyParser(stream, ring, names).expr()
    tok = stream.peek
    if tok.kind != "eof":
        if tok.kind == "op" and tok.text == ")":
            raise ParseError("unbalanced parentheses: unexpected ')'", tok.line, tok.column)
        raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column)
    return value


def parse_polynomials(texts, ring, names=None):
    return [parse_polynomial(t, ring, names) for t in texts]


def parse_ring(text):
    """Parse ``Q[x,y]`` or ``Fp(7)[x,y]`` (the part after the ``ring`` keyword)."""
    stream = _Stream(tokenize(text))
    ring = _parse_ring(stream)
    if stream.peek.kind != "eof":
        tok = stream.peek
        raise ParseError(f"unexpected {_describe(tok)}", tok.line, tok.column)
    return ring


def _parse_ring(s):
    tok = s.expect_name("a field name (Q or Fp)")
    if tok.text in ("Q", "QQ"):
        fld = FieldSpec(0)
    elif tok.text in ("Fp", "GF", "F"):
        s.expect("(")
        num = s.next()
        if num.kind != "num" or not num.text.isdigit():
            raise ParseError("expected a prime characteristic", num.line, num.column)
        try:
            fld = FieldSpec(int(num.text))
        except ValueError as exc:
            raise ParseError(str(exc), num.line, num.column) from None
        s.expect(")")
    else:
        raise ParseError(f"unknown field {tok.text!r}", tok.line, tok.column)
    s.expect("[")
    names = []
    if not s.accept("]"):
        while True:
            v = s.expect_name("a variable name")
            if v.text in names:
                raise ParseError(f"duplicate variable {v.text!r}", v.line, v.column)
            names.append(v.text)
            if s.accept("]"):
                break
            s.expect(",", "',' or ']'")
    return RingSpec(tuple(names), fld)


# --------------------------------------------------------------------------
# sessions


# task name -> positional argument kinds ("ideal" / "poly" / "word")
TASKS = {
    "verify": ("word",),
    "gb": ("ideal",),
    "nf": ("ideal", "poly"),
    "member": ("ideal", "poly"),
    "radical-member": ("ideal", "poly"),
    "equal": ("ideal", "ideal"),
    "dim": ("ideal",),
    "intersect": ("ideal", "ideal"),
    "colon": ("ideal", "poly"),
    "eliminate": ("ideal",),
}


@dataclass
class Task:
    name: str
    args: tuple = ()
    options: dict = field(default_factory=dict)

    def render(self):
        parts = ["task", self.name, *self.args]
        parts += [f"{k}={v}" for k, v in self.options.items()]
        return " ".join(parts) + ";"


@dataclass
class SessionFile:
    ring: RingSpec
    ideals: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    tasks: list = field(default_factory=list)


def parse_session(text):
    """Parse a session file into a :class:`SessionFile`."""
    from .ideal import Ideal

    s = _Stream(tokenize(text))
    ring = None
    session = None
    while s.peek.kind != "eof":
        kw = s.expect_name("a statement keyword")
        if kw.text == "ring":
            if ring is not None:
                raise ParseError("only one ring declaration is allowed", kw.line, kw.column)
            ring = _parse_ring(s)
            session = SessionFile(ring)
        elif kw.text in ("ideal", "poly", "task"):
            if ring is None:
                raise ParseError(f"'{kw.text}' before the ring declaration", kw.line, kw.column)
            if kw.text == "task":
                session.tasks.append(_parse_task(s, session))
            else:
                name = s.expect_name(f"a name for the {kw.text}")
                if name.text in ring._index or name.text in session.ideals or name.text in session.polys:
                    raise ParseError(f"redeclaration of {name.text!r}", name.line, name.column)
                s.expect("=")
                parser = _PolyParser(s, ring, session.polys)
                if kw.text == "poly":
                    session.polys[name.text] = parser.expr()
                else:
                    gens = [parser.expr()]
                    while s.accept(","):
                        gens.append(parser.expr())
                    session.ideals[name.text] = Ideal(ring, gens)
        else:
            raise ParseError(f"unknown statement {kw.text!r}", kw.line, kw.column)
        s.expect(";", "';'")
    if session is None:
        raise ParseError("missing ring declaration", 1, 1)
    return session


def _parse_task(s, session):
    first = s.expect_name("a task name")
    name = first.text
    while s.peek.kind == "op" and s.peek.text == "-":
        s.next()
        name += "-" + s.expect_name("a task name").text
    if name not in TASKS:
        raise ParseError(f"unknown task {name!r}", first.line, first.column)
    args, options = [], {}
    while not (s.peek.kind == "op" and s.peek.text == ";"):
        tok = s.next()
        if tok.kind not in ("name", "num"):
            raise ParseError(f"unexpected {_describe(tok)} in task", tok.line, tok.column)
        if s.accept("="):
            val = s.next()
            if val.kind not in ("name", "num"):
                raise ParseError(f"bad value {_describe(val)} for option {tok.text!r}", val.line, val.column)
            options[tok.text] = val.text
        else:
            args.append((tok.text, tok))
    kinds = TASKS[name]
    if len(args) != len(kinds):
        raise ParseError(f"task {name!r} takes {len(kinds)} argument(s), got {len(args)}", first.line, first.column)
    for (text, tok), kind in zip(args, kinds):
        table = {"ideal": session.ideals, "poly": session.polys}.get(kind)
        if table is not None and text not in table:
            raise ParseError(f"undeclared {kind} {text!r}", tok.line, tok.column)
    return Task(name, tuple(a for a, _ in args), options)


# --------------------------------------------------------------------------
# rendering


def render_coefficient(c, fld):
    c = fld.symmetric(c)
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render_polynomial(p, order=None):
    """Canonical text: terms descending in ``order`` (default: the ring's)."""
    if p.is_zero:
        return "0"
    ring = p.ring
    fld = ring.field
    out = []
    for coeff, mono in p.terms(order):
        c = fld.symmetric(coeff)
        neg = c < 0
        c = -c if neg else c
        factors = [
            v if e == 1 else f"{v}^{e}" for v, e in zip(ring.variables, mono.exponents) if e
        ]
        if not factors:
            body = render_coefficient(c, FieldSpec(0))
        elif c == 1:
            body = "*".join(factors)
        else:
            body = render_coefficient(c, FieldSpec(0)) + "*" + "*".join(factors)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def render(entity, order=None):
    """Render a ring, polynomial, ideal, Groebner basis, session or list of those."""
    from .groebner import GroebnerBasis
    from .ideal import Ideal

    if isinstance(entity, RingSpec):
        return str(entity)
    if isinstance(entity, Polynomial):
        return render_polynomial(entity, order)
    if isinstance(entity, GroebnerBasis):
        return ", ".join(render_polynomial(g, entity.order) for g in entity.elements)
    if isinstance(entity, Ideal):
        return ", ".join(render_polynomial(g, order) for g in entity.gens) or "0"
    if isinstance(entity, SessionFile):
        lines = [f"ring {entity.ring};"]
        lines += [f"poly {k} = {render_polynomial(v)};" for k, v in entity.polys.items()]
        lines += [f"ideal {k} = {render(v)};" for k, v in entity.ideals.items()]
        lines += [t.render() for t in entity.tasks]
        return "\n".join(lines) + "\n"
    if isinstance(entity, (list, tuple)):
        return ", ".join(render(e, order) for e in entity)
    raise TypeError(f"cannot render {type(entity).__name__}")


# --------------------------------------------------------------------------
# reports


def report_dict(reports, ring=None):
    reports = list(reports)
    if ring is None and reports:
        ring = reports[0].ring
    return {
        "schema": REPORT_SCHEMA,
        "ring": str(ring) if ring is not None else None,
        "claims": [r.to_dict() for r in reports],
    }


def emit_report(reports, ring=None, indent=2):
    """Serialise verification reports as an ``mmlab-report-v1`` JSON document."""
    if hasattr(reports, "to_dict"):
        reports = [reports]
    return json.dumps(report_dict(reports, ring), indent=indent, sort_keys=True)


def strip_timings(doc):
    """Copy of a report document with every ``timings`` field removed (for diffing)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    return _strip(doc)


def _strip(doc):
    if isinstance(doc, dict):
        return {k: _strip(v) for k, v in doc.items() if k != "timings"}
    if isinstance(doc, list):
        return [_strip(v) for v in doc]
    return doc
