"""Problem-file reader and canonical polynomial printer.

Polynomial grammar (explicit ``*``, integer exponents)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := rational | 'i' | 's' | var | '(' expr ')' | '-' factor

``s`` denotes sqrt(m); ``i`` is accepted as its alias only when m = -1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .numbers import QQ, FieldElement, FieldSpec
from .poly import GREVLEX, Polynomial, VariableContext

__all__ = [
    "ParseError",
    "ProblemFile",
    "parse_field",
    "parse_poly",
    "parse_problem",
    "parse_problem_file",
    "print_poly",
]

RESERVED = frozenset({"i", "s", "field", "vars", "ideal", "symmetry", "options"})
OPTION_KEYS = frozenset({"order", "budget", "radical", "verify"})


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(text: str, line: int, col0: int):
    text = text.replace("−", "-")
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), col0 + start))
        pos = m.end()
    tokens.append(("end", "", col0 + len(text)))
    return tokens


class _PolyParser:
    def __init__(self, text, ctx, field, line, col0):
        self.ctx = ctx
        self.field = field
        self.line = line
        self.tokens = _tokenize(text, line, col0)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        t = self.tokens[self.k]
        self.k += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.line, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return -self.factor()
        if tok[0] == "op" and tok[1] == "+":
            self.take()
            return self.factor()
        p = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num" or "/" in e[1]:
                raise self.error("exponent must be a nonnegative integer", e)
            p = p ** int(e[1])
        return p

    def base(self):
        tok = self.take()
        kind, text, _ = tok
        if kind == "num":
            if "/" in text:
                n, d = (int(x) for x in text.split("/"))
                if d == 0:
                    raise self.error("zero denominator", tok)
                value = Fraction(n, d)
            else:
                value = Fraction(int(text))
            return Polynomial.constant(value, self.ctx, self.field)
        if kind == "name":
            if text == "s" or text == "i":
                if text == "i" and self.field.radicand != -1:
                    raise self.error("'i' is only allowed over Q(i); use 's' for sqrt(m)", tok)
                if not self.field.is_quadratic:
                    raise self.error(f"{text!r} is not available over Q", tok)
                return Polynomial.constant(self.field.root(), self.ctx, self.field)
            if text not in self.ctx:
                raise self.error(f"undeclared variable {text!r}", tok)
            return Polynomial.variable(text, self.ctx, self.field)
        if kind == "op" and text == "(":
            p = self.expr()
            close = self.take()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return p
        if kind == "end":
            raise self.error("unexpected end of expression", tok)
        raise self.error(f"unexpected {text!r}", tok)


def parse_poly(
    text: str,
    ctx: VariableContext,
    field: FieldSpec = QQ,
    *,
    line: int = 1,
    column: int = 1,
) -> Polynomial:
    """Parse one polynomial expression; errors carry line and column."""
    return _PolyParser(text, ctx, field, line, column).parse()


# printing ---------------------------------------------------------------


def _monomial_str(mono, names) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_str(c: FieldElement, mono_s: str) -> Tuple[bool, str]:
    """Return (negative, body) for one term."""
    sym = c.spec.root_symbol
    if not c.b:
        neg, mag = c.a < 0, abs(c.a)
        if not mono_s:
            return neg, str(mag)
        return neg, mono_s if mag == 1 else f"{mag}*{mono_s}"
    if not c.a:
        neg, mag = c.b < 0, abs(c.b)
        coef = sym if mag == 1 else f"{mag}*{sym}"
    else:
        neg = c.a < 0
        a, b = (-c.a, -c.b) if neg else (c.a, c.b)
        bmag = abs(b)
        bs = sym if bmag == 1 else f"{bmag}*{sym}"
        coef = f"({a} {'-' if b < 0 else '+'} {bs})"
    return neg, coef if not mono_s else f"{coef}*{mono_s}"


def print_poly(p: Polynomial) -> str:
    """Canonical form: descending grevlex terms, ``*`` and ``^`` explicit."""
    if p.is_zero():
        return "0"
    out = []
    for k, (mono, c) in enumerate(p.sorted_terms(GREVLEX)):
        neg, body = _term_str(c, _monomial_str(mono, p.context.names))
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# problem files ------------------------------------------------------------

_FIELD = re.compile(r"^Q\s*(?:\(\s*(?:(?P<i>i)|sqrt\s*\(?\s*(?P<m>[-+]?\s*\d+)\s*\)?)\s*\))?$")


def parse_field(text: str, line: int = 1, column: int = 1) -> FieldSpec:
    m = _FIELD.match(text.strip())
    if not m:
        raise ParseError(f"invalid field spec {text.strip()!r}", line, column)
    if m.group("i"):
        return FieldSpec(-1)
    if m.group("m") is None:
        return QQ
    radicand = int(m.group("m").replace(" ", ""))
    try:
        return FieldSpec(radicand)
    except ValueError as exc:
        raise ParseError(f"invalid field spec: {exc}", line, column) from None


@dataclass
class ProblemFile:
    field: FieldSpec
    context: VariableContext
    ideal: List[Polynomial]
    symmetry: Optional[List[Polynomial]] = None
    options: Dict[str, str] = dc_field(default_factory=dict)


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse_problem_file(text: str, *, require_symmetry: bool = True) -> ProblemFile:
    """Parse the line-oriented problem format into a :class:`ProblemFile`."""
    field: Optional[FieldSpec] = None
    ctx: Optional[VariableContext] = None
    sections: Dict[str, List[Tuple[int, int, str]]] = {}
    section_line: Dict[str, int] = {}
    current = None
    last_line = 1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = _strip_comment(raw)
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        head = stripped.split(None, 1)[0]
        if head == "field":
            if field is not None:
                raise ParseError("duplicate field declaration", lineno, col)
            field = parse_field(stripped[len("field"):], lineno, col)
            current = None
        elif head == "vars":
            if ctx is not None:
                raise ParseError("duplicate vars declaration", lineno, col)
            names = stripped.split()[1:]
            for nm in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                    raise ParseError(f"invalid variable name {nm!r}", lineno, col)
                if nm in RESERVED:
                    raise ParseError(f"{nm!r} is reserved and cannot be a variable", lineno, col)
            if not names:
                raise ParseError("vars declaration is empty", lineno, col)
            try:
                ctx = VariableContext(names)
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
            current = None
        elif stripped.rstrip(":").strip() in ("ideal", "symmetry", "options") and stripped.endswith(":"):
            current = stripped[:-1].strip()
            if current in sections:
                raise ParseError(f"duplicate {current} section", lineno, col)
            sections[current] = []
            section_line[current] = lineno
        else:
            if current is None:
                raise ParseError(f"unexpected line outside any section: {stripped!r}", lineno, col)
            sections[current].append((lineno, col, line.strip()))

    if field is None:
        raise ParseError("missing field declaration", last_line, 1)
    if ctx is None:
        raise ParseError("missing vars declaration", last_line, 1)
    if "ideal" not in sections:
        raise ParseError("missing ideal section", last_line, 1)

    ideal = [parse_poly(t, ctx, field, line=ln, column=c) for ln, c, t in sections["ideal"]]
    if not ideal:
        raise ParseError("ideal must have at least one generator", section_line["ideal"], 1)

    symmetry = None
    if "symmetry" in sections:
        rows = sections["symmetry"]
        symmetry = [parse_poly(t, ctx, field, line=ln, column=c) for ln, c, t in rows]
        if len(symmetry) != len(ctx):
            ln = rows[-1][0] if rows else section_line["symmetry"]
            raise ParseError(
                f"symmetry must have exactly {len(ctx)} components (one per variable), "
                f"got {len(symmetry)}",
                ln,
                1,
            )
    elif require_symmetry:
        raise ParseError("missing symmetry section", last_line, 1)

    options: Dict[str, str] = {}
    for ln, c, t in sections.get("options", []):
        if "=" not in t:
            raise ParseError(f"expected key = value, got {t!r}", ln, c)
        key, value = (x.strip() for x in t.split("=", 1))
        if key not in OPTION_KEYS:
            raise ParseError(f"unknown option {key!r}", ln, c)
        options[key] = value
    return ProblemFile(field, ctx, ideal, symmetry, options)


def _bool_option(value: str, key: str) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "1", "on"):
        return True
    if v in ("false", "no", "0", "off"):
        return False
    raise ParseError(f"option {key} expects a boolean, got {value!r}")


def parse_problem(text: str):
    """Parse and validate a problem file into a DescentProblem."""
    from .problem import DescentOptions, DescentProblem
    from .poly import MonomialOrder

    pf = parse_problem_file(text, require_symmetry=True)
    opts = DescentOptions()
    try:
        if "order" in pf.options:
            opts.order = MonomialOrder.from_name(pf.options["order"])
        if "budget" in pf.options:
            opts.budget = int(pf.options["budget"])
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if "radical" in pf.options:
        opts.radical = _bool_option(pf.options["radical"], "radical")
    if "verify" in pf.options:
        opts.verify = _bool_option(pf.options["verify"], "verify")
    return DescentProblem.build(pf.field, pf.context, pf.ideal, pf.symmetry, opts)
