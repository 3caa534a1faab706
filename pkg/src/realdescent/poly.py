"""Sparse multivariate polynomials over Q or Q(sqrt(m)).

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`~realdescent.numbers.FieldElement` coefficients, tied to a
:class:`VariableContext` that names the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .numbers import QQ, FieldElement, FieldSpec, IncompatibleFieldError

__all__ = [
    "ContextMismatchError",
    "Monomial",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "PolyMap",
    "Polynomial",
    "VariableContext",
    "compose",
    "conjugate_map",
    "conjugate_poly",
    "trace",
    "trace_pair",
]

Monomial = Tuple[int, ...]


class ContextMismatchError(ValueError):
    """Polynomials or maps live over different variable contexts."""


@dataclass(frozen=True)
class VariableContext:
    names: Tuple[str, ...]

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {n: k for k, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __add__(self, other: "VariableContext") -> "VariableContext":
        return VariableContext(self.names + other.names)

    def __str__(self):
        return " ".join(self.names)


def _grevlex_key(e: Sequence[int]):
    return (sum(e), tuple(-x for x in reversed(e)))


@dataclass(frozen=True)
class MonomialOrder:
    """Monomial order; ``key`` maps exponent tuples to comparable keys.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"block"``. A block order with
    split ``k`` compares the first ``k`` exponents by grevlex and breaks ties
    with grevlex on the rest, so it eliminates the first ``k`` variables.
    """

    kind: str = "grevlex"
    block_split: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if (self.kind == "block") != (self.block_split is not None):
            raise ValueError("block_split is required exactly for block orders")
        if self.kind == "block" and self.block_split < 1:
            raise ValueError("block_split must be positive")

    @classmethod
    def block(cls, k: int) -> "MonomialOrder":
        return cls("block", k)

    @classmethod
    def from_name(cls, name: str) -> "MonomialOrder":
        name = name.strip().lower()
        if name in ("grevlex", "degrevlex"):
            return GREVLEX
        if name == "lex":
            return LEX
        raise ValueError(f"unknown monomial order {name!r} (expected grevlex or lex)")

    @cached_property
    def key(self):
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            return _grevlex_key
        k = self.block_split

        def block_key(e):
            return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))

        return block_key

    def check_arity(self, nvars: int):
        if self.kind == "block" and not 0 < self.block_split < nvars:
            raise ValueError(
                f"block split {self.block_split} invalid for {nvars} variables"
            )

    def __str__(self):
        return self.kind if self.kind != "block" else f"block({self.block_split})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """``a / b`` if ``b`` divides ``a``, else None."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def monomial_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with coefficients in one :class:`FieldSpec`."""

    __slots__ = ("context", "field", "terms", "_lead", "_hash")

    def __init__(
        self,
        context: VariableContext,
        terms: Mapping[Monomial, object] = (),
        field: FieldSpec = QQ,
    ):
        n = len(context)
        clean: Dict[Monomial, FieldElement] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != n or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono} for {n} variables")
            if not isinstance(c, FieldElement):
                c = FieldElement(c, 0, field)
            elif c.spec != field:
                raise IncompatibleFieldError(f"coefficient over {c.spec}, polynomial over {field}")
            if mono in clean:
                c = clean[mono] + c
            if c.is_zero():
                clean.pop(mono, None)
            else:
                clean[mono] = c
        self._set(context, field, clean)

    def _set(self, context, field, terms):
        self.context = context
        self.field = field
        self.terms = terms
        self._lead = {}
        self._hash = None

    @classmethod
    def _from_clean(cls, context, field, terms) -> "Polynomial":
        p = object.__new__(cls)
        p._set(context, field, terms)
        return p

    # constructors ------------------------------------------------------

    @classmethod
    def zero(cls, context: VariableContext, field: FieldSpec = QQ) -> "Polynomial":
        return cls._from_clean(context, field, {})

    @classmethod
    def constant(cls, c, context: VariableContext, field: FieldSpec = QQ) -> "Polynomial":
        return cls(context, {(0,) * len(context): c}, field)

    @classmethod
    def variable(cls, name: str, context: VariableContext, field: FieldSpec = QQ) -> "Polynomial":
        e = [0] * len(context)
        e[context.index(name)] = 1
        return cls._from_clean(context, field, {tuple(e): field.one()})

    @classmethod
    def monomial(cls, mono: Monomial, c, context: VariableContext, field: FieldSpec = QQ):
        return cls(context, {mono: c}, field)

    # basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, FieldElement]]:
        return iter(self.terms.items())

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(k for k, e in enumerate(m) if e)
        return tuple(self.context.names[k] for k in sorted(used))

    def is_fixed(self) -> bool:
        """True iff every coefficient is fixed by conjugation."""
        return all(not c.b for c in self.terms.values())

    def max_bit_size(self) -> int:
        return max((c.bit_size() for c in self.terms.values()), default=0)

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        lm = self._lead.get(order)
        if lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            lm = max(self.terms, key=order.key)
            self._lead[order] = lm
        return lm

    def leading_coefficient(self, order: MonomialOrder) -> FieldElement:
        return self.terms[self.leading_monomial(order)]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        """Terms in descending order."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if other.context != self.context:
            raise ContextMismatchError(
                f"context mismatch: [{self.context}] vs [{other.context}]"
            )
        if other.field != self.field:
            raise IncompatibleFieldError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            return Polynomial.constant(other, self.context, self.field)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
            else:
                s = s + c
                if s.is_zero():
                    del terms[m]
                else:
                    terms[m] = s
        return Polynomial._from_clean(self.context, self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean(
            self.context, self.field, {m: -c for m, c in self.terms.items()}
        )

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Polynomial":
        if not isinstance(c, FieldElement):
            c = FieldElement(c, 0, self.field)
        if c.is_zero():
            return Polynomial.zero(self.context, self.field)
        return Polynomial._from_clean(
            self.context, self.field, {m: v * c for m, v in self.terms.items()}
        )

    def mul_term(self, mono: Monomial, c: FieldElement) -> "Polynomial":
        return Polynomial._from_clean(
            self.context,
            self.field,
            {monomial_mul(m, mono): v * c for m, v in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        terms: Dict[Monomial, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = monomial_mul(m1, m2)
                c = c1 * c2
                s = terms.get(m)
                terms[m] = c if s is None else s + c
        terms = {m: c for m, c in terms.items() if not c.is_zero()}
        return Polynomial._from_clean(self.context, self.field, terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Polynomial.constant(1, self.context, self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.context == other.context
                and self.field == other.field
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction, FieldElement)) and not isinstance(other, bool):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * len(self.context): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self.terms.items())))
        return self._hash

    # normalization -----------------------------------------------------

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc.is_one():
            return self
        return self.scale(lc.inv())

    def primitive(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        """Scale so all rational parts are integers with content 1 and the
        leading coefficient is positive (first nonzero of its parts)."""
        if not self.terms:
            return self
        parts = [q for c in self.terms.values() for q in (c.a, c.b) if q]
        den = reduce(lcm, (q.denominator for q in parts), 1)
        num = reduce(gcd, ((q * den).numerator for q in parts), 0)
        factor = Fraction(den, num)
        lc = self.leading_coefficient(order)
        if (lc.a or lc.b) < 0:
            factor = -factor
        if factor == 1:
            return self
        return self.scale(factor)

    # Galois action ----------------------------------------------------

    def conjugate(self) -> "Polynomial":
        if self.is_fixed():
            return self
        return Polynomial._from_clean(
            self.context, self.field, {m: c.conj() for m, c in self.terms.items()}
        )

    def trace(self) -> "Polynomial":
        return self + self.conjugate()

    # substitution and evaluation --------------------------------------

    def evaluate(self, point: Sequence) -> FieldElement:
        if len(point) != len(self.context):
            raise ValueError("point dimension does not match the context")
        vals = [v if isinstance(v, FieldElement) else FieldElement(v, 0, self.field) for v in point]
        total = self.field.zero()
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def with_context(self, context: VariableContext) -> "Polynomial":
        """Re-embed into ``context`` by variable name."""
        if context == self.context:
            return self
        used = self.variables()
        missing = [v for v in used if v not in context]
        if missing:
            raise ContextMismatchError(f"variables {missing} are not in [{context}]")
        idx =[context.index(v) if v in context else -1 for v in self.context.names]
        n = len(context)
        terms = {}
        for m, c in self.terms.items():
            e = [0] * n
            for k, x in enumerate(m):
                if x:
                    e[idx[k]] = x
            terms[tuple(e)] = c
        return Polynomial._from_clean(context, self.field, terms)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"

    def __str__(self):
        from .parser import print_poly

        return print_poly(self)


def conjugate_poly(p: Polynomial) -> Polynomial:
    """Apply conjugation to every coefficient."""
    return p.conjugate()


def trace(p: Polynomial) -> Polynomial:
    """``p + conj(p)``; all coefficients of the result are fixed."""
    return p.trace()


def trace_pair(p: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """``(trace(p), trace(sqrt(m) * p))`` for a quadratic coefficient field.

    ``p`` is recovered as ``trace(p)/2 + sqrt(m)/(2m) * trace(sqrt(m)*p)``.
    """
    if not p.field.is_quadratic:
        raise ValueError("trace_pair needs a quadratic coefficient field")
    return p.trace(), p.scale(p.field.root()).trace()


@dataclass(frozen=True)
class PolyMap:
    """Polynomial map ``source -> target`` given by one component per target
    coordinate, each a polynomial over the source context."""

    source: VariableContext
    target: VariableContext
    components: Tuple[Polynomial, ...]

    def __init__(self, source: VariableContext, target: VariableContext, components):
        components = tuple(components)
        if len(components) != len(target):
            raise ValueError(
                f"map needs {len(target)} components, got {len(components)}"
            )
        for c in components:
            if c.context != source:
                raise ContextMismatchError("map component over the wrong context")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "components", components)

    @property
    def field(self) -> FieldSpec:
        return self.components[0].field if self.components else QQ

    @classmethod
    def identity(cls, context: VariableContext, field: FieldSpec = QQ) -> "PolyMap":
        return cls(context, context, [Polynomial.variable(v, context, field) for v in context])

    def __len__(self):
        return len(self.components)

    def __getitem__(self, k):
        return self.components[k]

    def conjugate(self) -> "PolyMap":
        return PolyMap(self.source, self.target, [c.conjugate() for c in self.components])

    def after(self, inner: "PolyMap") -> "PolyMap":
        """The composite ``self o inner``."""
        return PolyMap(inner.source, self.target, [compose(c, inner) for c in self.components])

    def __call__(self, point: Sequence) -> Tuple[FieldElement, ...]:
        return tuple(c.evaluate(point) for c in self.components)


def compose(p: Polynomial, f: PolyMap) -> Polynomial:
    """Substitute the components of ``f`` for the variables of ``p``."""
    if p.context != f.target:
        raise ContextMismatchError(
            f"cannot compose: polynomial over [{p.context}], map into [{f.target}]"
        )
    result = Polynomial.zero(f.source, p.field)
    powers: Dict[Tuple[int, int], Polynomial] = {}

    def power(k: int, e: int) -> Polynomial:
        key = (k, e)
        if key not in powers:
            powers[key] = f.components[k] if e == 1 else power(k, e - 1) * f.components[k]
        return powers[key]

    for m, c in p.sorted_terms():
        t = Polynomial.constant(c, f.source, p.field)
        for k, e in enumerate(m):
            if e:
                t = t * power(k, e)
        result = result + t
    return result


def conjugate_map(f: PolyMap) -> PolyMap:
    return f.conjugate()
