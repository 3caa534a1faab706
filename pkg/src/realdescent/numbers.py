"""Exact arithmetic in Q and in imaginary quadratic fields Q(sqrt(m)).

Elements are stored as ``a + b*s`` with ``s*s = m`` and rational ``a, b``.
Complex conjugation restricted to the field is the automorphism
``s -> -s``; elements fixed by it are exactly the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

__all__ = [
    "FieldElement",
    "FieldSpec",
    "IncompatibleFieldError",
    "QQ",
    "Rational",
    "as_rational",
    "is_squarefree",
    "rational_sqrt",
]

Rational = Fraction


class IncompatibleFieldError(ValueError):
    """Raised when elements of different coefficient fields are combined."""


def is_squarefree(n: int) -> bool:
    """Trial-division squarefree test on ``|n|``."""
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_sqrt(q: Fraction) -> Optional[Fraction]:
    """Return the nonnegative rational square root of ``q``, or None."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: Q when ``radicand`` is None, else Q(sqrt(radicand))."""

    radicand: Optional[int] = None

    def __post_init__(self):
        m = self.radicand
        if m is None:
            return
        if not isinstance(m, int) or isinstance(m, bool):
            raise ValueError(f"radicand must be an integer, got {m!r}")
        if m >= 0:
            raise ValueError(f"radicand must be negative, got {m}")
        if not is_squarefree(m):
            raise ValueError(f"radicand {m} is not squarefree")

    @classmethod
    def quadratic(cls, m: int) -> "FieldSpec":
        return cls(m)

    @property
    def kind(self) -> str:
        return "Rationals" if self.radicand is None else "Quadratic"

    @property
    def is_quadratic(self) -> bool:
        return self.radicand is not None

    @property
    def root_symbol(self) -> str:
        """Printed name of sqrt(m): ``i`` for m = -1, ``s`` otherwise."""
        return "i" if self.radicand == -1 else "s"

    def __str__(self):
        if self.radicand is None:
            return "Q"
        if self.radicand == -1:
            return "Q(i)"
        return f"Q(sqrt {self.radicand})"

    def element(self, a=0, b=0) -> "FieldElement":
        return FieldElement(a, b, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, 0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, 0, self)

    def root(self) -> "FieldElement":
        """The generator sqrt(m)."""
        if self.radicand is None:
            raise ValueError("Q has no quadratic generator")
        return FieldElement(0, 1, self)


QQ = FieldSpec()

_Scalar = Union[int, Fraction, "FieldElement"]


class FieldElement:
    """Immutable element ``a + b*sqrt(m)`` of a :class:`FieldSpec`."""

    __slots__ = ("a", "b", "spec")

    def __init__(self, a=0, b=0, spec: FieldSpec = QQ):
        a = as_rational(a)
        b = as_rational(b)
        if b and spec.radicand is None:
            raise ValueError("an element of Q cannot have an irrational part")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "spec", spec)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, spec: FieldSpec) -> "FieldElement":
        # Hot path: inputs are already normalized Fractions.
        x = object.__new__(cls)
        object.__setattr__(x, "a", a)
        object.__setattr__(x, "b", b)
        object.__setattr__(x, "spec", spec)
        return x

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise IncompatibleFieldError(
                    f"cannot combine elements of {self.spec} and {other.spec}"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement._raw(Fraction(other), Fraction(0), self.spec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement._raw(self.a + o.a, self.b + o.b, self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement._raw(self.a - o.a, self.b - o.b, self.spec)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldElement._raw(-self.a, -self.b, self.spec)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.b and not o.b:
            return FieldElement._raw(self.a * o.a, self.b, self.spec)
        m = self.spec.radicand
        return FieldElement._raw(
            self.a * o.a + m * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.spec,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - m*b^2``; equals ``x * conj(x)``."""
        if not self.b:
            return self.a * self.a
        return self.a * self.a - self.spec.radicand * self.b * self.b

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if not self.b:
            return FieldElement._raw(1 / self.a, self.b, self.spec)
        n = self.norm()
        return FieldElement._raw(self.a / n, -self.b / n, self.spec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inv() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "FieldElement":
        """Galois conjugation ``a + b*s -> a - b*s``."""
        if not self.b:
            return self
        return FieldElement._raw(self.a, -self.b, self.spec)

    def is_fixed(self) -> bool:
        """True iff the element is fixed by conjugation (lies in Q)."""
        return not self.b

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_one(self) -> bool:
        return self.a == 1 and not self.b

    def __bool__(self):
        return not self.is_zero()

    def sqrt(self) -> Optional["FieldElement"]:
        """A square root inside the same field, or None if there is none."""
        a, b = self.a, self.b
        if not b:
            r = rational_sqrt(a)
            if r is not None:
                return FieldElement._raw(r, Fraction(0), self.spec)
            m = self.spec.radicand
            if m is None:
                return None
            d = rational_sqrt(a / m)
            if d is None:
                return None
            return FieldElement._raw(Fraction(0), d, self.spec)
        m = self.spec.radicand
        # (c + d s)^2 = a + b s  <=>  c^2 + m d^2 = a, 2 c d = b
        r = rational_sqrt(self.norm())
        if r is None:
            return None
        for c2 in ((a + r) / 2, (a - r) / 2):
            c = rational_sqrt(c2)
            if c:
                d = b / (2 * c)
                if c * c + m * d * d == a:
                    return FieldElement._raw(c, d, self.spec)
        return None

    def bit_size(self) -> int:
        return max(
            self.a.numerator.bit_length(),
            self.a.denominator.bit_length(),
            self.b.numerator.bit_length(),
            self.b.denominator.bit_length(),
        )

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.spec.radicand))

    def __repr__(self):
        if self.spec.radicand is None:
            return f"FieldElement({self.a})"
        return f"FieldElement({self.a}, {self.b}, {self.spec})"

    def __str__(self):
        sym = self.spec.root_symbol
        if not self.b:
            return str(self.a)
        bpart = sym if self.b == 1 else f"-{sym}" if self.b == -1 else f"{self.b}*{sym}"
        if not self.a:
            return bpart
        if self.b < 0:
            bb = -self.b
            return f"{self.a} - " + (sym if bb == 1 else f"{bb}*{sym}")
        return f"{self.a} + {bpart}"
