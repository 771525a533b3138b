"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

An element is stored as a + b*sqrt(d) with rational a, b kept in lowest
terms by fractions.Fraction.  Every sign decision reduces to integer
comparisons, so no floating point ever participates in a verdict; the
enclosure module supplies certified decimal views when one is wanted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .enclosure import Interval, element_enclosure, rational_sqrt
from .errors import (
    DivisionByZeroError,
    FieldMismatchError,
    InputError,
    NoConjugateForQError,
)


def _is_square_free(n: int) -> bool:
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 2
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """Q when d is None, otherwise Q(sqrt(d)) for square-free d >= 2."""

    d: int | None = None

    def __post_init__(self):
        if self.d is None:
            return
        if isinstance(self.d, bool) or not isinstance(self.d, int):
            raise InputError("field.d", "d must be an integer or absent")
        if self.d < 2:
            raise InputError("field.d", f"d must be at least 2, got {self.d}")
        if not _is_square_free(self.d):
            raise InputError("field.d", f"d must be square-free, got {self.d}")

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    def __str__(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt({self.d}))"


QQ = FieldDescriptor()


class Embedding(Enum):
    """The two real places of a quadratic field; Q has only IDENTITY."""

    IDENTITY = "identity"
    CONJUGATE = "conjugate"


def _sign(x: Fraction) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True, eq=False)
class QuadFieldElem:
    """a + b*sqrt(d); equality is componentwise on the reduced coordinates.

    Comparison against int or Fraction means "is this rational element that
    value"; field tags must match for two elements to be equal.
    """

    a: Fraction
    b: Fraction
    field: FieldDescriptor

    def __eq__(self, other):
        if isinstance(other, QuadFieldElem):
            return (
                self.a == other.a
                and self.b == other.b
                and self.field == other.field
            )
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.field))

    def __post_init__(self):
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))
        if self.field.is_rational and self.b != 0:
            raise FieldMismatchError("element over Q cannot carry a sqrt coefficient")

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other):
        if isinstance(other, QuadFieldElem):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine elements of {self.field} and {other.field}"
                )
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return QuadFieldElem(Fraction(other), Fraction(0), self.field)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadFieldElem(self.a + other.a, self.b + other.b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadFieldElem(self.a - other.a, self.b - other.b, self.field)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return QuadFieldElem(-self.a, -self.b, self.field)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.field.d or 0
        return QuadFieldElem(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.field,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "QuadFieldElem":
        # (a + b√d)⁻¹ = (a - b√d) / (a² - d b²)
        if self.is_zero():
            raise DivisionByZeroError("division by the zero element")
        n = self.norm()
        return QuadFieldElem(self.a / n, -self.b / n, self.field)

    def conjugate(self) -> "QuadFieldElem":
        """Galois conjugate a - b*sqrt(d); the identity map on Q."""
        if self.field.is_rational:
            return self
        return QuadFieldElem(self.a, -self.b, self.field)

    def norm(self) -> Fraction:
        if self.field.is_rational:
            return self.a * self.a
        return self.a * self.a - self.field.d * self.b * self.b

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"<{format_element(self)} in {self.field}>"


def element(field: FieldDescriptor, a, b=0) -> QuadFieldElem:
    return QuadFieldElem(Fraction(a), Fraction(b), field)


def zero(field: FieldDescriptor) -> QuadFieldElem:
    return QuadFieldElem(Fraction(0), Fraction(0), field)


def one(field: FieldDescriptor) -> QuadFieldElem:
    return QuadFieldElem(Fraction(1), Fraction(0), field)


def sqrt_d(field: FieldDescriptor) -> QuadFieldElem:
    if field.is_rational:
        raise FieldMismatchError("Q carries no adjoined square root")
    return QuadFieldElem(Fraction(0), Fraction(1), field)


def field_add(x: QuadFieldElem, y: QuadFieldElem) -> QuadFieldElem:
    return x + y


def field_mul(x: QuadFieldElem, y: QuadFieldElem) -> QuadFieldElem:
    return x * y


def field_inv(x: QuadFieldElem) -> QuadFieldElem:
    return x.inverse()


def galois_conjugate(x: QuadFieldElem) -> QuadFieldElem:
    return x.conjugate()


def embed(x: QuadFieldElem, e: Embedding) -> QuadFieldElem:
    if e is Embedding.IDENTITY:
        return x
    return x.conjugate()


def sign_at(x: QuadFieldElem, e: Embedding = Embedding.IDENTITY) -> int:
    """Sign of the real number x under embedding e, by integer comparison.

    For a + b√d with a, b both nonzero and of opposite sign, the dominant
    term is decided by comparing a² against d·b².
    """
    if e is Embedding.CONJUGATE and x.field.is_rational:
        raise NoConjugateForQError("Q has a single real embedding")
    a = x.a
    b = x.b if e is Embedding.IDENTITY else -x.b
    if b == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    lhs = a * a
    rhs = x.field.d * b * b
    if lhs == rhs:
        # would force d to be a rational square; unreachable for square-free d >= 2
        return 0
    return _sign(a) if lhs > rhs else _sign(b)


def is_square(x: QuadFieldElem) -> QuadFieldElem | None:
    """Return y with y*y == x when x is a square in its own field, else None.

    Deterministic: the root returned is the one that is nonnegative under
    the identity embedding.
    """
    fld = x.field
    if x.is_zero():
        return x
    if sign_at(x, Embedding.IDENTITY) < 0:
        return None
    if not fld.is_rational and sign_at(x, Embedding.CONJUGATE) < 0:
        # totally positive is necessary in a real quadratic field
        return None
    if fld.is_rational:
        r = rational_sqrt(x.a)
        return None if r is None else QuadFieldElem(r, Fraction(0), fld)
    d = fld.d
    if x.b == 0:
        r = rational_sqrt(x.a)
        if r is not None:
            return QuadFieldElem(r, Fraction(0), fld)
        r = rational_sqrt(x.a / d)
        if r is not None:
            return QuadFieldElem(Fraction(0), r, fld)
        return None
    # For y = p + q√d with y² = x, p² and d·q² are the two roots of
    # t² - a·t + d·b²/4, which are rational iff the norm a² - d·b² is a
    # rational square.
    s = rational_sqrt(x.a * x.a - d * x.b * x.b)
    if s is None:
        return None
    for t in ((x.a + s) / 2, (x.a - s) / 2):
        if t <= 0:
            continue
        p = rational_sqrt(t)
        if p is None:
            continue
        q = x.b / (2 * p)
        if p * p + d * q * q == x.a:
            y = QuadFieldElem(p, q, fld)
            return y if sign_at(y) >= 0 else -y
    return None


def decimal_enclosure(
    x: QuadFieldElem, precision_bits: int = 128, e: Embedding = Embedding.IDENTITY
) -> Interval:
    """Certified enclosure of x under e, width below 2^-precision_bits."""
    y = embed(x, e) if e is Embedding.CONJUGATE else x
    return element_enclosure(y.a, y.b, y.field.d, precision_bits)


def sort_key(x: QuadFieldElem) -> tuple[Fraction, Fraction]:
    return (x.a, x.b)


_TERM_RE = re.compile(
    r"(?P<num>\d+)(?:/(?P<den>\d+))?(?:\*sqrt\((?P<da>\d+)\))?"
    r"|sqrt\((?P<db>\d+)\)"
)


def _fmt_frac(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_element(text: str, field: FieldDescriptor) -> QuadFieldElem:
    """Parse "p/q", "p/q+r/s*sqrt(d)", "sqrt(d)", ...; whitespace-insensitive."""
    if not isinstance(text, str):
        raise InputError("element", f"expected a string, got {type(text).__name__}")
    s = re.sub(r"\s+", "", text)
    if not s:
        raise InputError("element", "empty element string")
    a = Fraction(0)
    b = Fraction(0)
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise InputError(
                "element", f"expected '+' or '-' at position {pos} in {text!r}"
            )
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise InputError("element", f"cannot parse term at position {pos} in {text!r}")
        if m.group("db") is not None:
            coef = Fraction(1)
            d_txt = m.group("db")
        else:
            den = m.group("den")
            if den is not None and int(den) == 0:
                raise InputError("element", f"zero denominator in {text!r}")
            coef = Fraction(int(m.group("num")), int(den) if den else 1)
            d_txt = m.group("da")
        if d_txt is None:
            a += sign * coef
        else:
            if field.is_rational:
                raise InputError("element", f"sqrt term not allowed over Q in {text!r}")
            if int(d_txt) != field.d:
                raise InputError(
                    "element",
                    f"sqrt({d_txt}) does not belong to {field} in {text!r}",
                )
            b += sign * coef
        pos = m.end()
        first = False
    return QuadFieldElem(a, b, field)


def format_element(x: QuadFieldElem) -> str:
    """Canonical textual form; parse_element round-trips it."""
    if x.b == 0:
        return _fmt_frac(x.a)
    root = f"sqrt({x.field.d})"
    if x.b == 1:
        bpart = root
    elif x.b == -1:
        bpart = f"-{root}"
    else:
        bpart = f"{_fmt_frac(x.b)}*{root}"
    if x.a == 0:
        return bpart
    if x.b > 0:
        return f"{_fmt_frac(x.a)}+{bpart}"
    return f"{_fmt_frac(x.a)}{bpart}"
