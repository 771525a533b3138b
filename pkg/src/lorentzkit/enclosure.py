"""Certified interval enclosures with exact rational endpoints.

Square roots of rationals are enclosed by integer Newton iteration
(math.isqrt) on power-of-two scalings, so both endpoints are dyadic and the
rounding direction is explicit.  The arccosh step for distances goes through
mpmath's outward-rounded interval context; values cross that boundary as
exact dyadic rationals in both directions, never as decimal strings or
floats.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath.libmp import from_man_exp

from .errors import InputError

# mpmath's interval context keeps precision as module state.
_IV_LOCK = threading.Lock()

MIN_PRECISION_BITS = 8
MAX_PRECISION_BITS = 1 << 20


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not isinstance(self.lo, Fraction):
            object.__setattr__(self, "lo", Fraction(self.lo))
        if not isinstance(self.hi, Fraction):
            object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def scaled(self, factor: int) -> "Interval":
        if factor < 0:
            raise ValueError("scaling factor must be nonnegative")
        return Interval(self.lo * factor, self.hi * factor)

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def sign(self) -> int | None:
        """Sign certified by the enclosure, or None when it straddles zero."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None


def check_precision_bits(bits: int) -> int:
    if not isinstance(bits, int) or isinstance(bits, bool):
        raise InputError("precision_bits", "must be an integer")
    if bits < MIN_PRECISION_BITS or bits > MAX_PRECISION_BITS:
        raise InputError(
            "precision_bits",
            f"must lie in [{MIN_PRECISION_BITS}, {MAX_PRECISION_BITS}], got {bits}",
        )
    return bits


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None when it is not a square."""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn = math.isqrt(num)
    if rn * rn != num:
        return None
    rd = math.isqrt(den)
    if rd * rd != den:
        return None
    return Fraction(rn, rd)


def sqrt_interval(value: Fraction, bits: int) -> Interval:
    """Enclose sqrt(value) to within 2^(1-bits); exact point when value is a square."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("cannot enclose the square root of a negative rational")
    exact = rational_sqrt(value)
    if exact is not None:
        return Interval(exact, exact)
    num, den = value.numerator, value.denominator
    shifted = num << (2 * bits)
    lo_m = math.isqrt(shifted // den)
    hi_m = math.isqrt(-((-shifted) // den)) + 1
    scale = 1 << bits
    return Interval(Fraction(lo_m, scale), Fraction(hi_m, scale))


def element_enclosure(a: Fraction, b: Fraction, d: int | None, bits: int) -> Interval:
    """Enclose a + b*sqrt(d) with width below 2^-bits; exact when b = 0.

    The extra working precision absorbs |b|, so the bound is absolute, not
    relative.
    """
    check_precision_bits(bits)
    a = Fraction(a)
    b = Fraction(b)
    if d is None or b == 0:
        return Interval(a, a)
    # |b| <= 2^(bitlen(num)-bitlen(den)+1)
    extra = max(0, b.numerator.bit_length() - b.denominator.bit_length()) + 3
    root = sqrt_interval(Fraction(d), bits + extra)
    if b > 0:
        return Interval(a + b * root.lo, a + b * root.hi)
    return Interval(a + b * root.hi, a + b * root.lo)


def _mpf_floor(value: Fraction, bits: int):
    m = (value.numerator << bits) // value.denominator
    return mpmath.make_mpf(from_man_exp(m, -bits))


def _mpf_ceil(value: Fraction, bits: int):
    m = -(((-value.numerator) << bits) // value.denominator)
    return mpmath.make_mpf(from_man_exp(m, -bits))


def _mpf_tuple_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if man == 0:
        return Fraction(0)
    mag = Fraction(int(man)) * (Fraction(2) ** exp)
    return -mag if sign else mag


def acosh_sqrt_interval(u: Interval, bits: int) -> Interval:
    """Enclose arccosh(sqrt(u)) for an enclosure u of a value >= 1.

    Endpoints below 1 (slack from the input enclosure) are clamped to 1,
    which is sound because the enclosed quantity is a squared hyperbolic
    cosine.
    """
    check_precision_bits(bits)
    lo = max(u.lo, Fraction(1))
    hi = max(u.hi, Fraction(1))
    if hi == 1:
        return Interval(Fraction(0), Fraction(0))
    work = bits + 32
    with _IV_LOCK:
        saved = mpmath.iv.prec
        try:
            mpmath.iv.prec = work
            x = mpmath.iv.mpf([_mpf_floor(lo, work), _mpf_ceil(hi, work)])
            enc = mpmath.iv.log(mpmath.iv.sqrt(x) + mpmath.iv.sqrt(x - 1))
            lo_t, hi_t = enc._mpi_
        finally:
            mpmath.iv.prec = saved
    out_lo = _mpf_tuple_to_fraction(lo_t)
    out_hi = _mpf_tuple_to_fraction(hi_t)
    if out_lo < 0:
        out_lo = Fraction(0)
    return Interval(out_lo, out_hi)


def format_decimal(value: Fraction, digits: int, direction: str) -> str:
    """Fixed-notation decimal with directed rounding, never a float round-trip."""
    if direction not in ("floor", "ceil"):
        raise ValueError(f"unknown rounding direction {direction!r}")
    scaled = Fraction(value) * 10**digits
    if direction == "floor":
        n = scaled.numerator // scaled.denominator
    else:
        n = -((-scaled.numerator) // scaled.denominator)
    sign = "-" if n < 0 else ""
    text = str(abs(n)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def interval_to_decimal(interval: Interval, digits: int = 30) -> dict:
    """Outward decimal rendering of an interval: still an enclosure."""
    return {
        "lo": format_decimal(interval.lo, digits, "floor"),
        "hi": format_decimal(interval.hi, digits, "ceil"),
    }
