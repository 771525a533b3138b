"""Lorentz-model geometry over an admissible form.

Points live in the projective negative cone (f < 0 up to scale), so the
distance formula is the scale-invariant cosh² d = (x,y)²/(f(x)·f(y)).
Hyperplanes are spacelike normals v with f(v) > 0; a pair is classified by
the exact sign of (v0,v1)² − f(v0)·f(v1), and ultraparallel pairs get a
certified enclosure of their common-perpendicular length.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .enclosure import Interval, acosh_sqrt_interval, check_precision_bits, element_enclosure
from .errors import (
    DimMismatchError,
    FieldMismatchError,
    FormMismatchError,
    LorentzKitError,
    NormalNotSpacelikeError,
    NotUltraparallelError,
    PointNotInModelError,
)
from .lattice import GroupElement, element_from_matrix
from .matrices import Vector, dot, identity, mat_vec
from .numberfield import Embedding, QuadFieldElem, sign_at
from .quadform import QuadraticForm, evaluate


class PairClass(Enum):
    INTERSECTING = "INTERSECTING"
    TANGENT = "TANGENT"
    ULTRAPARALLEL = "ULTRAPARALLEL"


def _check_vector(f: QuadraticForm, x, what: str) -> Vector:
    x = tuple(x)
    if len(x) != f.dim:
        raise DimMismatchError(
            f"{what} has length {len(x)}, form dimension is {f.dim}"
        )
    for e in x:
        if not isinstance(e, QuadFieldElem) or e.field != f.field:
            raise FieldMismatchError(f"{what} entries must live in {f.field}")
    return x


@dataclass(frozen=True)
class ModelPoint:
    """Projective point of the model: f(coords) < 0, scalar multiples identified."""

    coords: Vector
    form: QuadraticForm

    def __post_init__(self):
        coords = _check_vector(self.form, self.coords, "point")
        object.__setattr__(self, "coords", coords)
        if sign_at(evaluate(self.form, coords), Embedding.IDENTITY) >= 0:
            raise PointNotInModelError(
                "point is not in the model: f(x) must be negative"
            )


@dataclass(frozen=True)
class Hyperplane:
    """K-rational hyperplane, carried by a spacelike normal: f(normal) > 0."""

    normal: Vector
    form: QuadraticForm

    def __post_init__(self):
        normal = _check_vector(self.form, self.normal, "normal")
        object.__setattr__(self, "normal", normal)
        if sign_at(evaluate(self.form, normal), Embedding.IDENTITY) <= 0:
            raise NormalNotSpacelikeError(
                "hyperplane normal must satisfy f(v) > 0"
            )


@dataclass(frozen=True)
class CertifiedDistance:
    """Exact cosh² of the distance plus a certified enclosure of the distance."""

    cosh_sq: QuadFieldElem
    distance_enclosure: Interval
    precision_bits: int


def lorentz_inner(f: QuadraticForm, x, y) -> QuadFieldElem:
    """(x,y) = x^T G y; (x,x) = f(x)."""
    x = _check_vector(f, x, "x")
    y = _check_vector(f, y, "y")
    return dot(x, mat_vec(f.gram, y))


def _enclose_acosh_of_sqrt(cosh_sq: QuadFieldElem, precision_bits: int) -> Interval:
    """Certified enclosure of arccosh(sqrt(cosh_sq)) for exact cosh_sq >= 1."""
    check_precision_bits(precision_bits)
    s = sign_at(cosh_sq - 1, Embedding.IDENTITY)
    if s < 0:
        raise LorentzKitError("cosh^2 of a distance cannot be below 1")
    if s == 0:
        return Interval(Fraction(0), Fraction(0))
    k = max(precision_bits, 16)
    while True:
        u = element_enclosure(cosh_sq.a, cosh_sq.b, cosh_sq.field.d, k)
        if u.lo > 1 or k >= 64 * precision_bits:
            break
        k *= 2
    return acosh_sqrt_interval(u, precision_bits)


def point_distance(
    f: QuadraticForm, x: ModelPoint, y: ModelPoint, precision_bits: int = 128
) -> CertifiedDistance:
    """cosh² d = (x,y)² / (f(x)·f(y)), exact; enclosure of d itself."""
    if x.form != f or y.form != f:
        raise FormMismatchError("points must live in the given form's model")
    inner = lorentz_inner(f, x.coords, y.coords)
    denom = evaluate(f, x.coords) * evaluate(f, y.coords)
    cosh_sq = inner * inner / denom
    return CertifiedDistance(
        cosh_sq=cosh_sq,
        distance_enclosure=_enclose_acosh_of_sqrt(cosh_sq, precision_bits),
        precision_bits=precision_bits,
    )


def separation_invariant(h0: Hyperplane, h1: Hyperplane) -> QuadFieldElem:
    """(v0,v1)² − f(v0)·f(v1); its sign classifies the pair, its scale means nothing."""
    if h0.form != h1.form:
        raise FormMismatchError("hyperplanes live over different forms")
    inner = lorentz_inner(h0.form, h0.normal, h1.normal)
    return inner * inner - evaluate(h0.form, h0.normal) * evaluate(h1.form, h1.normal)


def classify_hyperplane_pair(h0: Hyperplane, h1: Hyperplane) -> PairClass:
    """Sign of (v0,v1)² − f(v0)·f(v1): < 0 crossing, = 0 ideal tangency, > 0 disjoint.

    Symmetric and invariant under rescaling either normal.
    """
    s = sign_at(separation_invariant(h0, h1), Embedding.IDENTITY)
    if s < 0:
        return PairClass.INTERSECTING
    if s == 0:
        return PairClass.TANGENT
    return PairClass.ULTRAPARALLEL


def hyperplane_distance(
    h0: Hyperplane, h1: Hyperplane, precision_bits: int = 128
) -> CertifiedDistance:
    """Common-perpendicular length for an ultraparallel pair.

    cosh² d = (v0,v1)² / (f(v0)·f(v1)) exactly; the doubled geodesic bounds
    the systole of the glued manifold by twice this distance.
    """
    cls = classify_hyperplane_pair(h0, h1)
    if cls is not PairClass.ULTRAPARALLEL:
        raise NotUltraparallelError(
            f"hyperplane pair is {cls.value}, distance needs ULTRAPARALLEL"
        )
    inner = lorentz_inner(h0.form, h0.normal, h1.normal)
    denom = evaluate(h0.form, h0.normal) * evaluate(h1.form, h1.normal)
    cosh_sq = inner * inner / denom
    return CertifiedDistance(
        cosh_sq=cosh_sq,
        distance_enclosure=_enclose_acosh_of_sqrt(cosh_sq, precision_bits),
        precision_bits=precision_bits,
    )


def systole_bound(dist: CertifiedDistance) -> Interval:
    """Closed-geodesic length bound from doubling across the two hyperplanes."""
    return dist.distance_enclosure.scaled(2)


def reflection_matrix(h: Hyperplane) -> GroupElement:
    """R = Id − 2·v·(vᵀF)/f(v): fixes ⟨v⟩^⊥ pointwise, negates v.

    Exact over the field; RᵀFR = F and R² = Id by construction.
    """
    f = h.form
    v = h.normal
    fv = mat_vec(f.gram, v)  # (vᵀF)ᵀ, by symmetry of F
    coeff = (2 / evaluate(f, v))
    ident = identity(f.field, f.dim)
    rows = tuple(
        tuple(ident[i][j] - v[i] * fv[j] * coeff for j in range(f.dim))
        for i in range(f.dim)
    )
    return element_from_matrix(f, rows)
