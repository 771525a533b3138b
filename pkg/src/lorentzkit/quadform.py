"""Quadratic forms over Q and real quadratic fields.

Signatures come from exact symmetric congruence diagonalization; one
diagonalization over the field serves every real embedding, because
conjugation commutes with congruence.  Admissibility of a field-form pair
means signature (n,1) at the identity embedding and positive definite at
the conjugate one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import (
    DimMismatchError,
    DimTooSmallError,
    FieldMismatchError,
    InputError,
    NoConjugateForQError,
    SingularFormError,
    ZeroCoefficientError,
)
from .matrices import Matrix, Vector, determinant, dot, from_rows, inverse, mat_vec
from .numberfield import (
    Embedding,
    FieldDescriptor,
    QuadFieldElem,
    galois_conjugate,
    is_square,
    sign_at,
    zero,
)

CERTIFIED = "CERTIFIED"
REFUTED = "REFUTED"
INCONCLUSIVE = "INCONCLUSIVE"
NON_SIMILAR = "NON_SIMILAR"


@dataclass(frozen=True)
class Signature:
    positives: int
    negatives: int
    zeros: int

    def swapped(self) -> "Signature":
        return Signature(self.negatives, self.positives, self.zeros)

    def __str__(self) -> str:
        return f"({self.positives},{self.negatives},{self.zeros})"


@dataclass(frozen=True)
class AdmissibilityCertificate:
    verdict: str
    signature_profile: dict[Embedding, Signature]
    failing_embedding: Embedding | None


@dataclass(frozen=True)
class Certificate:
    verdict: str
    witness: dict


@dataclass(frozen=True)
class QuadraticForm:
    """Nonsingular symmetric Gram matrix over a field descriptor."""

    field: FieldDescriptor
    gram: Matrix

    def __post_init__(self):
        gram = from_rows(self.gram, self.field)
        object.__setattr__(self, "gram", gram)
        m = len(gram)
        if any(len(row) != m for row in gram):
            raise DimMismatchError("Gram matrix must be square")
        if m < 3:
            raise DimTooSmallError(f"form dimension must be at least 3, got {m}")
        for i in range(m):
            for j in range(i + 1, m):
                if gram[i][j] != gram[j][i]:
                    raise InputError(
                        "form.gram", f"Gram matrix not symmetric at ({i},{j})"
                    )
        if self.det.is_zero():
            raise SingularFormError("Gram matrix is singular")

    @property
    def dim(self) -> int:
        return len(self.gram)

    @property
    def n(self) -> int:
        """Hyperbolic dimension when the pair is admissible: dim - 1."""
        return self.dim - 1

    @cached_property
    def det(self) -> QuadFieldElem:
        return determinant(self.gram)

    @cached_property
    def inverse_gram(self) -> Matrix:
        return inverse(self.gram)

    @cached_property
    def congruence_diagonal(self) -> tuple[QuadFieldElem, ...]:
        """Diagonal of some P^T G P over the field itself.

        When a leading diagonal entry vanishes, a nonzero diagonal entry is
        swapped in; if the whole trailing diagonal vanishes, adding one row
        and matching column makes the pivot 2*A[k][j] != 0 (characteristic
        zero).
        """
        m = self.dim
        a = [list(row) for row in self.gram]
        diag = []
        for k in range(m):
            if a[k][k].is_zero():
                i = next((i for i in range(k + 1, m) if not a[i][i].is_zero()), None)
                if i is not None:
                    a[k], a[i] = a[i], a[k]
                    for row in a:
                        row[k], row[i] = row[i], row[k]
                else:
                    j = next((j for j in range(k + 1, m) if not a[k][j].is_zero()), None)
                    if j is not None:
                        for col in range(m):
                            a[k][col] = a[k][col] + a[j][col]
                        for row in a:
                            row[k] = row[k] + row[j]
            pivot = a[k][k]
            diag.append(pivot)
            if pivot.is_zero():
                continue
            for i in range(k + 1, m):
                if a[i][k].is_zero():
                    continue
                f = a[i][k] / pivot
                for j in range(m):
                    a[i][j] = a[i][j] - f * a[k][j]
                for j in range(m):
                    a[j][i] = a[j][i] - f * a[j][k]
        return tuple(diag)


def form_from_gram(field: FieldDescriptor, rows) -> QuadraticForm:
    return QuadraticForm(field, from_rows(rows, field))


def form_from_diagonal(field: FieldDescriptor, coeffs) -> QuadraticForm:
    coeffs = tuple(coeffs)
    if len(coeffs) < 3:
        raise DimTooSmallError(
            f"form dimension must be at least 3, got {len(coeffs)}"
        )
    z = zero(field)
    for c in coeffs:
        if not isinstance(c, QuadFieldElem) or c.field != field:
            raise FieldMismatchError("diagonal coefficients must live in the form's field")
        if c.is_zero():
            raise ZeroCoefficientError("diagonal coefficient must be nonzero")
    rows = tuple(
        tuple(coeffs[i] if i == j else z for j in range(len(coeffs)))
        for i in range(len(coeffs))
    )
    return QuadraticForm(field, rows)


def evaluate(f: QuadraticForm, x: Vector) -> QuadFieldElem:
    """f(x) = x^T G x."""
    x = tuple(x)
    if len(x) != f.dim:
        raise DimMismatchError(
            f"vector length {len(x)} does not match form dimension {f.dim}"
        )
    for e in x:
        if e.field != f.field:
            raise FieldMismatchError("vector entries must live in the form's field")
    return dot(x, mat_vec(f.gram, x))


def conjugate_form(f: QuadraticForm) -> QuadraticForm:
    if f.field.is_rational:
        raise NoConjugateForQError("Q has a single real embedding")
    rows = tuple(tuple(galois_conjugate(e) for e in row) for row in f.gram)
    return QuadraticForm(f.field, rows)


def signature_at(f: QuadraticForm, e: Embedding = Embedding.IDENTITY) -> Signature:
    """Counts of positive/negative/zero diagonal entries under embedding e."""
    if e is Embedding.CONJUGATE and f.field.is_rational:
        raise NoConjugateForQError("Q has a single real embedding")
    pos = neg = zer = 0
    for entry in f.congruence_diagonal:
        s = sign_at(entry, e)
        if s > 0:
            pos += 1
        elif s < 0:
            neg += 1
        else:
            zer += 1
    return Signature(pos, neg, zer)


def signature_profile(f: QuadraticForm) -> dict[Embedding, Signature]:
    profile = {Embedding.IDENTITY: signature_at(f, Embedding.IDENTITY)}
    if not f.field.is_rational:
        profile[Embedding.CONJUGATE] = signature_at(f, Embedding.CONJUGATE)
    return profile


def is_admissible_pair(f: QuadraticForm) -> AdmissibilityCertificate:
    """Lorentzian at the identity place, definite at the conjugate place.

    Over Q only the identity condition applies.
    """
    profile = signature_profile(f)
    n = f.dim - 1
    failing = None
    if profile[Embedding.IDENTITY] != Signature(n, 1, 0):
        failing = Embedding.IDENTITY
    elif not f.field.is_rational and profile[Embedding.CONJUGATE] != Signature(
        f.dim, 0, 0
    ):
        failing = Embedding.CONJUGATE
    return AdmissibilityCertificate(
        verdict=CERTIFIED if failing is None else REFUTED,
        signature_profile=profile,
        failing_embedding=failing,
    )


@dataclass(frozen=True)
class SquareClass:
    """Nonzero element regarded modulo squares; compare via square_class_equal."""

    representative: QuadFieldElem

    def __post_init__(self):
        if self.representative.is_zero():
            raise ZeroCoefficientError(
                "square classes are defined for nonzero elements"
            )

    def same_class(self, other: "SquareClass") -> bool:
        return square_class_equal(self, other)


def discriminant_class(f: QuadraticForm) -> SquareClass:
    return SquareClass(f.det)


def square_class_equal(c1: SquareClass, c2: SquareClass) -> bool:
    """Whether the two classes coincide, i.e. their ratio is a square."""
    x = c1.representative if isinstance(c1, SquareClass) else c1
    y = c2.representative if isinstance(c2, SquareClass) else c2
    if x.field != y.field:
        raise FieldMismatchError(
            f"square classes live over different fields: {x.field} vs {y.field}"
        )
    if x.is_zero() or y.is_zero():
        raise ZeroCoefficientError("square classes are defined for nonzero elements")
    return is_square(x / y) is not None


def _signature_patterns(profile: dict[Embedding, Signature]) -> list[dict[Embedding, Signature]]:
    # A similarity factor may flip the sign of the form independently at
    # each real place, so each place contributes {as-is, swapped}.
    places = sorted(profile.keys(), key=lambda e: e.value)
    patterns = [{}]
    for place in places:
        nxt = []
        for pat in patterns:
            for sig in (profile[place], profile[place].swapped()):
                cur = dict(pat)
                cur[place] = sig
                nxt.append(cur)
        patterns = nxt
    return patterns


def similarity_obstruction(f1: QuadraticForm, f2: QuadraticForm) -> Certificate:
    """Battery of similarity invariants; NON_SIMILAR only with a sound witness.

    Checks dimension, then signature profiles up to independent sign flips
    at each place, then (in even dimension) the discriminant square class.
    Never claims similarity: the fall-through verdict is INCONCLUSIVE.
    """
    if f1.field != f2.field:
        raise FieldMismatchError(
            f"forms live over different fields: {f1.field} vs {f2.field}"
        )
    if f1.dim != f2.dim:
        return Certificate(
            NON_SIMILAR,
            {"obstruction": "dimension", "dim1": f1.dim, "dim2": f2.dim},
        )
    prof1 = signature_profile(f1)
    prof2 = signature_profile(f2)
    if prof2 not in _signature_patterns(prof1):
        return Certificate(
            NON_SIMILAR,
            {
                "obstruction": "signature",
                "profile1": prof1,
                "profile2": prof2,
            },
        )
    if f1.dim % 2 == 0:
        ratio = f2.det / f1.det
        if is_square(ratio) is None:
            return Certificate(
                NON_SIMILAR,
                {
                    "obstruction": "discriminant",
                    "ratio": ratio,
                    "det1": f1.det,
                    "det2": f2.det,
                },
            )
    return Certificate(
        INCONCLUSIVE,
        {
            "obstruction": None,
            "note": "no invariant in the battery separates the forms",
        },
    )
