"""Elements of PO_f(K) and the certificates built from them.

Matrices are verified against M^T F M = F exactly at construction and kept
as canonical coset representatives (PO identifies M with −M, so the first
nonzero entry in row-major order is made positive at the identity
embedding).  On top of the group law sit the inbreeding generator assembly,
the quasi-arithmeticity certificate, a descriptive integrality report, the
trace-field probe, and the incompatibility report for glued pieces carried
by non-similar forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import (
    DimMismatchError,
    FieldMismatchError,
    FormMismatchError,
    InputError,
    NotAReflectionError,
    NotFOrthogonalError,
    WordBudgetExceededError,
)
from .matrices import (
    Matrix,
    determinant,
    from_rows,
    identity,
    mat_mul,
    mat_vec,
    trace as mat_trace,
    transpose,
)
from .numberfield import Embedding, QuadFieldElem, sign_at, sort_key
from .quadform import (
    CERTIFIED,
    Certificate,
    INCONCLUSIVE,
    NON_SIMILAR,
    QuadraticForm,
    REFUTED,
    AdmissibilityCertificate,
    is_admissible_pair,
    similarity_obstruction,
)

GPS_INCOMPATIBLE = "GPS_INCOMPATIBLE"
GENERATES_K = "GENERATES_K"
PROPER_SUBFIELD_SO_FAR = "PROPER_SUBFIELD_SO_FAR"

DEFAULT_WORD_CAP = 100000


def _canonical_sign(m: Matrix) -> Matrix:
    for row in m:
        for entry in row:
            s = sign_at(entry, Embedding.IDENTITY)
            if s > 0:
                return m
            if s < 0:
                return tuple(tuple(-e for e in r) for r in m)
    return m


@dataclass(frozen=True)
class GroupElement:
    """Coset {±M} with M^T F M = F; stored as the sign-canonical representative."""

    matrix: Matrix
    form: QuadraticForm

    @cached_property
    def det(self) -> QuadFieldElem:
        return determinant(self.matrix)

    @cached_property
    def trace(self) -> QuadFieldElem:
        return mat_trace(self.matrix)

    def apply(self, vector):
        return mat_vec(self.matrix, vector)


def _make(m: Matrix, form: QuadraticForm) -> GroupElement:
    return GroupElement(matrix=_canonical_sign(m), form=form)


def _orthogonality_defect(f: QuadraticForm, m: Matrix) -> tuple[int, int] | None:
    """First row-major entry where M^T F M differs from F, or None."""
    gram = f.gram
    mtfm = mat_mul(transpose(m), mat_mul(gram, m))
    for i in range(f.dim):
        for j in range(f.dim):
            if mtfm[i][j] != gram[i][j]:
                return (i, j)
    return None


def element_from_matrix(f: QuadraticForm, rows) -> GroupElement:
    """Verify M^T F M = F exactly, then store the sign-canonical representative."""
    m = from_rows(rows, f.field)
    if len(m) != f.dim or len(m[0]) != f.dim:
        raise DimMismatchError(
            f"matrix is {len(m)}x{len(m[0])}, form dimension is {f.dim}"
        )
    bad = _orthogonality_defect(f, m)
    if bad is not None:
        raise NotFOrthogonalError(
            f"matrix does not preserve the form; first violated entry of "
            f"M^T.F.M - F is at {bad}",
            position=bad,
        )
    return _make(m, f)


def identity_element(f: QuadraticForm) -> GroupElement:
    return _make(identity(f.field, f.dim), f)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Exact product; form preservation is inherited, not rechecked."""
    if g.form != h.form:
        raise FormMismatchError("cannot compose elements over different forms")
    return _make(mat_mul(g.matrix, h.matrix), g.form)


def invert(g: GroupElement) -> GroupElement:
    # M^{-1} = F^{-1} M^T F, exact and division-free given the cached F^{-1}
    m_inv = mat_mul(g.form.inverse_gram, mat_mul(transpose(g.matrix), g.form.gram))
    return _make(m_inv, g.form)


def is_reflection(g: GroupElement) -> bool:
    """Involution check, plus det = −1 where det is well-defined on PO.

    In odd ambient dimension det flips with the coset sign, so only the
    involution property is decidable there.
    """
    if mat_mul(g.matrix, g.matrix) != identity(g.form.field, g.form.dim):
        return False
    if g.form.dim % 2 == 0:
        return g.det == -1
    return g.det == 1 or g.det == -1


def _require_reflection(g: GroupElement, who: str) -> None:
    if mat_mul(g.matrix, g.matrix) != identity(g.form.field, g.form.dim):
        raise NotAReflectionError(f"{who} is not an involution")
    if g.form.dim % 2 == 0 and g.det != -1:
        raise NotAReflectionError(
            f"{who} must have determinant -1, got {g.det}"
        )


@dataclass(frozen=True)
class GeneratorSet:
    """Nonempty labeled family of group elements over one ambient form."""

    elements: tuple[GroupElement, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        labels = tuple(str(lab) for lab in self.labels)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "labels", labels)
        if not elements:
            raise InputError("generators", "generator set must be nonempty")
        if len(labels) != len(elements):
            raise InputError("generators", "labels must parallel elements")
        form = elements[0].form
        for g in elements[1:]:
            if g.form != form:
                raise FormMismatchError("generators live over different forms")

    @property
    def form(self) -> QuadraticForm:
        return self.elements[0].form

    def items(self):
        return list(zip(self.labels, self.elements))


@dataclass(frozen=True)
class FailingGenerator:
    label: str
    position: tuple[int, int] | None
    reason: str


@dataclass(frozen=True)
class QACertificate:
    verdict: str
    admissibility: AdmissibilityCertificate
    failing_generator: FailingGenerator | None


@dataclass(frozen=True)
class IntegralityReport:
    common_denominator: int
    is_integral: bool
    ring_basis: str


@dataclass(frozen=True)
class TraceProbeResult:
    traces: tuple[QuadFieldElem, ...]
    verdict: str
    words_enumerated: int
    max_word_length: int


def assemble_inbred_generators(
    gamma1: GeneratorSet,
    i0: GroupElement,
    side_reflections: list[GroupElement],
) -> GeneratorSet:
    """Labeled union {g} ∪ {I0⁻¹ g I0} ∪ {Ij⁻¹ I0} over a common ambient form.

    The first block generates one piece, the second its conjugate across the
    gluing wall, and the side pairings identify the remaining walls.
    """
    side_reflections = list(side_reflections)
    if not 1 <= len(side_reflections) <= 3:
        raise InputError(
            "side_reflections", f"expected 1 to 3 side reflections, got {len(side_reflections)}"
        )
    form = gamma1.form
    if i0.form != form or any(ij.form != form for ij in side_reflections):
        raise FormMismatchError("assembly inputs live over different forms")
    _require_reflection(i0, "i0")
    for j, ij in enumerate(side_reflections, start=1):
        _require_reflection(ij, f"side reflection I{j}")
    i0_inv = invert(i0)
    elements: list[GroupElement] = []
    labels: list[str] = []
    for lab, g in gamma1.items():
        elements.append(g)
        labels.append(lab)
    for lab, g in gamma1.items():
        elements.append(compose(compose(i0_inv, g), i0))
        labels.append(f"I0^-1*{lab}*I0")
    for j, ij in enumerate(side_reflections, start=1):
        elements.append(compose(invert(ij), i0))
        labels.append(f"I{j}^-1*I0")
    return GeneratorSet(tuple(elements), tuple(labels))


def _matrix_defect(f: QuadraticForm, m) -> FailingGenerator | None:
    """Reason a raw matrix fails to define an element of PO_f(K), if any."""
    try:
        rows = from_rows(m, f.field)
    except (FieldMismatchError, DimMismatchError) as exc:
        return FailingGenerator(label="", position=None, reason=str(exc))
    if len(rows) != f.dim or len(rows[0]) != f.dim:
        return FailingGenerator(
            label="",
            position=None,
            reason=f"matrix is {len(rows)}x{len(rows[0])}, form dimension is {f.dim}",
        )
    bad = _orthogonality_defect(f, rows)
    if bad is not None:
        return FailingGenerator(
            label="",
            position=bad,
            reason=f"M^T.F.M differs from F first at entry {bad}",
        )
    return None


def certify_matrices(f: QuadraticForm, labeled_matrices) -> QACertificate:
    """Quasi-arithmeticity certificate over raw (label, matrix) pairs.

    Failures land in the verdict rather than raising: REFUTED names either
    the failing embedding (via the admissibility sub-certificate) or the
    first failing generator.
    """
    adm = is_admissible_pair(f)
    if adm.verdict != CERTIFIED:
        return QACertificate(REFUTED, adm, None)
    for label, m in labeled_matrices:
        defect = _matrix_defect(f, m)
        if defect is not None:
            return QACertificate(
                REFUTED,
                adm,
                FailingGenerator(str(label), defect.position, defect.reason),
            )
    return QACertificate(CERTIFIED, adm, None)


def certify_quasi_arithmetic(f: QuadraticForm, gens: GeneratorSet) -> QACertificate:
    """CERTIFIED iff (K,f) is admissible and every generator lies in PO_f(K).

    Entries being field elements is structural; what is checked per
    generator is M^T F M = F against the given form, which may differ from
    the set's own ambient form.
    """
    return certify_matrices(f, [(lab, g.matrix) for lab, g in gens.items()])


def _ring_coordinates(x: QuadFieldElem) -> tuple[Fraction, ...]:
    """Coordinates in the integral basis: {1}, {1,√d}, or {1,(1+√d)/2}."""
    d = x.field.d
    if d is None:
        return (x.a,)
    if d % 4 == 1:
        return (x.a - x.b, 2 * x.b)
    return (x.a, x.b)


def ring_basis_description(field) -> str:
    if field.is_rational:
        return "1"
    if field.d % 4 == 1:
        return f"1, (1+sqrt({field.d}))/2"
    return f"1, sqrt({field.d})"


def integrality_report(gens: GeneratorSet) -> IntegralityReport:
    """Least common denominator of all entries in the integral basis of O_K.

    Descriptive only: a denominator above 1 does not refute arithmeticity
    of the generated group, since conjugation and commensurability can
    change denominators.
    """
    den = 1
    for g in gens.elements:
        for row in g.matrix:
            for entry in row:
                for coord in _ring_coordinates(entry):
                    den = den * coord.denominator // math.gcd(den, coord.denominator)
    return IntegralityReport(
        common_denominator=den,
        is_integral=(den == 1),
        ring_basis=ring_basis_description(gens.form.field),
    )


def trace_field_probe(
    gens: GeneratorSet,
    max_word_length: int,
    word_cap: int = DEFAULT_WORD_CAP,
) -> TraceProbeResult:
    """Traces of freely reduced words up to a length bound, both signs.

    A trace with a nonzero √d-coordinate shows the traces already generate
    K = Q(√d); otherwise the verdict only says no irrational trace has
    appeared yet.  Free reduction cancels adjacent inverse letters and
    nothing else, so the enumeration never solves the word problem and the
    verdict is monotone in the length bound.
    """
    if not isinstance(max_word_length, int) or max_word_length < 1:
        raise InputError("max_word_length", "must be an integer >= 1")
    if not isinstance(word_cap, int) or word_cap < 1:
        raise InputError("word_cap", "must be an integer >= 1")
    letters: list[Matrix] = []
    inverse_of: list[int] = []
    for g in gens.elements:
        letters.append(g.matrix)
        letters.append(invert(g).matrix)
        k = len(letters)
        inverse_of.extend([k - 1, k - 2])
    seen: set[tuple[Fraction, Fraction]] = set()
    traces: list[QuadFieldElem] = []

    def record(m: Matrix) -> None:
        t = mat_trace(m)
        for cand in (t, -t):
            key = (cand.a, cand.b)
            if key not in seen:
                seen.add(key)
                traces.append(cand)

    words = 0
    frontier: list[tuple[int, Matrix]] = [(-1, identity(gens.form.field, gens.form.dim))]
    for _ in range(max_word_length):
        nxt: list[tuple[int, Matrix]] = []
        for last, m in frontier:
            for li, lm in enumerate(letters):
                if last >= 0 and inverse_of[last] == li:
                    continue
                words += 1
                if words > word_cap:
                    raise WordBudgetExceededError(
                        f"word enumeration exceeded the cap of {word_cap}"
                    )
                prod = mat_mul(m, lm)
                record(prod)
                nxt.append((li, prod))
        frontier = nxt
    traces.sort(key=sort_key)
    field = gens.form.field
    irrational = (not field.is_rational) and any(t.b != 0 for t in traces)
    return TraceProbeResult(
        traces=tuple(traces),
        verdict=GENERATES_K if irrational else PROPER_SUBFIELD_SO_FAR,
        words_enumerated=words,
        max_word_length=max_word_length,
    )


def gps_incompatibility(f1: QuadraticForm, f2: QuadraticForm) -> Certificate:
    """Whether two glued arithmetic pieces can share one rational model.

    Delegates to the similarity battery: non-similar forms admit no single
    admissible pair whose rational point group contains conjugates of both
    orthogonal groups, so a lattice assembled from both pieces is not
    quasi-arithmetic.  Without an obstruction the verdict stays
    INCONCLUSIVE: similar forms glue within one rational model.
    """
    sim = similarity_obstruction(f1, f2)
    if sim.verdict == NON_SIMILAR:
        return Certificate(
            GPS_INCOMPATIBLE,
            {
                "similarity": sim,
                "statement": (
                    "the forms are not similar over their field, so no single "
                    "admissible pair contains both orthogonal groups up to "
                    "conjugacy; a lattice glued from both pieces has no common "
                    "rational model"
                ),
            },
        )
    return Certificate(
        INCONCLUSIVE,
        {
            "similarity": sim,
            "statement": (
                "no similarity obstruction found; if the forms are similar, "
                "gluing stays within a single rational model"
            ),
        },
    )
