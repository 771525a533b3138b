"""Exact-arithmetic certification toolkit for quadratic forms over Q and
Q(sqrt(d)), Lorentz-model geometry, and reflection-generated lattices."""

__version__ = "0.1.0"

from .enclosure import Interval
from .errors import LorentzKitError
from .lattice import (
    GENERATES_K,
    GPS_INCOMPATIBLE,
    PROPER_SUBFIELD_SO_FAR,
    GeneratorSet,
    GroupElement,
    assemble_inbred_generators,
    certify_quasi_arithmetic,
    compose,
    element_from_matrix,
    gps_incompatibility,
    identity_element,
    integrality_report,
    invert,
    trace_field_probe,
)
from .lorentz import (
    CertifiedDistance,
    Hyperplane,
    ModelPoint,
    PairClass,
    classify_hyperplane_pair,
    hyperplane_distance,
    lorentz_inner,
    point_distance,
    reflection_matrix,
    systole_bound,
)
from .numberfield import (
    Embedding,
    FieldDescriptor,
    QQ,
    QuadFieldElem,
    decimal_enclosure,
    element,
    format_element,
    galois_conjugate,
    is_square,
    parse_element,
    sign_at,
)
from .quadform import (
    CERTIFIED,
    INCONCLUSIVE,
    NON_SIMILAR,
    REFUTED,
    AdmissibilityCertificate,
    Certificate,
    QuadraticForm,
    Signature,
    SquareClass,
    conjugate_form,
    discriminant_class,
    evaluate,
    form_from_diagonal,
    form_from_gram,
    is_admissible_pair,
    signature_at,
    similarity_obstruction,
    square_class_equal,
)

__all__ = [
    "__version__",
    "Interval",
    "LorentzKitError",
    "CERTIFIED",
    "REFUTED",
    "INCONCLUSIVE",
    "NON_SIMILAR",
    "GPS_INCOMPATIBLE",
    "GENERATES_K",
    "PROPER_SUBFIELD_SO_FAR",
    "GeneratorSet",
    "GroupElement",
    "assemble_inbred_generators",
    "certify_quasi_arithmetic",
    "compose",
    "element_from_matrix",
    "gps_incompatibility",
    "identity_element",
    "integrality_report",
    "invert",
    "trace_field_probe",
    "CertifiedDistance",
    "Hyperplane",
    "ModelPoint",
    "PairClass",
    "classify_hyperplane_pair",
    "hyperplane_distance",
    "lorentz_inner",
    "point_distance",
    "reflection_matrix",
    "systole_bound",
    "Embedding",
    "FieldDescriptor",
    "QQ",
    "QuadFieldElem",
    "decimal_enclosure",
    "element",
    "format_element",
    "galois_conjugate",
    "is_square",
    "parse_element",
    "sign_at",
    "AdmissibilityCertificate",
    "Certificate",
    "QuadraticForm",
    "Signature",
    "SquareClass",
    "conjugate_form",
    "discriminant_class",
    "evaluate",
    "form_from_diagonal",
    "form_from_gram",
    "is_admissible_pair",
    "signature_at",
    "similarity_obstruction",
    "square_class_equal",
]
