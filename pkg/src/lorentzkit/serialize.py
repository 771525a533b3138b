"""JSON wire formats: parsing with field-path diagnostics, canonical output.

Documents are rendered with sorted keys and no incidental whitespace, so the
same input always produces identical bytes.  Exact values travel as element
strings; enclosures travel as fixed-notation decimal strings rounded
outward.
"""

from __future__ import annotations

import hashlib
import json

from .enclosure import Interval, interval_to_decimal
from .errors import InputError
from .lattice import (
    GeneratorSet,
    IntegralityReport,
    QACertificate,
    TraceProbeResult,
    element_from_matrix,
)
from .matrices import Matrix
from .numberfield import (
    Embedding,
    FieldDescriptor,
    QuadFieldElem,
    format_element,
    parse_element,
)
from .quadform import (
    AdmissibilityCertificate,
    Certificate,
    QuadraticForm,
    Signature,
    form_from_diagonal,
    form_from_gram,
)

DECIMAL_DIGITS = 30


def canonical_json_bytes(doc, trailing_newline: bool = True) -> bytes:
    text = json.dumps(
        doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True, allow_nan=False
    )
    return (text + "\n").encode("ascii") if trailing_newline else text.encode("ascii")


def payload_sha256(payload) -> str:
    return hashlib.sha256(canonical_json_bytes(payload, trailing_newline=False)).hexdigest()


def _require(cond: bool, where: str, message: str) -> None:
    if not cond:
        raise InputError(where, message)


def parse_field(obj, where: str = "field") -> FieldDescriptor:
    if obj is None:
        return FieldDescriptor()
    _require(isinstance(obj, dict), where, "must be an object like {\"d\": 2} or null")
    d = obj.get("d")
    if d is None:
        return FieldDescriptor()
    _require(isinstance(d, int) and not isinstance(d, bool), f"{where}.d", "must be an integer")
    try:
        return FieldDescriptor(d)
    except InputError as exc:
        raise InputError(f"{where}.d", exc.message) from exc


def parse_element_at(text, field: FieldDescriptor, where: str) -> QuadFieldElem:
    try:
        return parse_element(text, field)
    except InputError as exc:
        raise InputError(where, exc.message) from exc


def parse_vector(obj, field: FieldDescriptor, where: str) -> tuple[QuadFieldElem, ...]:
    _require(isinstance(obj, list) and obj, where, "must be a nonempty array of element strings")
    return tuple(
        parse_element_at(entry, field, f"{where}[{i}]") for i, entry in enumerate(obj)
    )


def parse_matrix_rows(obj, field: FieldDescriptor, where: str) -> tuple:
    _require(isinstance(obj, list) and obj, where, "must be a nonempty array of rows")
    rows = []
    for i, row in enumerate(obj):
        _require(isinstance(row, list) and row, f"{where}[{i}]", "must be a nonempty array")
        _require(
            len(row) == len(obj[0]),
            f"{where}[{i}]",
            f"row length {len(row)} differs from {len(obj[0])}",
        )
        rows.append(
            tuple(
                parse_element_at(entry, field, f"{where}[{i}][{j}]")
                for j, entry in enumerate(row)
            )
        )
    return tuple(rows)


def parse_form(obj, where: str = "form") -> QuadraticForm:
    _require(isinstance(obj, dict), where, "must be an object")
    field = parse_field(obj.get("field"), f"{where}.field")
    diag = obj.get("diag")
    gram = obj.get("gram")
    _require(
        (diag is None) != (gram is None),
        where,
        "exactly one of \"diag\" or \"gram\" is required",
    )
    if diag is not None:
        coeffs = parse_vector(diag, field, f"{where}.diag")
        form = form_from_diagonal(field, coeffs)
    else:
        rows = parse_matrix_rows(gram, field, f"{where}.gram")
        form = form_from_gram(field, rows)
    declared = obj.get("dim")
    if declared is not None:
        _require(
            isinstance(declared, int) and not isinstance(declared, bool),
            f"{where}.dim",
            "must be an integer",
        )
        _require(
            declared == form.dim,
            f"{where}.dim",
            f"declared dimension {declared} does not match matrix size {form.dim}",
        )
    return form


def parse_labeled_matrices(obj, field: FieldDescriptor, where: str) -> list:
    """Lenient generator parse: shapes and entries only, no orthogonality check."""
    _require(isinstance(obj, list) and obj, where, "must be a nonempty array of generators")
    out = []
    for i, gen in enumerate(obj):
        gwhere = f"{where}[{i}]"
        _require(isinstance(gen, dict), gwhere, "must be an object")
        label = gen.get("label", f"g{i + 1}")
        _require(isinstance(label, str), f"{gwhere}.label", "must be a string")
        matrix = gen.get("matrix")
        _require(matrix is not None, f"{gwhere}.matrix", "is required")
        out.append((label, parse_matrix_rows(matrix, field, f"{gwhere}.matrix")))
    return out


def parse_generator_set(obj, where: str = "") -> GeneratorSet:
    """Strict generator-set parse: every matrix must define a group element."""
    prefix = f"{where}." if where else ""
    _require(isinstance(obj, dict), where or "payload", "must be an object")
    form = parse_form(obj.get("form"), f"{prefix}form")
    labeled = parse_labeled_matrices(
        obj.get("generators"), form.field, f"{prefix}generators"
    )
    elements = tuple(element_from_matrix(form, rows) for _, rows in labeled)
    labels = tuple(lab for lab, _ in labeled)
    return GeneratorSet(elements, labels)


def parse_embedding(obj, where: str = "embedding") -> Embedding:
    if obj is None:
        return Embedding.IDENTITY
    _require(
        isinstance(obj, str) and obj in ("identity", "conjugate"),
        where,
        "must be \"identity\" or \"conjugate\"",
    )
    return Embedding(obj)


def encode_field(field: FieldDescriptor) -> dict:
    return {} if field.is_rational else {"d": field.d}


def encode_vector(v) -> list:
    return [format_element(e) for e in v]


def encode_matrix(m: Matrix) -> list:
    return [[format_element(e) for e in row] for row in m]


def encode_form(f: QuadraticForm) -> dict:
    return {
        "field": encode_field(f.field),
        "dim": f.dim,
        "gram": encode_matrix(f.gram),
    }


def encode_signature(sig: Signature) -> dict:
    return {
        "positives": sig.positives,
        "negatives": sig.negatives,
        "zeros": sig.zeros,
    }


def encode_admissibility(cert: AdmissibilityCertificate) -> dict:
    return {
        "verdict": cert.verdict,
        "signature_profile": {
            emb.value: encode_signature(sig)
            for emb, sig in cert.signature_profile.items()
        },
        "failing_embedding": cert.failing_embedding.value
        if cert.failing_embedding
        else None,
    }


def encode_value(value):
    """Recursive JSON encoding for witness payloads."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, QuadFieldElem):
        return format_element(value)
    if isinstance(value, Signature):
        return encode_signature(value)
    if isinstance(value, AdmissibilityCertificate):
        return encode_admissibility(value)
    if isinstance(value, Certificate):
        return encode_certificate(value)
    if isinstance(value, Embedding):
        return value.value
    if isinstance(value, dict):
        return {
            (k.value if isinstance(k, Embedding) else str(k)): encode_value(v)
            for k, v in value.items()
        }
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    raise TypeError(f"cannot encode value of type {type(value).__name__}")


def encode_certificate(cert: Certificate) -> dict:
    return {"verdict": cert.verdict, "witness": encode_value(cert.witness)}


def encode_qa_certificate(cert: QACertificate) -> dict:
    failing = None
    if cert.failing_generator is not None:
        failing = {
            "label": cert.failing_generator.label,
            "position": list(cert.failing_generator.position)
            if cert.failing_generator.position is not None
            else None,
            "reason": cert.failing_generator.reason,
        }
    return {
        "verdict": cert.verdict,
        "admissibility": encode_admissibility(cert.admissibility),
        "failing_generator": failing,
    }


def encode_generator_set(gens: GeneratorSet) -> dict:
    return {
        "form": encode_form(gens.form),
        "generators": [
            {"label": lab, "matrix": encode_matrix(g.matrix)}
            for lab, g in gens.items()
        ],
    }


def encode_integrality(report: IntegralityReport) -> dict:
    return {
        "common_denominator": str(report.common_denominator),
        "is_integral": report.is_integral,
        "ring_basis": report.ring_basis,
    }


def encode_trace_probe(result: TraceProbeResult) -> dict:
    return {
        "traces": [format_element(t) for t in result.traces],
        "verdict": result.verdict,
        "words_enumerated": result.words_enumerated,
        "max_word_length": result.max_word_length,
    }


def encode_interval(interval: Interval, digits: int = DECIMAL_DIGITS) -> dict:
    return interval_to_decimal(interval, digits)
