"""Subcommand dispatch shared by the HTTP endpoints and the CLI.

Each handler maps one JSON payload to one JSON document.  Documents carry a
"kind" tag and an echo of the input's canonical hash, and every value in
them is either exact (element strings) or a directed-rounded decimal
enclosure; raw floats never appear.
"""

from __future__ import annotations

import os

from . import serialize
from .enclosure import check_precision_bits
from .errors import InputError, LorentzKitError
from .lattice import (
    DEFAULT_WORD_CAP,
    GeneratorSet,
    assemble_inbred_generators,
    certify_matrices,
    gps_incompatibility,
    integrality_report,
    trace_field_probe,
)
from .lattice import element_from_matrix
from .lorentz import (
    Hyperplane,
    ModelPoint,
    classify_hyperplane_pair,
    hyperplane_distance,
    point_distance,
    reflection_matrix,
    separation_invariant,
    systole_bound,
)
from .numberfield import format_element
from .quadform import (
    conjugate_form,
    evaluate,
    is_admissible_pair,
    signature_at,
    similarity_obstruction,
)

DEFAULT_PRECISION_BITS = 128
DEFAULT_MAX_WORD_LENGTH = 4
WORD_CAP_ENV = "LORENTZKIT_WORD_CAP"


def _precision(payload) -> int:
    bits = payload.get("precision_bits", DEFAULT_PRECISION_BITS)
    return check_precision_bits(bits)


def _word_cap(payload) -> int:
    cap = payload.get("word_cap")
    if cap is None:
        raw = os.environ.get(WORD_CAP_ENV)
        if raw is None:
            return DEFAULT_WORD_CAP
        try:
            cap = int(raw)
        except ValueError:
            raise InputError(WORD_CAP_ENV, f"must be an integer, got {raw!r}")
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
        raise InputError("word_cap", "must be a positive integer")
    return cap


def _form(payload, key: str = "form"):
    if key not in payload:
        raise InputError(key, "is required")
    return serialize.parse_form(payload[key], key)


def _vector(payload, form, key: str):
    if key not in payload:
        raise InputError(key, "is required")
    return serialize.parse_vector(payload[key], form.field, key)


def _generator_set(payload) -> GeneratorSet:
    if "generators" not in payload:
        raise InputError("generators", "is required")
    return serialize.parse_generator_set(
        {"form": payload.get("form"), "generators": payload.get("generators")}
    )


def _check_admissible(payload) -> dict:
    cert = is_admissible_pair(_form(payload))
    return serialize.encode_admissibility(cert)


def _signature(payload) -> dict:
    f = _form(payload)
    e = serialize.parse_embedding(payload.get("embedding"))
    sig = signature_at(f, e)
    return {"embedding": e.value, "signature": serialize.encode_signature(sig)}


def _conjugate_form(payload) -> dict:
    return {"form": serialize.encode_form(conjugate_form(_form(payload)))}


def _evaluate(payload) -> dict:
    f = _form(payload)
    x = _vector(payload, f, "vector")
    return {"value": format_element(evaluate(f, x))}


def _classify_pair(payload) -> dict:
    f = _form(payload)
    h0 = Hyperplane(_vector(payload, f, "v0"), f)
    h1 = Hyperplane(_vector(payload, f, "v1"), f)
    return {
        "classification": classify_hyperplane_pair(h0, h1).value,
        "separation": format_element(separation_invariant(h0, h1)),
    }


def _distance(payload) -> dict:
    f = _form(payload)
    bits = _precision(payload)
    has_planes = "v0" in payload or "v1" in payload
    has_points = "x" in payload or "y" in payload
    if has_planes == has_points:
        raise InputError(
            "v0", "provide v0 and v1 for a hyperplane pair, or x and y for points"
        )
    if has_planes:
        h0 = Hyperplane(_vector(payload, f, "v0"), f)
        h1 = Hyperplane(_vector(payload, f, "v1"), f)
        dist = hyperplane_distance(h0, h1, bits)
        return {
            "mode": "hyperplane",
            "cosh_sq": format_element(dist.cosh_sq),
            "distance": serialize.encode_interval(dist.distance_enclosure),
            "systole_bound": serialize.encode_interval(systole_bound(dist)),
            "precision_bits": bits,
        }
    x = ModelPoint(_vector(payload, f, "x"), f)
    y = ModelPoint(_vector(payload, f, "y"), f)
    dist = point_distance(f, x, y, bits)
    return {
        "mode": "point",
        "cosh_sq": format_element(dist.cosh_sq),
        "distance": serialize.encode_interval(dist.distance_enclosure),
        "systole_bound": None,
        "precision_bits": bits,
    }


def _reflect(payload) -> dict:
    f = _form(payload)
    h = Hyperplane(_vector(payload, f, "normal"), f)
    g = reflection_matrix(h)
    return {
        "matrix": serialize.encode_matrix(g.matrix),
        "det": format_element(g.det),
    }


def _assemble(payload) -> dict:
    f = _form(payload)
    if "gamma1" not in payload:
        raise InputError("gamma1", "is required")
    gamma1 = serialize.parse_generator_set(
        {"form": payload.get("form"), "generators": payload["gamma1"]}
    )
    if "i0" not in payload:
        raise InputError("i0", "is required")
    i0 = element_from_matrix(
        f, serialize.parse_matrix_rows(payload["i0"], f.field, "i0")
    )
    sides_raw = payload.get("side_reflections")
    if not isinstance(sides_raw, list) or not sides_raw:
        raise InputError("side_reflections", "must be a nonempty array of matrices")
    sides = [
        element_from_matrix(
            f,
            serialize.parse_matrix_rows(rows, f.field, f"side_reflections[{j}]"),
        )
        for j, rows in enumerate(sides_raw)
    ]
    out = assemble_inbred_generators(gamma1, i0, sides)
    return {
        "generator_set": serialize.encode_generator_set(out),
        "dets": {lab: format_element(g.det) for lab, g in out.items()},
    }


def _certify_qa(payload) -> dict:
    f = _form(payload)
    if "generators" not in payload:
        raise InputError("generators", "is required")
    labeled = serialize.parse_labeled_matrices(
        payload["generators"], f.field, "generators"
    )
    cert = certify_matrices(f, labeled)
    return serialize.encode_qa_certificate(cert)


def _integrality(payload) -> dict:
    gens = _generator_set(payload)
    return serialize.encode_integrality(integrality_report(gens))


def _trace_probe(payload) -> dict:
    gens = _generator_set(payload)
    length = payload.get("max_word_length", DEFAULT_MAX_WORD_LENGTH)
    result = trace_field_probe(gens, length, word_cap=_word_cap(payload))
    return serialize.encode_trace_probe(result)


def _nonsimilar(payload) -> dict:
    f1 = _form(payload, "form1")
    f2 = _form(payload, "form2")
    return serialize.encode_certificate(similarity_obstruction(f1, f2))


def _gps_check(payload) -> dict:
    f1 = _form(payload, "form1")
    f2 = _form(payload, "form2")
    return serialize.encode_certificate(gps_incompatibility(f1, f2))


HANDLERS = {
    "check-admissible": _check_admissible,
    "signature": _signature,
    "conjugate-form": _conjugate_form,
    "evaluate": _evaluate,
    "classify-pair": _classify_pair,
    "distance": _distance,
    "reflect": _reflect,
    "assemble": _assemble,
    "certify-qa": _certify_qa,
    "integrality": _integrality,
    "trace-probe": _trace_probe,
    "nonsimilar": _nonsimilar,
    "gps-check": _gps_check,
}

SUBCOMMANDS = tuple(HANDLERS)


def run(subcommand: str, payload) -> dict:
    """Dispatch one payload; returns the full document with kind and hash echo."""
    if subcommand not in HANDLERS:
        raise InputError("subcommand", f"unknown subcommand {subcommand!r}")
    if not isinstance(payload, dict):
        raise InputError("payload", "must be a JSON object")
    body = HANDLERS[subcommand](payload)
    return {
        "kind": f"lorentzkit/{subcommand}/v1",
        "input_sha256": serialize.payload_sha256(payload),
        **body,
    }


def error_document(exc: Exception, field: str | None = None) -> dict:
    code = exc.code if isinstance(exc, LorentzKitError) else "ERROR"
    return {
        "kind": "lorentzkit/error/v1",
        "error": {
            "code": code,
            "message": str(exc),
            "field": field if field is not None else getattr(exc, "field", None),
        },
    }


def exit_code_for(subcommand: str, doc: dict) -> int:
    """0 certified/holds, 1 refuted, 2 inconclusive, 3 input or schema error."""
    if "error" in doc:
        return 3
    verdict = doc.get("verdict")
    if subcommand in ("check-admissible", "certify-qa"):
        return 0 if verdict == "CERTIFIED" else 1
    if subcommand == "integrality":
        return 0 if doc.get("is_integral") else 1
    if subcommand == "nonsimilar":
        return 0 if verdict == "NON_SIMILAR" else 2
    if subcommand == "gps-check":
        return 0 if verdict == "GPS_INCOMPATIBLE" else 2
    if subcommand == "trace-probe":
        return 0 if verdict == "GENERATES_K" else 2
    return 0
