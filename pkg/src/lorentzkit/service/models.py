"""Request and response schemas for the HTTP endpoints."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel


class FieldIn(BaseModel):
    d: int | None = None


class FormIn(BaseModel):
    field: FieldIn | None = None
    dim: int | None = None
    gram: list[list[str]] | None = None
    diag: list[str] | None = None


class GeneratorIn(BaseModel):
    label: str | None = None
    matrix: list[list[str]]


class FormRequest(BaseModel):
    form: FormIn


class SignatureRequest(FormRequest):
    embedding: str | None = None


class EvaluateRequest(FormRequest):
    vector: list[str]


class ClassifyPairRequest(FormRequest):
    v0: list[str]
    v1: list[str]


class DistanceRequest(FormRequest):
    v0: list[str] | None = None
    v1: list[str] | None = None
    x: list[str] | None = None
    y: list[str] | None = None
    precision_bits: int | None = None


class ReflectRequest(FormRequest):
    normal: list[str]


class AssembleRequest(FormRequest):
    gamma1: list[GeneratorIn]
    i0: list[list[str]]
    side_reflections: list[list[list[str]]]


class GeneratorsRequest(FormRequest):
    generators: list[GeneratorIn]


class TraceProbeRequest(GeneratorsRequest):
    max_word_length: int | None = None
    word_cap: int | None = None


class TwoFormsRequest(BaseModel):
    form1: FormIn
    form2: FormIn


class DocBase(BaseModel):
    kind: str
    input_sha256: str


class SignatureOut(BaseModel):
    positives: int
    negatives: int
    zeros: int


class FormOut(BaseModel):
    field: dict
    dim: int
    gram: list[list[str]]


class IntervalOut(BaseModel):
    lo: str
    hi: str


class GeneratorOut(BaseModel):
    label: str
    matrix: list[list[str]]


class GeneratorSetOut(BaseModel):
    form: FormOut
    generators: list[GeneratorOut]


class AdmissibilityOut(BaseModel):
    verdict: str
    signature_profile: dict[str, SignatureOut]
    failing_embedding: str | None


class FailingGeneratorOut(BaseModel):
    label: str
    position: list[int] | None
    reason: str


class AdmissibleDoc(DocBase):
    verdict: str
    signature_profile: dict[str, SignatureOut]
    failing_embedding: str | None


class SignatureDoc(DocBase):
    embedding: str
    signature: SignatureOut


class ConjugateFormDoc(DocBase):
    form: FormOut


class EvaluateDoc(DocBase):
    value: str


class ClassifyPairDoc(DocBase):
    classification: str
    separation: str


class DistanceDoc(DocBase):
    mode: str
    cosh_sq: str
    distance: IntervalOut
    systole_bound: IntervalOut | None
    precision_bits: int


class ReflectDoc(DocBase):
    matrix: list[list[str]]
    det: str


class AssembleDoc(DocBase):
    generator_set: GeneratorSetOut
    dets: dict[str, str]


class CertifyQADoc(DocBase):
    verdict: str
    admissibility: AdmissibilityOut
    failing_generator: FailingGeneratorOut | None


class IntegralityDoc(DocBase):
    common_denominator: str
    is_integral: bool
    ring_basis: str


class TraceProbeDoc(DocBase):
    traces: list[str]
    verdict: str
    words_enumerated: int
    max_word_length: int


class CertificateDoc(DocBase):
    verdict: str
    witness: dict[str, Any]


class ErrorInfo(BaseModel):
    code: str
    message: str
    field: str | None = None


class ErrorDoc(BaseModel):
    kind: str
    error: ErrorInfo
