"""One POST endpoint per certification operation, under /v1."""

from __future__ import annotations

import json

from fastapi import APIRouter
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .. import ops
from . import models


class CanonicalJSONResponse(JSONResponse):
    """Sorted keys, no incidental whitespace: byte-deterministic bodies."""

    def render(self, content) -> bytes:
        return json.dumps(
            content,
            sort_keys=True,
            separators=(",", ":"),
            ensure_ascii=True,
            allow_nan=False,
        ).encode("ascii")


router = APIRouter()


def _dispatch(name: str, req: BaseModel) -> dict:
    # exclude_unset keeps the hashed payload equal to what the client sent
    return ops.run(name, req.model_dump(mode="json", exclude_unset=True))


@router.post("/check-admissible", response_model=models.AdmissibleDoc)
def check_admissible(req: models.FormRequest):
    return _dispatch("check-admissible", req)


@router.post("/signature", response_model=models.SignatureDoc)
def signature(req: models.SignatureRequest):
    return _dispatch("signature", req)


@router.post("/conjugate-form", response_model=models.ConjugateFormDoc)
def conjugate_form(req: models.FormRequest):
    return _dispatch("conjugate-form", req)


@router.post("/evaluate", response_model=models.EvaluateDoc)
def evaluate(req: models.EvaluateRequest):
    return _dispatch("evaluate", req)


@router.post("/classify-pair", response_model=models.ClassifyPairDoc)
def classify_pair(req: models.ClassifyPairRequest):
    return _dispatch("classify-pair", req)


@router.post("/distance", response_model=models.DistanceDoc)
def distance(req: models.DistanceRequest):
    return _dispatch("distance", req)


@router.post("/reflect", response_model=models.ReflectDoc)
def reflect(req: models.ReflectRequest):
    return _dispatch("reflect", req)


@router.post("/assemble", response_model=models.AssembleDoc)
def assemble(req: models.AssembleRequest):
    return _dispatch("assemble", req)


@router.post("/certify-qa", response_model=models.CertifyQADoc)
def certify_qa(req: models.GeneratorsRequest):
    return _dispatch("certify-qa", req)


@router.post("/integrality", response_model=models.IntegralityDoc)
def integrality(req: models.GeneratorsRequest):
    return _dispatch("integrality", req)


@router.post("/trace-probe", response_model=models.TraceProbeDoc)
def trace_probe(req: models.TraceProbeRequest):
    return _dispatch("trace-probe", req)


@router.post("/nonsimilar", response_model=models.CertificateDoc)
def nonsimilar(req: models.TwoFormsRequest):
    return _dispatch("nonsimilar", req)


@router.post("/gps-check", response_model=models.CertificateDoc)
def gps_check(req: models.TwoFormsRequest):
    return _dispatch("gps-check", req)
