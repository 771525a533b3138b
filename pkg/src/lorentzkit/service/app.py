"""Application factory and the optional standalone server entry point."""

from __future__ import annotations

import argparse

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError

from .. import __version__, ops
from ..errors import LorentzKitError
from .routes import CanonicalJSONResponse, router


def _loc_to_field(loc) -> str:
    parts: list[str] = []
    for p in loc:
        if p == "body" and not parts:
            continue
        if isinstance(p, int):
            if parts:
                parts[-1] += f"[{p}]"
            else:
                parts.append(f"[{p}]")
        else:
            parts.append(str(p))
    return ".".join(parts) or "payload"


def create_app() -> FastAPI:
    app = FastAPI(
        title="lorentzkit",
        version=__version__,
        default_response_class=CanonicalJSONResponse,
    )
    app.include_router(router, prefix="/v1")

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.exception_handler(LorentzKitError)
    async def domain_error(request: Request, exc: LorentzKitError):
        return CanonicalJSONResponse(status_code=400, content=ops.error_document(exc))

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0]
        doc = {
            "kind": "lorentzkit/error/v1",
            "error": {
                "code": "INPUT_ERROR",
                "message": str(first.get("msg", "invalid request")),
                "field": _loc_to_field(first.get("loc", ())),
            },
        }
        return CanonicalJSONResponse(status_code=422, content=doc)

    return app


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lorentzkit-serve", description="Run the certification service."
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args(argv)
    import uvicorn

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0
