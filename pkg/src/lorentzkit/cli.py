"""Batch front end.

Each invocation posts one JSON payload to the service and writes the
resulting document.  By default the service runs in-process (no socket, no
daemon); --server or LORENTZKIT_SERVER points the same client at a remote
instance instead.

Exit codes: 0 certified/holds, 1 refuted, 2 inconclusive, 3 input or
schema error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import ops
from .serialize import canonical_json_bytes

SERVER_ENV = "LORENTZKIT_SERVER"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorentzkit",
        description="Exact certification toolkit for quadratic forms, "
        "hyperbolic reflections, and inbred lattice generators.",
    )
    parser.add_argument("subcommand", choices=ops.SUBCOMMANDS)
    parser.add_argument(
        "--input",
        default="-",
        help="payload file, '-' for stdin, or an inline JSON object",
    )
    parser.add_argument(
        "--precision-bits",
        type=int,
        default=None,
        help="enclosure precision for distance outputs (default 128)",
    )
    parser.add_argument("--output", default=None, help="write the document here instead of stdout")
    parser.add_argument(
        "--server",
        default=None,
        help=f"base URL of a running service (default: in-process; env {SERVER_ENV})",
    )
    return parser


def _read_payload_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if source.lstrip().startswith("{"):
        return source
    with open(source, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(doc_bytes: bytes, output: str | None) -> None:
    if output is None:
        sys.stdout.buffer.write(doc_bytes)
        sys.stdout.buffer.flush()
    else:
        with open(output, "wb") as fh:
            fh.write(doc_bytes)


def _post(subcommand: str, payload: dict, server: str | None):
    if server:
        import httpx

        with httpx.Client(base_url=server, timeout=60.0) as client:
            resp = client.post(f"/v1/{subcommand}", json=payload)
            return resp.status_code, resp.json()
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import create_app

    with TestClient(create_app(), raise_server_exceptions=False) as client:
        resp = client.post(f"/v1/{subcommand}", json=payload)
        return resp.status_code, resp.json()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = _read_payload_text(args.input)
    except OSError as exc:
        doc = {
            "kind": "lorentzkit/error/v1",
            "error": {"code": "INPUT_ERROR", "message": str(exc), "field": "input"},
        }
        _write(canonical_json_bytes(doc), args.output)
        return 3
    try:
        payload = json.loads(raw)
        if not isinstance(payload, dict):
            raise ValueError("payload must be a JSON object")
    except ValueError as exc:
        doc = {
            "kind": "lorentzkit/error/v1",
            "error": {"code": "INPUT_ERROR", "message": str(exc), "field": "input"},
        }
        _write(canonical_json_bytes(doc), args.output)
        return 3
    if args.precision_bits is not None:
        payload["precision_bits"] = args.precision_bits
    server = args.server or os.environ.get(SERVER_ENV)
    status, doc = _post(args.subcommand, payload, server)
    _write(canonical_json_bytes(doc), args.output)
    if status >= 400:
        return 3
    return ops.exit_code_for(args.subcommand, doc)
