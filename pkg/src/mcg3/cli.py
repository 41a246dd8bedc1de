"""Command-line front end.

Each subcommand marshals its arguments into the same request models the
FastAPI service accepts, runs the shared handler in-process (or POSTs to a
running service when --server is given), and prints one JSON report.

Exit status: 0 on success, 2 on validation or parse errors, 3 when the word
decider exhausted its budget (an expected outcome scripts must distinguish).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from pydantic import BaseModel, ValidationError

from .errors import Mcg3Error
from .service import handlers, schemas

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_EXHAUSTED = 3

_ENDPOINTS = {
    "classify-lens": (schemas.LensClassifyRequest, handlers.classify_lens),
    "analyze-manifold": (schemas.ManifoldRequest, handlers.analyze_manifold),
    "build-mcg": (schemas.BuildMcgRequest, handlers.build_mcg),
    "decide-word": (schemas.DecideWordRequest, handlers.decide_word),
    "enumerate-homs": (schemas.EnumerateHomsRequest, handlers.enumerate_homs),
    "classify-reps": (schemas.ClassifyRepsRequest, handlers.classify_reps),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcg3",
        description="Mapping-class groups of connected sums of prime 3-manifolds.",
    )
    parser.add_argument("--json", action="store_true", help="compact single-line output")
    parser.add_argument(
        "--tolerance", type=float, default=1e-9, help="floating comparison tolerance"
    )
    parser.add_argument(
        "--seed", type=int, default=0, help="seed for sampled parameters"
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="send the request to a running service instead of computing in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    lens = sub.add_parser("classify-lens", help="homeomorphism, homotopy, and MCG of lens spaces")
    lens.add_argument("p", type=int)
    lens.add_argument("q", type=int)
    lens.add_argument("q_prime", type=int, nargs="?", default=None)

    analyze = sub.add_parser("analyze-manifold", help="analyze a connected-sum spec file")
    analyze.add_argument("path", help="manifold spec JSON file")

    build = sub.add_parser("build-mcg", help="mapping-class generator report for a sum")
    build.add_argument("path", help="manifold spec JSON file")
    build.add_argument("--emit-automorphisms", action="store_true")
    build.add_argument("--emit-presentation", action="store_true")

    decide = sub.add_parser("decide-word", help="decide triviality of a word")
    decide.add_argument("--presentation", required=True, help="presentation JSON file")
    decide.add_argument("--word", required=True, help='space-separated letters, e.g. "a b a^-1"')
    decide.add_argument("--depth", type=int, default=8, help="relator-insertion depth cap")
    decide.add_argument("--degree", type=int, default=5, help="largest symmetric group searched")
    decide.add_argument("--max-steps", type=int, default=2_000_000)

    homs = sub.add_parser("enumerate-homs", help="all homomorphisms into a symmetric group")
    homs.add_argument("--presentation", required=True, help="presentation JSON file")
    homs.add_argument("--degree", type=int, required=True)

    classify = sub.add_parser("classify-reps", help="unitary irreducible representation catalog")
    classify.add_argument("--group", default="rp3-sum")
    classify.add_argument("--sample-tau", type=int, default=16, metavar="N")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise Mcg3Error(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise Mcg3Error(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc


def _build_request(args: argparse.Namespace) -> BaseModel:
    if args.command == "classify-lens":
        return schemas.LensClassifyRequest(p=args.p, q=args.q, q_prime=args.q_prime)
    if args.command == "analyze-manifold":
        spec = _load_json_file(args.path)
        if not isinstance(spec, dict) or not isinstance(spec.get("primes"), list):
            raise Mcg3Error('manifold spec must be an object with a "primes" list')
        return schemas.ManifoldRequest(primes=spec["primes"])
    if args.command == "build-mcg":
        spec = _load_json_file(args.path)
        if not isinstance(spec, dict) or not isinstance(spec.get("primes"), list):
            raise Mcg3Error('manifold spec must be an object with a "primes" list')
        return schemas.BuildMcgRequest(
            primes=spec["primes"],
            emit_automorphisms=args.emit_automorphisms,
            emit_presentation=args.emit_presentation,
        )
    if args.command == "decide-word":
        return schemas.DecideWordRequest(
            presentation=_load_json_file(args.presentation),
            word=args.word,
            depth=args.depth,
            degree=args.degree,
            max_steps=args.max_steps,
        )
    if args.command == "enumerate-homs":
        return schemas.EnumerateHomsRequest(
            presentation=_load_json_file(args.presentation), degree=args.degree
        )
    if args.command == "classify-reps":
        return schemas.ClassifyRepsRequest(
            target=args.group,
            samples=args.sample_tau,
            tolerance=args.tolerance,
            seed=args.seed,
        )
    raise Mcg3Error(f"unknown command {args.command!r}")


def _run_remote(server: str, command: str, request: BaseModel) -> dict:
    import httpx

    url = f"{server.rstrip('/')}/{command}"
    response = httpx.post(url, json=request.model_dump(), timeout=600.0)
    if response.status_code == 422:
        detail = response.json().get("detail", "validation error")
        raise Mcg3Error(str(detail))
    response.raise_for_status()
    return response.json()


def _emit(report: dict, compact: bool) -> None:
    if compact:
        print(json.dumps(report, separators=(",", ":")))
    else:
        print(json.dumps(report, indent=2))


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK
    try:
        request = _build_request(args)
        if args.server:
            result = _run_remote(args.server, args.command, request)
        else:
            _, handler = _ENDPOINTS[args.command]
            result = handler(request).model_dump()
    except (Mcg3Error, ValidationError) as exc:
        _emit({"command": args.command, "error": str(exc)}, args.json)
        return EXIT_VALIDATION
    warnings = result.pop("warnings", [])
    report = {"command": args.command, "warnings": warnings, "result": result}
    _emit(report, args.json)
    if args.command == "decide-word" and result.get("verdict") == "exhausted":
        return EXIT_EXHAUSTED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
