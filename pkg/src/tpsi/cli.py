"""Command-line front end.

Thin client over the HTTP service: every command is a request against
either an in-process app instance or a remote server (``--server``), so
the CLI and the service cannot drift apart.

Exit codes: 0 all residuals within tolerance, 1 residual failure,
2 usage error, 3 degenerate geometry.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import service
from .suites import SUITES

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

_SUBCOMMANDS = ("run", "dump", "serve")


def _add_geometry_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=2, help="spin modulus, 2..7")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled geometry and sweeps")
    parser.add_argument(
        "--angles",
        type=float,
        nargs=6,
        default=None,
        metavar=("T1", "T2", "T3", "T4", "T5", "T6"),
        help="six dihedral angles; omitted means a fresh sampled tetrahedron per seed",
    )
    parser.add_argument("--degrees", action="store_true", help="interpret --angles in degrees")
    parser.add_argument("--server", default=None, help="base URL of a running server; default is in-process")
    parser.add_argument("--out", default=None, help="output path; default stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpsi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a verification suite and emit a JSON report")
    _add_geometry_flags(run)
    run.add_argument("--suite", default="all", choices=("all",) + SUITES, help="which suite to run")
    run.add_argument("--tolerance", type=float, default=1e-8, help="pass threshold for residuals")
    run.add_argument("--samples", type=int, default=10000, help="assignments per sampled sweep")
    run.add_argument("--threads", type=int, default=None, help="worker threads; falls back to TPSI_THREADS")

    dump = sub.add_parser("dump", help="write one weight tensor in the binary dump format")
    _add_geometry_flags(dump)
    dump.add_argument(
        "--tensor",
        default="R",
        help="selector: R, R', R'', R''' (aliases R0..R3) or planar-R",
    )

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _client(server: str | None):
    if server is None:
        import warnings

        with warnings.catch_warnings():
            # The in-process client works fine on plain httpx; the nag
            # about httpx2 is not actionable here.
            warnings.filterwarnings("ignore", message=".*httpx.*")
            from fastapi.testclient import TestClient

        return TestClient(service.app)
    import httpx

    return httpx.Client(base_url=server, timeout=300.0)


def _error_exit(response) -> int:
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = response.text
    if isinstance(detail, dict) and detail.get("type") == "degenerate-geometry":
        print(f"error: {detail.get('message', 'degenerate geometry')}", file=sys.stderr)
        return EXIT_DEGENERATE
    print(f"error: {detail}", file=sys.stderr)
    if response.status_code == 422:
        return EXIT_USAGE
    return EXIT_FAIL


def _emit_text(text: str, out: str | None) -> None:
    if out is None:
        print(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")


def _run(args: argparse.Namespace) -> int:
    payload = {
        "suite": args.suite,
        "n": args.n,
        "seed": args.seed,
        "tolerance": args.tolerance,
        "samples": args.samples,
        "angles": args.angles,
        "degrees": args.degrees,
        "threads": args.threads,
    }
    with _client(args.server) as client:
        response = client.post("/run", json=payload)
    if response.status_code != 200:
        return _error_exit(response)
    report = response.json()
    _emit_text(json.dumps(report, sort_keys=True, indent=2), args.out)
    return EXIT_PASS if report.get("passed") else EXIT_FAIL


def _dump(args: argparse.Namespace) -> int:
    payload = {
        "tensor": args.tensor,
        "n": args.n,
        "seed": args.seed,
        "angles": args.angles,
        "degrees": args.degrees,
    }
    with _client(args.server) as client:
        response = client.post("/dump", json=payload)
    if response.status_code != 200:
        return _error_exit(response)
    if args.out is None:
        sys.stdout.buffer.write(response.content)
    else:
        with open(args.out, "wb") as handle:
            handle.write(response.content)
    return EXIT_PASS


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(service.app, host=args.host, port=args.port)
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # Bare flags mean `run`, so `tpsi --suite fermat --n 3` works as-is.
    if not argv or argv[0] not in _SUBCOMMANDS and argv[0] not in ("-h", "--help"):
        argv.insert(0, "run")
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _run(args)
    if args.command == "dump":
        return _dump(args)
    return _serve(args)


if __name__ == "__main__":
    raise SystemExit(main())
