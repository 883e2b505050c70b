"""Command-line client for the cutbound service.

Each subcommand builds the same request model the HTTP endpoint accepts and
either calls the handler in process (default) or POSTs it to a running
server (--server URL).  Output is a deterministic JSON run report, or CSV
pair rows for the embedding commands.

Exit codes: 0 success/verified, 1 verification mismatch, 2 input error,
3 guard refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request

from pydantic import BaseModel, ValidationError

from .errors import GuardExceededError, InfiniteDistortionError, InputError
from .service import schemas
from .service.app import certify, embed, formula, oracle, pipeline

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

_HANDLERS = {
    "formula": (formula, schemas.FormulaRequest),
    "embed": (embed, schemas.EmbedRequest),
    "certify": (certify, schemas.CertifyRequest),
    "oracle": (oracle, schemas.OracleRequest),
    "pipeline": (pipeline, schemas.PipelineRequest),
}


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message
        super().__init__(message)


def _call(command: str, request: BaseModel, server: str | None) -> dict:
    if server is None:
        handler, _ = _HANDLERS[command]
        try:
            response = handler(request)
        except InputError as exc:
            raise CliFailure(EXIT_INPUT, str(exc))
        except InfiniteDistortionError as exc:
            raise CliFailure(EXIT_INPUT, str(exc))
        except GuardExceededError as exc:
            raise CliFailure(EXIT_GUARD, str(exc))
        return response.model_dump(exclude_none=True)

    url = server.rstrip("/") + "/" + command
    payload = request.model_dump_json().encode()
    http_req = urllib.request.Request(
        url, data=payload, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(http_req) as resp:
            return json.loads(resp.read())
    except urllib.error.HTTPError as exc:
        body = exc.read().decode(errors="replace")
        try:
            detail = json.loads(body).get("detail", body)
        except json.JSONDecodeError:
            detail = body
        code = EXIT_GUARD if exc.code == 413 else EXIT_INPUT
        raise CliFailure(code, f"server returned {exc.code}: {detail}")
    except urllib.error.URLError as exc:
        raise CliFailure(EXIT_INPUT, f"cannot reach server {server}: {exc.reason}")


def _print_report(command: str, inputs: dict, outputs: dict, args) -> None:
    if args.no_timings:
        outputs.pop("timings", None)
    report = {"command": command, "inputs": inputs, "outputs": outputs}
    print(json.dumps(report, indent=2, sort_keys=True))


def _print_csv(rows: list[dict]) -> None:
    print("x,y,d,d1,ratio")
    for row in rows:
        print(f"{row['x']},{row['y']},{row['base']},{row['embedded']},{row['ratio']}")


def _load_json_file(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliFailure(EXIT_INPUT, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliFailure(EXIT_INPUT, f"{path} is not valid JSON: {exc}")


def _run_formula(args) -> int:
    req = schemas.FormulaRequest(n=args.n)
    out = _call("formula", req, args.server)
    _print_report("formula", {"n": args.n}, out, args)
    return EXIT_OK


def _run_embed(args) -> int:
    req = schemas.EmbedRequest(
        k=args.k,
        ell=args.ell,
        include_coordinates=True,
        include_pairs=args.csv,
        guard_cuts=args.guard_cuts,
    )
    out = _call("embed", req, args.server)
    if args.output:
        doc = {
            "measure": out["measure"],
            "coordinates": out.get("coordinates"),
            "report": out["report"],
        }
        with open(args.output, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
    if args.csv:
        _print_csv(out["pairs"])
    else:
        _print_report("embed", {"k": args.k, "ell": args.ell}, out, args)
    return EXIT_OK if out["matches_formula"] else EXIT_MISMATCH


def _run_certify(args) -> int:
    req = schemas.CertifyRequest(n=args.n)
    out = _call("certify", req, args.server)
    _print_report("certify", {"n": args.n}, out, args)
    return EXIT_OK


def _run_oracle(args) -> int:
    doc = _load_json_file(args.metric_file)
    try:
        req = schemas.OracleRequest(
            metric=schemas.MetricDoc(**doc), guard_oracle_points=args.guard_oracle_points
        )
    except (ValidationError, TypeError) as exc:
        raise CliFailure(EXIT_INPUT, f"bad metric document: {exc}")
    out = _call("oracle", req, args.server)
    _print_report("oracle", {"metric_file": args.metric_file}, out, args)
    return EXIT_OK


def _run_pipeline(args) -> int:
    doc = _load_json_file(args.instance_file)
    try:
        req = schemas.PipelineRequest(
            instance=schemas.InstanceDoc(**doc),
            epsilon=args.epsilon,
            with_oracle=not args.no_oracle,
            include_pairs=args.csv,
            guard_cuts=args.guard_cuts,
            guard_oracle_points=args.guard_oracle_points,
        )
    except (ValidationError, TypeError) as exc:
        raise CliFailure(EXIT_INPUT, f"bad instance document: {exc}")
    out = _call("pipeline", req, args.server)
    if args.csv:
        _print_csv(out["pairs"])
    else:
        _print_report(
            "pipeline",
            {"instance_file": args.instance_file, "epsilon": args.epsilon},
            out,
            args,
        )
    if out.get("matches_oracle") is False:
        return EXIT_MISMATCH
    return EXIT_OK


def _run_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server",
        default=None,
        metavar="URL",
        help="send the request to a running cutbound server instead of computing in process",
    )
    common.add_argument(
        "--no-timings", action="store_true", help="suppress the timings block"
    )

    parser = argparse.ArgumentParser(
        prog="cutbound",
        description="Exact l1-embedding distortion toolkit for K_{2,n}-type metrics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", parents=[common], help="closed-form minimum distortion for K_{2,n}")
    p.add_argument("n", type=int)
    p.set_defaults(run=_run_formula)

    p = sub.add_parser("embed", parents=[common], help="build and verify the theta-graph cut embedding")
    p.add_argument("k", type=int)
    p.add_argument("ell", type=int)
    p.add_argument("--output", metavar="PATH", help="write measure+coordinates+report JSON here")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON run report (the default)")
    fmt.add_argument("--csv", action="store_true", help="emit per-pair CSV rows instead of JSON")
    p.add_argument("--guard-cuts", type=int, default=6, metavar="N", help="max k for subset enumeration")
    p.set_defaults(run=_run_embed)

    p = sub.add_parser("certify", parents=[common], help="hypermetric lower-bound certificate for K_{2,n}")
    p.add_argument("n", type=int)
    p.set_defaults(run=_run_certify)

    p = sub.add_parser("oracle", parents=[common], help="exact minimum distortion of a metric JSON file")
    p.add_argument("metric_file")
    p.add_argument("--guard-oracle-points", type=int, default=12, metavar="N")
    p.set_defaults(run=_run_oracle)

    p = sub.add_parser("pipeline", parents=[common], help="reduce a weighted instance and measure its embedding")
    p.add_argument("instance_file")
    p.add_argument("--epsilon", default="0", help="relative weight-approximation error, e.g. 1/100")
    p.add_argument("--no-oracle", action="store_true", help="skip the side-by-side oracle run")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON run report (the default)")
    fmt.add_argument("--csv", action="store_true", help="emit per-pair CSV rows instead of JSON")
    p.add_argument("--guard-cuts", type=int, default=6, metavar="N")
    p.add_argument("--guard-oracle-points", type=int, default=12, metavar="N")
    p.set_defaults(run=_run_pipeline)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(run=_run_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except CliFailure as failure:
        print(f"error: {failure.message}", file=sys.stderr)
        return failure.code
    except ValidationError as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
