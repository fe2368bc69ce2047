"""Command-line front end.

Thin client over the service pipelines: each subcommand builds the request
model, runs the matching handler in process (or POSTs it to a running
server with --server), and renders the response as JSON or CSV.  Output is
byte-deterministic for a fixed invocation.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
failure.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import re
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from .errors import WeylsysError
from .service import handlers
from .service import schemas as S

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VERIFY = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' style complex literals: 1, i, -i, 2i, 1+2i, 1.5e-3-0.5i."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("j", "i")
    if not s:
        raise CliError("empty complex literal")
    t = s.replace("i", "j")
    t = re.sub(r"(^|[+\-])j", r"\g<1>1j", t)
    try:
        return complex(t)
    except ValueError as exc:
        raise CliError(f"bad complex literal {text!r} (expected a+bi)") from exc


def parse_extended(text: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise CliError(f"bad number {text!r} (use a float or inf/-inf)") from exc


def _fmt_num(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v)


def _tol_overrides(pairs: Optional[Sequence[str]]) -> Optional[S.ToleranceOverrides]:
    if not pairs:
        return None
    kw = {}
    keys = {"abs": "abs_tol", "rel": "rel_tol", "psd": "psd_slack", "eps": "eps_schedule"}
    for item in pairs:
        for token in item.split(","):
            name, _, value = token.partition("=")
            name = name.strip().lower()
            if name not in keys or not value:
                raise CliError(
                    f"bad --tol entry {token!r} (use abs=..., rel=..., psd=..., eps=a:b:c)"
                )
            if name == "eps":
                kw["eps_schedule"] = [float(x) for x in value.split(":")]
            else:
                kw[keys[name]] = float(value)
    return S.ToleranceOverrides(**kw)


def _angle_spec(args) -> Optional[S.AlphaSpec]:
    alpha = getattr(args, "alpha", None)
    tan_alpha = getattr(args, "tan_alpha", None)
    if alpha is None and tan_alpha is None:
        return None
    if alpha is not None and tan_alpha is not None:
        raise CliError("give only one of --alpha / --tan-alpha")
    if alpha is not None:
        return S.AlphaSpec(alpha=alpha)
    return S.AlphaSpec(tan_alpha=parse_extended(tan_alpha))


def _common_kwargs(args) -> dict:
    return {
        "potential": args.potential,
        "mode": args.mode,
        "x_max": args.xmax,
        "tol": _tol_overrides(args.tol),
    }


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt_num(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _post(server: str, endpoint: str, request_model) -> dict:
    import httpx

    url = server.rstrip("/") + "/" + endpoint
    resp = httpx.post(url, json=request_model.model_dump(mode="json"), timeout=600.0)
    if resp.status_code == 422:
        raise CliError(f"server rejected request: {resp.text}")
    if resp.status_code != 200:
        raise CliError(f"server error {resp.status_code}: {resp.text}", EXIT_DOMAIN)
    return resp.json()


def _run(args, endpoint: str, request_model, handler, response_cls) -> dict:
    if args.server:
        payload = _post(args.server, endpoint, request_model)
        return response_cls.model_validate(payload).model_dump(mode="json")
    return handler(request_model).model_dump(mode="json")


# ---------------------------------------------------------------- commands


def cmd_eval_m(args) -> int:
    zs = [S.ComplexNumber.from_complex(parse_complex(z)) for z in args.z]
    req = S.EvalMRequest(z=zs, **_common_kwargs(args))
    data = _run(args, "eval-m", req, handlers.handle_eval_m, S.EvalMResponse)
    if args.format == "csv":
        rows = [
            (r["z"]["re"], r["z"]["im"], r["m"]["re"], r["m"]["im"], r["err_estimate"])
            for r in data["rows"]
        ]
        _emit(_csv_text(("z_re", "z_im", "m_re", "m_im", "err_estimate"), rows), args.out)
    else:
        _emit(_dump_json(data), args.out)
    return EXIT_OK


def cmd_eval_malpha(args) -> int:
    angle = _angle_spec(args)
    if angle is None:
        raise CliError("eval-malpha needs --alpha or --tan-alpha")
    zs = [S.ComplexNumber.from_complex(parse_complex(z)) for z in args.z]
    req = S.EvalMAlphaRequest(
        angle=angle, z=zs, negate=not args.no_negate, **_common_kwargs(args)
    )
    data = _run(args, "eval-malpha", req, handlers.handle_eval_malpha, S.EvalMAlphaResponse)
    if args.format == "csv":
        rows = [
            (r["z"]["re"], r["z"]["im"], r["value"]["re"], r["value"]["im"])
            for r in data["rows"]
        ]
        _emit(_csv_text(("z_re", "z_im", "value_re", "value_im"), rows), args.out)
    else:
        _emit(_dump_json(data), args.out)
    return EXIT_OK


def cmd_realize(args) -> int:
    req = S.RealizeRequest(target=args.target, angle=_angle_spec(args))
    data = _run(args, "realize", req, handlers.handle_realize, S.RealizeResponse)
    if args.format == "csv":
        _emit(
            _csv_text(
                ("target", "mu", "h_re", "h_im"),
                [(data["target"], data["mu"], data["h"]["re"], data["h"]["im"])],
            ),
            args.out,
        )
    else:
        _emit(_dump_json(data), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    angle = _angle_spec(args)
    mu = parse_extended(args.mu) if args.mu is not None else None
    h = S.ComplexNumber.from_complex(parse_complex(args.h)) if args.h else None
    req = S.ClassifyRequest(angle=angle, mu=mu, h=h, **_common_kwargs(args))
    data = _run(args, "classify", req, handlers.handle_classify, S.ClassifyResponse)
    if args.format == "csv":
        flat = {
            "potential": data["potential"],
            "m_minus_zero": data["m_minus_zero"],
            "tan_alpha": data.get("tan_alpha"),
            "mu": data.get("mu"),
            "operator_accretive": data["operator"]["accretive"],
            "operator_sectorial": data["operator"]["sectorial"],
            "operator_extremal": data["operator"]["extremal"],
            "operator_exact_angle": data["operator"]["exact_angle"],
            "star_ext_class": data["star_ext_class"],
            "lsystem_class": data["lsystem_class"],
        }
        _emit(_csv_text(("key", "value"), sorted(flat.items())), args.out)
    else:
        _emit(_dump_json(data), args.out)
    return EXIT_OK


def cmd_region_scan(args) -> int:
    req = S.RegionScanRequest(alpha_count=args.alpha_count, **_common_kwargs(args))
    data = _run(args, "region-scan", req, handlers.handle_region_scan, S.RegionScanResponse)
    if (args.format or "csv") == "json":
        _emit(_dump_json(data), args.out)
    else:
        rows = [
            (
                r["alpha"],
                r["tan_alpha"],
                r["lsystem_class"],
                r["beta1"],
                r["beta2"],
                r["beta_class"],
                r["beta_universal"],
            )
            for r in data["rows"]
        ]
        header = ("alpha", "tan_alpha", "class", "beta1", "beta2", "beta_class", "beta_universal")
        _emit(_csv_text(header, rows), args.out)
    return EXIT_OK


def cmd_measure(args) -> int:
    if args.t_points < 2 or not (args.t_max > args.t_min > 0):
        raise CliError("empty t range: need 0 < t-min < t-max and t-points >= 2")
    req = S.MeasureRequest(
        angle=_angle_spec(args),
        t_min=args.t_min,
        t_max=args.t_max,
        t_points=args.t_points,
        **_common_kwargs(args),
    )
    data = _run(args, "measure", req, handlers.handle_measure, S.MeasureResponse)
    if args.format == "json":
        _emit(_dump_json(data), args.out)
        return EXIT_OK
    rows = [(r["t"], r["density"], r["cumulative"]) for r in data["rows"]]
    csv_text = _csv_text(("t", "density", "cumulative"), rows)
    header = {k: v for k, v in data.items() if k != "rows"}
    if args.out:
        Path(args.out).write_text(csv_text)
        Path(args.out).with_suffix(".json").write_text(_dump_json(header))
    else:
        sys.stdout.write(_dump_json(header))
        sys.stdout.write(csv_text)
    return EXIT_OK


def cmd_verify(args) -> int:
    req = S.VerifyRequest(seed=args.seed, **_common_kwargs(args))
    data = _run(args, "verify", req, handlers.handle_verify, S.VerifyResponse)
    if args.format == "json":
        _emit(_dump_json(data), args.out)
    elif args.format == "csv":
        rows = [
            (c["check_id"], c["name"], c["passed"], c["detail"], c["note"])
            for c in data["checks"]
        ]
        _emit(_csv_text(("check_id", "name", "passed", "detail", "note"), rows), args.out)
    else:
        lines = []
        for c in data["checks"]:
            lines.append(f"{'PASS' if c['passed'] else 'FAIL'}  {c['check_id']:>3}  {c['name']}: {c['detail']}")
            if c["note"]:
                lines.append(f"      note: {c['note']}")
        lines.append(
            f"{sum(c['passed'] for c in data['checks'])}/{len(data['checks'])} checks passed"
        )
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if data["passed"] else EXIT_VERIFY


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# ----------------------------------------------------------------- parser


def build_parser() -> _Parser:
    parser = _Parser(prog="weylsys", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--potential", default="bessel:1.5",
                        help="bessel:NU | free:ELL | table:PATH")
    common.add_argument("--mode", choices=("auto", "closed_form", "riccati_engine"),
                        default="auto", help="m-function evaluation mode")
    common.add_argument("--tol", action="append", metavar="K=V",
                        help="tolerance overrides: abs=, rel=, psd=, eps=a:b:c")
    common.add_argument("--xmax", type=float, default=None,
                        help="truncation radius of the integration engine")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized trials")
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (verify defaults to a text table)")
    common.add_argument("--out", default=None, metavar="PATH", help="write output to PATH")
    common.add_argument("--server", default=None, metavar="URL",
                        help="send the request to a running weylsys server")

    p = sub.add_parser("eval-m", parents=[common], help="evaluate m(z)")
    p.add_argument("--z", action="append", required=True, metavar="A+Bi")
    p.set_defaults(fn=cmd_eval_m)

    p = sub.add_parser("eval-malpha", parents=[common],
                       help="evaluate -m_alpha(z) (or m_alpha with --no-negate)")
    p.add_argument("--z", action="append", required=True, metavar="A+Bi")
    p.add_argument("--alpha", type=float, default=None, help="angle in radians")
    p.add_argument("--tan-alpha", default=None, help="tangent of the angle (inf allowed)")
    p.add_argument("--no-negate", action="store_true", help="return m_alpha itself")
    p.set_defaults(fn=cmd_eval_malpha)

    p = sub.add_parser("realize", parents=[common],
                       help="system parameters realizing a target function")
    p.add_argument("--target", required=True,
                   choices=("neg-m-infinity", "recip-m-infinity", "neg-m-alpha"))
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--tan-alpha", default=None)
    p.set_defaults(fn=cmd_realize)

    p = sub.add_parser("classify", parents=[common],
                       help="operator / extension / system classification")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--tan-alpha", default=None)
    p.add_argument("--mu", default=None, help="extension parameter (inf allowed)")
    p.add_argument("--h", default=None, metavar="A+Bi", help="boundary parameter, Im h > 0")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("region-scan", parents=[common],
                       help="class tags and angles over an alpha grid")
    p.add_argument("--alpha-count", type=int, default=64)
    p.set_defaults(fn=cmd_region_scan)

    p = sub.add_parser("measure", parents=[common],
                       help="representing-measure density and cumulative mass")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--tan-alpha", default=None)
    p.add_argument("--t-min", type=float, default=0.1)
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--t-points", type=int, default=40)
    p.set_defaults(fn=cmd_measure)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except handlers.SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"error: invalid request: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WeylsysError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
