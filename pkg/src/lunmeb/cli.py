"""Command-line front end; a thin client over the service handlers.

Every subcommand builds a request model, calls the same handler the HTTP
route uses, and prints the response document.  Floats are serialized with
12 significant digits so identical invocations are byte identical.

Exit codes: 0 success, 1 validation error, 2 failed certificate (a
measurement set whose inconclusive element is not positive semidefinite).
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from .discrimination import InvalidPovmError
from .sdc import fd_curve_csv
from .service import main as handlers
from .service.schemas import (
    BasisBuildRequest,
    BasisCheckRequest,
    CapacityRequest,
    FdCurveRequest,
    PovmBuildRequest,
    PovmCheckRequest,
    SimulateRequest,
    StateSpec,
    SubspaceBasisRequest,
)

SIGNIFICANT_DIGITS = 12


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad input; the contract here wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _round_floats(value):
    if isinstance(value, float):
        return float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    return value


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_model(model, output: str | None) -> None:
    payload = _round_floats(model.model_dump(mode="json", by_alias=True))
    _emit(json.dumps(payload, indent=2) + "\n", output)


def _parse_coeffs(raw: str) -> list[float]:
    try:
        return [float(part) for part in raw.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"malformed coefficient list {raw!r}") from exc


def _state_spec(args) -> StateSpec:
    return StateSpec(
        d=args.d,
        coeffs=_parse_coeffs(args.schmidt),
        coeffs_are_probs=args.probs,
    )


def _add_state_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--d", type=int, default=None, help="qudit dimension")
    parser.add_argument(
        "--schmidt",
        required=True,
        help="comma-separated Schmidt coefficients (amplitudes C_k)",
    )
    parser.add_argument(
        "--probs",
        action="store_true",
        help="interpret --schmidt as probabilities p_k instead of amplitudes",
    )


def _add_output_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default=None, help="write to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lunmeb")
    commands = parser.add_subparsers(dest="command", required=True)

    basis = commands.add_parser("basis", help="basis families and certificates")
    basis_sub = basis.add_subparsers(dest="subcommand", required=True)

    p = basis_sub.add_parser("build", help="emit all class vectors")
    _add_state_arguments(p)
    _add_output_argument(p)

    p = basis_sub.add_parser("check", help="gram and extendability certificate")
    _add_state_arguments(p)
    p.add_argument(
        "--class-label",
        type=int,
        default=None,
        help="restrict the certificate to one class instead of the full family",
    )
    _add_output_argument(p)

    p = basis_sub.add_parser("subspace", help="the (d-1)^2 subspace basis")
    p.add_argument("--d", type=int, required=True)
    _add_output_argument(p)

    povm = commands.add_parser("povm", help="discrimination measurement")
    povm_sub = povm.add_subparsers(dest="subcommand", required=True)

    p = povm_sub.add_parser("build", help="emit the measurement elements")
    _add_state_arguments(p)
    p.add_argument("--convention", choices=["dual", "literal"], default="dual")
    p.add_argument("--a-choice", choices=["paper", "max"], default="paper")
    _add_output_argument(p)

    p = povm_sub.add_parser("check", help="certificates and comparison report")
    _add_state_arguments(p)
    p.add_argument("--convention", choices=["dual", "literal"], default="dual")
    _add_output_argument(p)

    sdc = commands.add_parser("sdc", help="capacity report and protocol simulation")
    sdc_sub = sdc.add_subparsers(dest="subcommand", required=True)

    p = sdc_sub.add_parser("capacity", help="capacity report for (d, p0) or a state")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--p0", type=float, default=None)
    p.add_argument("--schmidt", default=None, help="comma-separated coefficients")
    p.add_argument("--probs", action="store_true")
    _add_output_argument(p)

    p = sdc_sub.add_parser("simulate", help="seeded run of the decoding protocol")
    _add_state_arguments(p)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a-choice", choices=["paper", "max"], default="paper")
    p.add_argument("--convention", choices=["dual", "literal"], default="dual")
    _add_output_argument(p)

    fd = commands.add_parser("fd", help="threshold curve")
    fd_sub = fd.add_subparsers(dest="subcommand", required=True)

    p = fd_sub.add_parser("curve", help="threshold values over a dimension range")
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="end", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    _add_output_argument(p)

    p = commands.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _dispatch(args) -> int:
    if args.command == "basis":
        if args.subcommand == "build":
            _emit_model(handlers.basis_build(BasisBuildRequest(state=_state_spec(args))), args.output)
        elif args.subcommand == "check":
            request = BasisCheckRequest(
                state=_state_spec(args),
                scope="all" if args.class_label is None else "class",
                class_label=args.class_label or 0,
            )
            _emit_model(handlers.basis_check(request), args.output)
        else:
            _emit_model(handlers.basis_subspace(SubspaceBasisRequest(d=args.d)), args.output)
        return 0

    if args.command == "povm":
        if args.subcommand == "build":
            request = PovmBuildRequest(
                state=_state_spec(args),
                convention=args.convention,
                a_choice=args.a_choice,
            )
            _emit_model(handlers.povm_build(request), args.output)
        else:
            request = PovmCheckRequest(state=_state_spec(args), convention=args.convention)
            _emit_model(handlers.povm_check(request), args.output)
        return 0

    if args.command == "sdc":
        if args.subcommand == "capacity":
            spec = None
            if args.schmidt is not None:
                spec = StateSpec(
                    d=args.d, coeffs=_parse_coeffs(args.schmidt), coeffs_are_probs=args.probs
                )
                request = CapacityRequest(state=spec)
            else:
                request = CapacityRequest(d=args.d, p0=args.p0)
            _emit_model(handlers.sdc_capacity(request), args.output)
        else:
            request = SimulateRequest(
                state=_state_spec(args),
                trials=args.trials,
                seed=args.seed,
                a_choice=args.a_choice,
                convention=args.convention,
            )
            _emit_model(handlers.sdc_simulate(request), args.output)
        return 0

    if args.command == "fd":
        response = handlers.fd_curve_endpoint(FdCurveRequest(start=args.start, end=args.end))
        if args.format == "csv":
            _emit(fd_curve_csv([(row.d, row.f_d) for row in response.rows]), args.output)
        else:
            _emit_model(response, args.output)
        return 0

    if args.command == "serve":
        import uvicorn

        uvicorn.run("lunmeb.service.main:app", host=args.host, port=args.port)
        return 0

    raise ValueError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except ValidationError as exc:
        messages = "; ".join(err["msg"] for err in exc.errors())
        print(f"lunmeb: invalid input: {messages}", file=sys.stderr)
        return 1
    except InvalidPovmError as exc:
        print(f"lunmeb: certificate failed: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"lunmeb: invalid input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
