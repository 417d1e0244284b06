"""Command-line entry point: ``suspzeta <command> [flags]``."""

import argparse
import asyncio
import json
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Literal

from loguru import logger
from pydantic import ValidationError

from .exceptions import ExitStatus, UsageError, ZetaError
from .ingest import parse_bundle, parse_document, parse_resolution, read_source
from .models import (
    Command,
    ResolutionData,
    StratumProfile,
    SuspensionParams,
    ZetaBundle,
)
from .services import config
from .suspension import (
    fermat_discrepancy,
    legacy_formula,
    pole_bound_G,
    suspend_F_twisted,
    suspend_G,
    suspension_matrix_identity,
)
from .symbolic import (
    MotivicExpression,
    RationalFunction,
    format_rational_function,
    motivic_series,
)
from .verify import format_table, run_checks
from .zeta import (
    bundle_from_resolution,
    relevant_twists,
    resolution_topological,
    stratum_naive_motivic,
    stratum_topological,
    stratum_twisted_topological,
)

OutputMode = Literal["canonical", "latex"]


def format_output(x: RationalFunction | MotivicExpression, mode: OutputMode) -> str:
    if isinstance(x, RationalFunction):
        return format_rational_function(x, latex=mode == "latex")
    return str(x)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got {text!r}"
        ) from exc


def build_parser() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--resolution", type=Path, help="resolution data JSON file")
    flags.add_argument("--bundle", type=Path, help="zeta bundle JSON file")
    flags.add_argument("--fixture", help="name of a shipped fixture")
    flags.add_argument("--Q", dest="q", type=int)
    flags.add_argument("--p", type=int, default=0)
    flags.add_argument("--nuz", type=int)
    flags.add_argument("--d", type=int, help="dimension for the pole candidates")
    flags.add_argument("--twist", type=int)
    flags.add_argument("--N", dest="n", type=_int_list, default=())
    flags.add_argument("--nu", type=_int_list, default=())
    flags.add_argument("--latex", action="store_true")
    flags.add_argument("--series-bound", type=int)
    flags.add_argument("--l-bound", type=int)
    flags.add_argument("--json", dest="json_output", action="store_true")

    parser = argparse.ArgumentParser(
        prog="suspzeta",
        description="Topological and motivic zeta functions of suspensions.",
    )
    commands = parser.add_subparsers(dest="name", required=True)
    for name, text in (
        ("top", "topological zeta function of resolution data"),
        ("twisted", "twisted zeta function of resolution data or of a stratum"),
        ("stratum", "closed-form stratum contributions"),
        ("motivic-stratum", "motivic stratum contributions and their series"),
        ("suspend-f", "zeta function of F = z^Q - f"),
        ("suspend-g", "zeta function of G = z^p (z^Q - f)"),
        ("matrix", "suspension matrix and its identity"),
        ("compare-legacy", "suspension formula against the legacy formula"),
        ("verify", "run the fixture suite"),
    ):
        commands.add_parser(name, parents=[flags], help=text)
    return parser


def _require(value, flag: str):
    if value is None or value == ():
        raise UsageError(f"missing required flag {flag}")
    return value


def _resolution(command: Command) -> ResolutionData:
    if command.resolution is None and command.fixture is None:
        raise UsageError("missing required flag --resolution (or --fixture)")
    text, source = read_source(command.resolution, command.fixture)
    return parse_resolution(text, source)


def _bundle(command: Command) -> ZetaBundle:
    if command.bundle is not None:
        text, source = read_source(command.bundle, None)
        return parse_bundle(text, source)
    if command.resolution is not None:
        res = _resolution(command)
        return bundle_from_resolution(res, relevant_twists(res))
    if command.fixture is not None:
        document = parse_document(*read_source(None, command.fixture))
        if isinstance(document, ZetaBundle):
            return document
        return bundle_from_resolution(document, relevant_twists(document))
    raise UsageError("missing required flag --bundle (or --resolution, --fixture)")


def _profile(command: Command) -> StratumProfile:
    try:
        return StratumProfile(
            n=_require(command.n, "--N"),
            nu=_require(command.nu, "--nu"),
            q=_require(command.q, "--Q"),
            p=command.p,
            nuz=1 if command.nuz is None else command.nuz,
        )
    except ValidationError as exc:
        raise UsageError(str(exc.errors()[0]["msg"])) from exc


def _parts(parts: dict, total, mode: OutputMode) -> str:
    lines = [f"{name}: {format_output(value, mode)}" for name, value in parts.items()]
    lines.append(f"total: {format_output(total, mode)}")
    return "\n".join(lines)


def cmd_top(command: Command, mode: OutputMode) -> str:
    zeta = resolution_topological(_resolution(command), command.twist or 1)
    return format_output(zeta, mode)


def cmd_twisted(command: Command, mode: OutputMode) -> str:
    twist = _require(command.twist, "--twist")
    if command.n:
        zeta = stratum_twisted_topological(_profile(command), twist)
        return _parts(zeta.parts(), zeta.total(), mode)
    return format_output(resolution_topological(_resolution(command), twist), mode)


def cmd_stratum(command: Command, mode: OutputMode) -> str:
    zeta = stratum_topological(_profile(command))
    return _parts(zeta.parts(), zeta.total(), mode)


def cmd_motivic_stratum(command: Command, mode: OutputMode) -> str:
    zeta = stratum_naive_motivic(_profile(command))
    if command.series_bound is None:
        return _parts(zeta.parts(), zeta.total(), mode)
    l_bound = config.l_bound if command.l_bound is None else command.l_bound
    blocks = []
    for name, part in zeta.parts().items():
        series = motivic_series(part, command.series_bound, l_bound)
        blocks.append(f"{name}:\n{series}")
    return "\n".join(blocks)


def cmd_suspend_f(command: Command, mode: OutputMode) -> str:
    q = _require(command.q, "--Q")
    zeta = suspend_F_twisted(_bundle(command), q, command.twist or 1)
    return format_output(zeta, mode)


def cmd_suspend_g(command: Command, mode: OutputMode) -> str:
    params = SuspensionParams(
        q=_require(command.q, "--Q"),
        p=command.p,
        nuz=1 if command.nuz is None else command.nuz,
        d=1 if command.d is None else command.d,
    )
    bundle = _bundle(command)
    result = format_output(suspend_G(bundle, params), mode)
    if command.d is None:
        return result
    candidates = sorted(pole_bound_G(set(bundle.lookup(1).poles()), params))
    return f"{result}\npole candidates: {', '.join(str(c) for c in candidates)}"


def cmd_matrix(command: Command, mode: OutputMode) -> str:
    q = _require(command.q, "--Q")
    identity = suspension_matrix_identity(_bundle(command), q)
    lines = [f"divisors: {', '.join(str(d) for d in identity.matrix.divisors)}"]
    lines += [" ".join(f"{x:>5}" for x in row) for row in identity.matrix.b]
    lines.append(f"identity holds: {str(identity.equal).lower()}")
    return "\n".join(lines)


def cmd_compare_legacy(command: Command, mode: OutputMode) -> str:
    q = _require(command.q, "--Q")
    bundle = _bundle(command)
    suspension = suspend_F_twisted(bundle, q, 1)
    legacy = legacy_formula(bundle, q)
    lines = [
        f"suspension: {format_output(suspension, mode)}",
        f"legacy: {format_output(legacy, mode)}",
        f"difference: {format_output(suspension - legacy, mode)}",
    ]
    if q >= 2:
        discrepancy = format_output(fermat_discrepancy(q), mode)
        lines.append(f"fermat discrepancy: {discrepancy}")
    return "\n".join(lines)


HANDLERS: dict[str, Callable[[Command, OutputMode], str]] = {
    "top": cmd_top,
    "twisted": cmd_twisted,
    "stratum": cmd_stratum,
    "motivic-stratum": cmd_motivic_stratum,
    "suspend-f": cmd_suspend_f,
    "suspend-g": cmd_suspend_g,
    "matrix": cmd_matrix,
    "compare-legacy": cmd_compare_legacy,
}


def configure_logging(level: str | None = None) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level or config.log_level)


def _execute(command: Command) -> tuple[str, ExitStatus]:
    if command.name == "verify":
        results = asyncio.run(run_checks())
        passed = all(r.passed for r in results)
        status = ExitStatus.OK if passed else ExitStatus.DOMAIN_ERROR
        return format_table(results), status
    mode: OutputMode = "latex" if command.latex else "canonical"
    return HANDLERS[command.name](command, mode), ExitStatus.OK


def run(argv: list[str] | None = None) -> int:
    try:
        namespace = build_parser().parse_args(argv)
    except SystemExit as exc:
        return ExitStatus.OK if exc.code == 0 else ExitStatus.USAGE_ERROR
    try:
        command = Command.model_validate(vars(namespace))
    except ValidationError as exc:
        error = exc.errors()[0]
        print(f"suspzeta: error: {error['loc'][0]}: {error['msg']}", file=sys.stderr)
        return ExitStatus.USAGE_ERROR

    warnings: list[str] = []
    sink = None
    if command.json_output:
        sink = logger.add(
            lambda message: warnings.append(message.record["message"]), level="WARNING"
        )
    logger.info(f"suspzeta {command.name}")
    try:
        output, status = _execute(command)
    except ZetaError as exc:
        logger.info(f"suspzeta {command.name} failed: {exc.detail}")
        if command.json_output:
            print(json.dumps({"error": exc.detail, "warnings": warnings}))
        else:
            print(f"suspzeta: error: {exc.detail}", file=sys.stderr)
        return exc.exit_status
    finally:
        if sink is not None:
            logger.remove(sink)
    if command.json_output:
        print(json.dumps({"result": output, "warnings": warnings}))
    else:
        print(output)
    logger.info(f"suspzeta {command.name} finished with status {int(status)}")
    return status


def main() -> None:
    configure_logging()
    sys.exit(run(sys.argv[1:]))
