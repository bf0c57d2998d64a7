"""
Main entry point for the nbcube command-line interface.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

from nbcube.cayley import (
    CayleyGraph,
    conjecture_check,
    find_valid_ordering,
    parse_generators,
    parse_group,
    theorem3_witness,
    verify_witness,
)
from nbcube.certificate_io import dumps_certificate, read_certificate
from nbcube.constants import (
    DEFAULT_BUDGET,
    LOG_FORMAT,
    TABLE_COLUMNS,
    ExitCode,
    OutputFormat,
    RunConfig,
    Symmetry,
)
from nbcube.construct import build_certificate, validate_certificate
from nbcube.cube import (
    CubeSpec,
    cached_cube,
    check_02_property,
    check_counting_lemma,
    check_subcube_partition,
)
from nbcube.exceptions import (
    BudgetExhaustedError,
    ConstructionFailedError,
    MalformedCertificateError,
    NoValidOrderingError,
    PreconditionError,
)
from nbcube.survival import kappa_nb_formula, neighbor_connectivity_exact
from nbcube.utils import parse_int_list, parse_pair, parse_range, resolve_workers

logger = logging.getLogger(__name__)


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {config.output_path}")


def _render(config: RunConfig, rows: list[dict[str, Any]], columns: tuple[str, ...]) -> str:
    if config.output_format is OutputFormat.JSON:
        return json.dumps(rows, indent=2) + "\n"
    if config.output_format is OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()
    widths = {
        column: max([len(column)] + [len(str(row[column])) for row in rows])
        for column in columns
    }
    lines = ["  ".join(column.ljust(widths[column]) for column in columns)]
    for row in rows:
        lines.append("  ".join(str(row[column]).ljust(widths[column]) for column in columns))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def cmd_table(config: RunConfig, args: argparse.Namespace) -> int:
    """κ_NB grid: closed form against exact search"""
    rows = []
    exhausted = mismatched = False
    for n in config.n_values:
        for k in config.k_values:
            spec = CubeSpec(n, k)
            formula = kappa_nb_formula(n, k)
            row: dict[str, Any] = {"n": n, "k": k, "delta": spec.delta, "formula": formula}
            try:
                result = neighbor_connectivity_exact(
                    cached_cube(spec), config.budget, config.symmetry, config.workers
                )
            except BudgetExhaustedError as error:
                logger.warning(f"{spec}: no witness up to size {error.budget}")
                exhausted = True
                row.update(search=f">{error.budget}", match="unknown", witness="")
            else:
                match = result.value == formula
                mismatched |= not match
                row.update(
                    search=result.value,
                    match=str(match).lower(),
                    witness=";".join(
                        spec.format_vertex(u) for u in result.witness.sorted_faults
                    ),
                )
            rows.append(row)
    _emit(config, _render(config, rows, TABLE_COLUMNS))
    if exhausted:
        return ExitCode.BUDGET_EXHAUSTED
    return ExitCode.VERIFICATION_FAILED if mismatched else ExitCode.OK


def _cayley_from_args(config: RunConfig, args: argparse.Namespace) -> CayleyGraph:
    if args.cube is not None:
        n, k = parse_pair(args.cube)
        return CayleyGraph.of_cube(CubeSpec(n, k))
    if config.group is None or config.generators is None:
        raise PreconditionError("witness needs --cube or both --group and --gens")
    group = parse_group(config.group)
    return CayleyGraph.build(group, parse_generators(group, config.generators))


def cmd_witness(config: RunConfig, args: argparse.Namespace) -> int:
    """Small neighbor cut of a Cayley graph with its verification"""
    cayley = _cayley_from_args(config, args)
    group = cayley.group
    ordering = find_valid_ordering(cayley.generators)
    if ordering is None:
        raise NoValidOrderingError(
            f"no generator ordering of {{{cayley.generators}}} avoids S ∪ {{e}}"
        )
    faults = theorem3_witness(cayley, ordering)
    report = verify_witness(cayley, faults, ordering)
    row: dict[str, Any] = {
        "group": str(group),
        "generators": [group.format_element(s) for s in cayley.generators.elements],
        "ordering": [group.format_element(s) for s in ordering],
        "faults": [group.format_element(u) for u in report.faults],
        "size": report.size,
        "bound": report.bound,
        "classification": report.classification.value,
        "passed": report.passed,
    }
    if args.exact:
        check = conjecture_check(cayley, config.budget)
        row["exact"] = check.value
        row["within_bound"] = check.within_bound
    if config.output_format is OutputFormat.JSON:
        _emit(config, json.dumps(row, indent=2) + "\n")
    else:
        flat = {
            key: ";".join(value) if isinstance(value, list) else value
            for key, value in row.items()
        }
        for key in ("passed", "within_bound"):
            if key in flat:
                flat[key] = str(flat[key]).lower()
        _emit(config, _render(config, [flat], tuple(flat)))
    return ExitCode.OK if report.passed else ExitCode.VERIFICATION_FAILED


def cmd_paths(config: RunConfig, args: argparse.Namespace) -> int:
    """Build, self-check and write a path certificate"""
    n, k = parse_pair(args.cube)
    spec = CubeSpec(n, k)
    faults = parse_int_list(args.faults)
    cert = build_certificate(spec, faults, args.x, args.y)
    report = validate_certificate(cert)
    for diagnostic in report.diagnostics:
        logger.error(f"{diagnostic.code.value}: {diagnostic.message}")
    _emit(config, dumps_certificate(cert))
    return ExitCode.OK if report.ok else ExitCode.VERIFICATION_FAILED


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    """Re-validate a certificate file from scratch"""
    try:
        cert = read_certificate(args.file)
    except MalformedCertificateError as error:
        print(f"FAIL MalformedCertificate: {error}")
        return ExitCode.VERIFICATION_FAILED
    report = validate_certificate(cert)
    if report.ok:
        print(f"PASS {len(cert.paths)} path(s), bound {cert.bound}")
        return ExitCode.OK
    for diagnostic in report.diagnostics:
        print(f"FAIL {diagnostic.code.value}: {diagnostic.message}")
    return ExitCode.VERIFICATION_FAILED


def cmd_check_lemmas(config: RunConfig, args: argparse.Namespace) -> int:
    """Exhaustive structural checks on one cube"""
    n, k = parse_pair(args.cube)
    spec = CubeSpec(n, k)
    reports = [check_02_property(spec), check_subcube_partition(spec)]
    if n >= 3 and k >= 3:
        reports.append(check_counting_lemma(spec, args.lmax))
    else:
        logger.info(f"Counting check skipped for {spec} (needs n, k >= 3)")
    rows = [
        {
            "check": report.name,
            "configurations": report.configurations,
            "violations": len(report.violations),
            "passed": str(report.passed).lower(),
        }
        for report in reports
    ]
    for report in reports:
        for violation in report.violations:
            logger.error(f"{report.name}: {violation}")
    _emit(config, _render(config, rows, ("check", "configurations", "violations", "passed")))
    return ExitCode.OK if all(report.passed for report in reports) else ExitCode.VERIFICATION_FAILED


COMMANDS: dict[str, Callable[[RunConfig, argparse.Namespace], int]] = {
    "table": cmd_table,
    "witness": cmd_witness,
    "paths": cmd_paths,
    "verify": cmd_verify,
    "check-lemmas": cmd_check_lemmas,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=[fmt.value for fmt in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Output format (default: text)",
    )
    common.add_argument("--out", type=Path, help="Write output to this file")
    common.add_argument(
        "--workers",
        type=int,
        help="Worker processes for the exact search (default: $NBCUBE_WORKERS or 1)",
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )

    parser = argparse.ArgumentParser(
        prog="nbcube",
        description="Neighbor connectivity of k-ary n-cubes and abelian Cayley graphs",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    table = commands.add_parser("table", parents=[common], help="κ_NB grid")
    table.add_argument("--n", required=True, help="Dimensions, e.g. 1..4")
    table.add_argument("--k", required=True, help="Arities, e.g. 2..5")
    table.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    table.add_argument(
        "--symmetry",
        choices=[symmetry.value for symmetry in Symmetry],
        default=Symmetry.VERTEX_TRANSITIVE.value,
    )

    witness = commands.add_parser("witness", parents=[common], help="Cayley witness")
    witness.add_argument("--cube", help="Cube as n,k")
    witness.add_argument("--group", help="Group such as Z3xZ3")
    witness.add_argument("--gens", help="Generators such as 01,02,10,20")
    witness.add_argument(
        "--exact", action="store_true", help="Also compute κ_NB by exact search"
    )
    witness.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    paths = commands.add_parser("paths", parents=[common], help="Path certificate")
    paths.add_argument("--cube", required=True, help="Cube as n,k")
    paths.add_argument("--faults", default="", help="Fault ids, comma separated")
    paths.add_argument("--x", type=int, required=True)
    paths.add_argument("--y", type=int, required=True)

    verify = commands.add_parser("verify", parents=[common], help="Check a certificate")
    verify.add_argument("file", type=Path)

    lemmas = commands.add_parser("check-lemmas", parents=[common], help="Lemma checks")
    lemmas.add_argument("--cube", required=True, help="Cube as n,k")
    lemmas.add_argument("--lmax", type=int, default=2)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        n_values=parse_range(args.n) if getattr(args, "n", None) else (),
        k_values=parse_range(args.k) if getattr(args, "k", None) else (),
        group=getattr(args, "group", None),
        generators=getattr(args, "gens", None),
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        symmetry=Symmetry(getattr(args, "symmetry", Symmetry.VERTEX_TRANSITIVE.value)),
        workers=resolve_workers(args.workers),
        output_format=OutputFormat(args.format),
        output_path=args.out,
    )


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)

    try:
        config = config_from_args(args)
        return int(COMMANDS[config.command](config, args))
    except BudgetExhaustedError as error:
        print(f"nbcube: {error}", file=sys.stderr)
        return ExitCode.BUDGET_EXHAUSTED
    except (MalformedCertificateError, ConstructionFailedError) as error:
        print(f"nbcube: {error}", file=sys.stderr)
        return ExitCode.VERIFICATION_FAILED
    except (PreconditionError, ValueError) as error:
        print(f"nbcube: {error}", file=sys.stderr)
        return ExitCode.USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
