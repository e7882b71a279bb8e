#!/usr/bin/env python3
"""Batch front end for semigroup hole analysis.

Usage:
    uv run python cli.py analyze data/example22.mat
    uv run python cli.py table 2x2x2x2 --margins 12,13,14,234 --stages finiteness
    uv run python cli.py frobenius 3 5 7
    uv run python cli.py hilbert data/example23.mat --json -
    uv run python cli.py member data/357.mat 4
    uv run python cli.py oracle data/example22.mat --box 0:3,0:12

Exit codes: 0 success, 1 usage or input error, 2 cone not pointed,
3 a requested stage needs a finite hole set, 4 an internal cross-check failed.
"""

import argparse
import io
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Final, Literal

from pydantic import ValidationError
from pydantic_core import to_json

from analysis.frobenius import frobenius_matrix
from analysis.pipeline import analyze
from analysis.saturation import classify_point
from contingency.marginal import table_matrix
from exceptions import ConsistencyError, GcdNotOne, InfiniteHoles, NotPointed, UnsupportedSystem, UsageError
from models.census import OracleReport, PointReport, SaturationTag
from models.matrix import GeneratorMatrix, Vector, format_vector
from models.report import (
    STAGE_ORDER,
    AnalysisRequest,
    AnalysisSettings,
    Command,
    SaturationReport,
    Stage,
    close_stages,
)
from models.tables import MarginalModel
from oracle.census import census, integer_grading, oracle_min_sets

logger = logging.getLogger(__name__)

EXIT_OK: Final = 0
EXIT_USAGE: Final = 1
EXIT_NOT_POINTED: Final = 2
EXIT_INFINITE_HOLES: Final = 3
EXIT_CONSISTENCY: Final = 4

Report = SaturationReport | PointReport | OracleReport


def exit_code_for(error: Exception | None) -> int:
    match error:
        case None:
            return EXIT_OK
        case NotPointed():
            return EXIT_NOT_POINTED
        case InfiniteHoles():
            return EXIT_INFINITE_HOLES
        case ConsistencyError():
            return EXIT_CONSISTENCY
        case _:
            return EXIT_USAGE


class RequestParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(message)


def _build_parser() -> RequestParser:
    common = RequestParser(add_help=False)
    common.add_argument("--stages", help="comma-separated stages; prerequisites are added (default: all)")
    common.add_argument("--bound", type=int, help="degree bound for bounded minimal-set searches")
    common.add_argument("--json", dest="json_path", help="write the JSON report to PATH ('-' for stdout)")
    common.add_argument("--no-timings", action="store_true", help="leave stage timings out of the report")
    common.add_argument("--threads", type=int, help="worker threads (default: $SEMIHOLE_THREADS or 1)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")

    parser = RequestParser(prog="semihole", description="Holes and saturation points of affine semigroups")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=RequestParser)

    sub = commands.add_parser("analyze", parents=[common], help="full analysis of a matrix file")
    sub.add_argument("matrix", help="matrix file ('d n' header, then d rows)")

    sub = commands.add_parser("table", parents=[common], help="analyze a marginal model of a contingency table")
    sub.add_argument("sizes", help="table sizes, e.g. 2x2x2x2")
    sub.add_argument("--margins", required=True, help="margin family, e.g. 12,13,14,234")
    sub.add_argument("--keep-redundant", action="store_true", help="skip redundant-row removal")
    sub.add_argument("--emit", help="also write the generator matrix to PATH")

    sub = commands.add_parser("frobenius", parents=[common], help="Frobenius number of coprime positive integers")
    sub.add_argument("integers", nargs="+", type=int)

    sub = commands.add_parser("hilbert", parents=[common], help="Hilbert basis of the saturation")
    sub.add_argument("matrix")

    sub = commands.add_parser("member", parents=[common], help="classify a right-hand side b")
    sub.add_argument("matrix")
    sub.add_argument("point", nargs="+", type=int)

    sub = commands.add_parser("oracle", parents=[common], help="brute-force census of a box (debugging)")
    sub.add_argument("matrix")
    sub.add_argument("--box", required=True, help="inclusive ranges lo:hi per coordinate, comma-separated")
    return parser


def _parse_stages(text: str | None, command: Command) -> tuple[Stage, ...]:
    if text is None:
        return (Stage.HILBERT,) if command is Command.HILBERT else STAGE_ORDER
    try:
        return close_stages(part.strip() for part in text.split(",") if part.strip())
    except ValueError as e:
        raise UsageError(f"--stages: unknown stage in {text!r}; choose from {[s.value for s in STAGE_ORDER]}") from e


def _parse_box(text: str) -> tuple[tuple[int, int], ...]:
    ranges = []
    for part in text.split(","):
        try:
            lo, hi = (int(v) for v in part.split(":"))
        except ValueError as e:
            raise UsageError(f"--box: expected lo:hi ranges, got {part!r}") from e
        ranges.append((lo, hi))
    return tuple(ranges)


def parse_request(argv: Sequence[str] | None = None) -> AnalysisRequest:
    args = _build_parser().parse_args(argv)
    command = Command(args.command)
    try:
        settings = AnalysisSettings.from_env(threads=args.threads, degree_bound=args.bound)
        fields = {
            "command": command,
            "stages": _parse_stages(args.stages, command),
            "output_path": None if args.json_path is None else Path(args.json_path),
            "timings": not args.no_timings,
            "verbosity": args.verbose,
            "settings": settings,
        }
        match command:
            case Command.ANALYZE | Command.HILBERT:
                fields["matrix_path"] = Path(args.matrix)
            case Command.TABLE:
                fields["table"] = MarginalModel.parse(args.sizes, args.margins)
                fields["keep_redundant"] = args.keep_redundant
                fields["emit_path"] = None if args.emit is None else Path(args.emit)
            case Command.FROBENIUS:
                fields["integers"] = tuple(args.integers)
            case Command.MEMBER:
                fields["matrix_path"] = Path(args.matrix)
                fields["point"] = tuple(args.point)
            case Command.ORACLE:
                fields["matrix_path"] = Path(args.matrix)
                fields["box"] = _parse_box(args.box)
        return AnalysisRequest(**fields)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or command.value}: {err['msg']}" for err in e.errors()
        )
        raise UsageError(problems) from e
    except ValueError as e:
        raise UsageError(str(e)) from e


def load_matrix(path: Path) -> GeneratorMatrix:
    try:
        text = path.read_text()
    except OSError as e:
        raise ValueError(f"Cannot read matrix file {path}: {e.strerror}") from e
    return GeneratorMatrix.from_text(text)


def _frobenius(report: SaturationReport) -> SaturationReport:
    holes = report.hole_set.holes if report.hole_set is not None else None
    if holes is None:
        return report
    return report.model_copy(update={"frobenius_number": max((h[0] for h in holes), default=-1)})


def _run_member(request: AnalysisRequest, matrix: GeneratorMatrix) -> tuple[Report, int]:
    try:
        return classify_point(matrix, request.point, request.settings), EXIT_OK
    except NotPointed as e:
        return SaturationReport(matrix=matrix, pointed=False, errors=(f"NotPointed: {e}",)), EXIT_NOT_POINTED


def _run_oracle(request: AnalysisRequest, matrix: GeneratorMatrix) -> tuple[Report, int]:
    if integer_grading(matrix) is None:
        report = SaturationReport(matrix=matrix, pointed=False, errors=("NotPointed: census needs a pointed cone",))
        return report, EXIT_NOT_POINTED
    result = census(matrix, request.box)
    report = OracleReport(
        matrix=matrix.entries,
        box=result.box,
        holes=tuple(result.holes),
        non_saturation=tuple(result.tagged(SaturationTag.NONSAT)),
    )
    if matrix.is_nonnegative() and all(lo <= 0 for lo, _ in result.box):
        sets = oracle_min_sets(matrix, result.box, result)
        report = report.model_copy(
            update={"min_ss": tuple(sets.min_ss), "min_sq": tuple(sets.min_sq), "min_sqsat": tuple(sets.min_sqsat)}
        )
    return report, EXIT_OK


def run(request: AnalysisRequest) -> tuple[Report, int]:
    """Execute a request; the report holds whatever was computed, the code says how it ended."""
    match request.command:
        case Command.FROBENIUS:
            matrix = frobenius_matrix(request.integers)
        case Command.TABLE:
            matrix = table_matrix(request.table, keep_redundant=request.keep_redundant)
            if request.emit_path is not None:
                request.emit_path.write_text(matrix.to_text())
                logger.info("Wrote %dx%d matrix to %s", matrix.d, matrix.n, request.emit_path)
        case _:
            matrix = load_matrix(request.matrix_path)

    match request.command:
        case Command.MEMBER:
            return _run_member(request, matrix)
        case Command.ORACLE:
            return _run_oracle(request, matrix)

    outcome = analyze(matrix, request.stages, request.settings)
    report = outcome.report
    if request.command is Command.FROBENIUS:
        report = _frobenius(report)
    if not request.timings:
        report = report.model_copy(update={"timings_ms": {}})
    return report, exit_code_for(outcome.error)


def _points(out: io.StringIO, points: Sequence[Vector] | None, empty: str = "(none)") -> None:
    if points is None:
        print("  (not computed)", file=out)
    elif not points:
        print(f"  {empty}", file=out)
    else:
        for p in points:
            print(f"  {format_vector(p)}", file=out)


def _text_saturation(report: SaturationReport, out: io.StringIO) -> None:
    payload = report.to_payload()
    print(f"=== Matrix ({report.matrix.d}x{report.matrix.n}) ===", file=out)
    for row in report.matrix.entries:
        print(f"  {format_vector(row)}", file=out)
    print(file=out)

    print("=== Cone ===", file=out)
    print(f"  Pointed: {'yes' if report.pointed else 'no'}", file=out)
    if report.rank is not None:
        print(f"  Rank: {report.rank}", file=out)
    if report.profile is not None:
        print(f"  Grading: {format_vector(report.profile.grading)}", file=out)
        print(f"  Extreme columns: {format_vector(payload['extremeColumns'])}", file=out)
    print(file=out)

    if report.hilbert_basis is not None:
        elements = report.hilbert_basis.elements
        print(f"=== Hilbert Basis ({len(elements)} elements) ===", file=out)
        for k, e in enumerate(elements, start=1):
            flags = ", ".join(f for f, on in (("generator", e.is_generator), ("hole", e.is_hole)) if on)
            suffix = f"  ({flags})" if flags else ""
            print(f"  b{k}: {format_vector(e.vector)}  degree {e.degree}{suffix}", file=out)
        print(file=out)

    holes = report.hole_set
    if holes is not None:
        print("=== Fundamental Holes ===", file=out)
        _points(out, holes.fundamental)
        print(file=out)
        verdict = holes.finiteness
        print("=== Finiteness ===", file=out)
        print(f"  Verdict: {verdict.verdict.value}", file=out)
        if verdict.note:
            print(f"  Note: {verdict.note}", file=out)
        if verdict.witness is not None:
            w = verdict.witness
            kind = w.certificate.kind.value if w.certificate else "-"
            print(f"  Witness: {format_vector(w.source)} along column {w.column + 1} ({kind})", file=out)
        if report.column_bounds is not None:
            print(f"  Column bounds: {' '.join(str(v) for v in report.column_bounds)}", file=out)
        print(file=out)

    for title, table in (
        ("Shift Table", report.shift_table),
        ("Fundamental Shift Table", report.fundamental_shift_table),
    ):
        if table is None or not table.entries:
            continue
        print(f"=== {title} ===", file=out)
        for e in table.entries:
            marker = "" if e.extreme else "  (not extreme)"
            print(f"  {format_vector(e.source)} + λ·a{e.column + 1}: {e.value}{marker}", file=out)
        print(file=out)

    if holes is not None and holes.holes is not None:
        print(f"=== Holes ({len(holes.holes)}) ===", file=out)
        _points(out, holes.holes)
        print(file=out)

    saturation = report.saturation
    if saturation is not None:
        if saturation.non_saturation is not None:
            print(f"=== Non-saturation Points ({len(saturation.non_saturation)}) ===", file=out)
            _points(out, saturation.non_saturation)
            print(file=out)
        for title, block in (
            ("min(S;S)", saturation.min_ss),
            ("min(S;Q)", saturation.min_sq),
            ("min(S;Q_sat)", saturation.min_sqsat),
        ):
            if block is None:
                continue
            status = block.completeness.value
            if block.bound is not None:
                status += f", degree <= {block.bound}"
            if block.note:
                status += f", {block.note}"
            print(f"=== {title} [{status}] ===", file=out)
            _points(out, block.points)
            print(file=out)

    if report.equivalences is not None:
        print("=== Finiteness Equivalences ===", file=out)
        for name, value in report.equivalences.model_dump(by_alias=True).items():
            print(f"  {name}: {value}", file=out)
        print(file=out)

    if report.frobenius_number is not None:
        print(f"Frobenius number: {report.frobenius_number}", file=out)
        print(file=out)

    if report.timings_ms:
        print("=== Timings (ms) ===", file=out)
        for stage, ms in report.timings_ms.items():
            print(f"  {stage}: {ms}", file=out)
        print(file=out)

    for error in report.errors:
        print(f"Error: {error}", file=out)


def _text_point(report: PointReport, out: io.StringIO) -> None:
    print(f"Point: {format_vector(report.point)}", file=out)
    print(f"Class: {report.kind.value}", file=out)
    if report.witness is not None:
        print(f"Witness: {format_vector(report.witness)}", file=out)
    if report.tag is not None:
        print(f"Saturation: {report.tag.value}", file=out)


def _text_oracle(report: OracleReport, out: io.StringIO) -> None:
    box = " x ".join(f"[{lo},{hi}]" for lo, hi in report.box)
    print(f"=== Census of {box} ===", file=out)
    for title, points in (
        ("Holes", report.holes),
        ("Non-saturation points", report.non_saturation),
        ("min(S;S)", report.min_ss),
        ("min(S;Q)", report.min_sq),
        ("min(S;Q_sat)", report.min_sqsat),
    ):
        print(f"{title}:", file=out)
        _points(out, points)


def render_report(report: Report, fmt: Literal["text", "json"] = "text") -> bytes:
    if fmt == "json":
        return to_json(report.to_payload(), indent=2) + b"\n"
    out = io.StringIO()
    match report:
        case SaturationReport():
            _text_saturation(report, out)
        case PointReport():
            _text_point(report, out)
        case OracleReport():
            _text_oracle(report, out)
    return out.getvalue().encode()


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        request = parse_request(argv)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(request.verbosity)

    try:
        report, code = run(request)
    except (ValueError, GcdNotOne, UnsupportedSystem, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if request.output_path is None or str(request.output_path) != "-":
        sys.stdout.write(render_report(report, "text").decode())
    if request.output_path is not None:
        data = render_report(report, "json")
        if str(request.output_path) == "-":
            sys.stdout.write(data.decode())
        else:
            request.output_path.write_bytes(data)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
