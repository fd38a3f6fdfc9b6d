""" Command line interface. """

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .classify2d import make_class2
from .client import EvolutionAlgebraClient
from .contracts import (
    BasisChange,
    Classification2,
    EvolutionAlgebra,
    FixedPointReport,
    IsoResult,
    Report,
    TableRow,
)
from .contracts.errors import (
    ClassificationFailedError,
    DivisionByNearZeroError,
    EvolutionAlgebraError,
    InvalidInputError,
    NoFixedPointError,
    RankNotOneError,
    SingularChangeError,
    ToleranceViolationError,
)
from .factory import build_client, build_settings
from .matrix_file import load_algebra
from .settings import Settings
from .version import __version__

logger = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_FAILED: int = 1
EXIT_INVALID: int = 2
EXIT_TOLERANCE: int = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise InvalidInputError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="report format")

    parser = _ArgumentParser(prog="evolution-algebra", description="Real evolution algebras of dimension 2 and 3.")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    classify = commands.add_parser("classify", parents=[common], help="canonical form with a verified witness")
    classify.add_argument("--input", required=True, help="structure matrix file")
    classify.add_argument("--tol", type=float, help="verification tolerance (eps_residual)")
    classify.add_argument("--witness", action="store_true", help="include the witness in the report")

    fixed = commands.add_parser(
        "fixed-points", parents=[common], help="non-zero fixed points of the evolution operator"
    )
    fixed.add_argument("--input", required=True)
    fixed.add_argument("--restarts", type=int)
    fixed.add_argument("--seed", type=int)
    fixed.add_argument("--radius", type=float)

    linearize = commands.add_parser("linearize", parents=[common], help="Jacobian algebras")
    linearize.add_argument("--input", required=True)
    target = linearize.add_mutually_exclusive_group(required=True)
    target.add_argument("--point", help='comma separated coordinates, e.g. "1,0"')
    target.add_argument("--all", action="store_true", help="every non-zero fixed point")

    iso = commands.add_parser("iso", parents=[common], help="isomorphism search")
    iso.add_argument("--a", required=True, dest="source")
    iso.add_argument("--b", required=True, dest="target")
    iso.add_argument("--restarts", type=int)
    iso.add_argument("--seed", type=int)
    iso.add_argument("--require-found", action="store_true", help="exit 1 when no witness is found")

    table2d = commands.add_parser(
        "table2d", parents=[common], help="fixed points and Jacobian classes of a 2D canonical form"
    )
    table2d.add_argument("--class", required=True, dest="label")
    table2d.add_argument("--a2", type=float)
    table2d.add_argument("--a3", type=float)
    table2d.add_argument("--a4", type=float)

    commands.add_parser(
        "table3d", parents=[common], help="fixed points and Jacobian classes of the 3D canonical forms"
    )

    canonical = commands.add_parser("canonical", parents=[common], help="print a canonical representative")
    canonical.add_argument("--dim", type=int, required=True)
    canonical.add_argument("--label", required=True)
    canonical.add_argument("--a2", type=float)
    canonical.add_argument("--a3", type=float)
    canonical.add_argument("--a4", type=float)
    return parser


def _configure(settings: Settings, args: argparse.Namespace) -> Settings:
    overrides: Dict[str, Any] = {}
    for flag, field in (("seed", "seed"), ("restarts", "restarts"), ("radius", "radius"), ("tol", "eps_residual")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    if args.command == "iso" and args.restarts is not None:
        overrides["iso_restarts"] = overrides.pop("restarts")
    return settings.model_copy(update=overrides) if overrides else settings


def _algebra_input(algebra: EvolutionAlgebra) -> Dict[str, Any]:
    return {"dim": algebra.dim, "matrix": [list(row) for row in algebra.matrix]}


def _params(args: argparse.Namespace) -> Optional[List[float]]:
    if args.a4 is not None:
        return [args.a4]
    if args.a2 is not None or args.a3 is not None:
        if args.a2 is None or args.a3 is None:
            raise InvalidInputError("E6 needs both --a2 and --a3")
        return [args.a2, args.a3]
    return None


def _check_witness(
    client: EvolutionAlgebraClient, source: EvolutionAlgebra, target: EvolutionAlgebra, witness: BasisChange
) -> None:
    try:
        passed, residual = client.verify(source, target, witness)
    except SingularChangeError as error:
        raise ToleranceViolationError(f"witness failed re-verification: {error}") from error
    if not passed:
        raise ToleranceViolationError(f"witness failed re-verification (residual {residual:.3e})")


def _classify(client: EvolutionAlgebraClient, args: argparse.Namespace) -> Tuple[Dict[str, Any], Any, int]:
    algebra: EvolutionAlgebra = load_algebra(args.input)
    classification = client.classify(algebra)
    if isinstance(classification, Classification2):
        klass = classification.canonical
        canonical: EvolutionAlgebra = client.canonical(2, klass.label.value, klass.params)
        results: Dict[str, Any] = {
            "label": classification.canonical.label.value,
            "params": classification.canonical.params,
            "class": classification.canonical.describe(),
        }
    else:
        canonical = client.canonical(3, classification.label.value)
        results = {"label": classification.label.value, "trace": list(classification.trace)}
    _check_witness(client, algebra, canonical, classification.witness)
    results.update(residual=classification.residual, verified=classification.verified)
    if args.witness:
        results["witness"] = [list(row) for row in classification.witness.rows]
    return {"input": _algebra_input(algebra)}, results, EXIT_OK


def _fixed_points(client: EvolutionAlgebraClient, args: argparse.Namespace) -> Tuple[Dict[str, Any], Any, int]:
    algebra: EvolutionAlgebra = load_algebra(args.input)
    report: FixedPointReport = client.fixed_points(algebra)
    return {"input": _algebra_input(algebra)}, report.model_dump(mode="json"), EXIT_OK


def _linearize(client: EvolutionAlgebraClient, args: argparse.Namespace) -> Tuple[Dict[str, Any], Any, int]:
    algebra: EvolutionAlgebra = load_algebra(args.input)
    point: Optional[List[float]] = None
    if args.point is not None:
        try:
            point = [float(token) for token in args.point.split(",")]
        except ValueError as error:
            raise InvalidInputError(f"invalid --point {args.point!r}") from error
    pairs = client.linearize(algebra, point)
    results = [{"point": list(x), "jacobian_matrix": [list(row) for row in linear.matrix]} for x, linear in pairs]
    return {"input": _algebra_input(algebra), "point": point}, results, EXIT_OK


def _iso(client: EvolutionAlgebraClient, args: argparse.Namespace) -> Tuple[Dict[str, Any], Any, int]:
    source: EvolutionAlgebra = load_algebra(args.source)
    target: EvolutionAlgebra = load_algebra(args.target)
    result: IsoResult = client.iso(source, target)
    if result.found:
        _check_witness(client, source, target, result.witness)
    results: Dict[str, Any] = {
        "found": result.found,
        "reason": result.reason.value,
        "residual": result.residual,
        "witness": None if result.witness is None else [list(row) for row in result.witness.rows],
    }
    code: int = EXIT_FAILED if args.require_found and not result.found else EXIT_OK
    return {"a": _algebra_input(source), "b": _algebra_input(target)}, results, code


def _table2d(client: EvolutionAlgebraClient, args: argparse.Namespace) -> Tuple[Dict[str, Any], Any, int]:
    klass = make_class2(args.label, _params(args))
    row: TableRow = client.table2d(klass)
    return {"class": klass.describe()}, row.model_dump(mode="json", by_alias=True), EXIT_OK


def _table3d(client: EvolutionAlgebraClient, args: argparse.Namespace) -> Tuple[Dict[str, Any], Any, int]:
    rows = client.table3d()
    return {}, [row.model_dump(mode="json", by_alias=True) for row in rows], EXIT_OK


def _canonical(client: EvolutionAlgebraClient, args: argparse.Namespace) -> Tuple[Dict[str, Any], Any, int]:
    params: Optional[List[float]] = _params(args)
    algebra: EvolutionAlgebra = client.canonical(args.dim, args.label, params)
    return {"dim": args.dim, "label": args.label, "params": params}, _algebra_input(algebra), EXIT_OK


HANDLERS: Dict[str, Callable[[EvolutionAlgebraClient, argparse.Namespace], Tuple[Dict[str, Any], Any, int]]] = {
    "classify": _classify,
    "fixed-points": _fixed_points,
    "linearize": _linearize,
    "iso": _iso,
    "table2d": _table2d,
    "table3d": _table3d,
    "canonical": _canonical,
}


def _render_value(value: Any, indent: str = "") -> List[str]:
    if isinstance(value, dict):
        lines: List[str] = []
        for key in sorted(value):
            rendered: List[str] = _render_value(value[key], indent + "  ")
            if len(rendered) == 1 and not isinstance(value[key], (dict, list)):
                lines.append(f"{indent}{key}: {rendered[0].strip()}")
            else:
                lines.append(f"{indent}{key}:")
                lines.extend(rendered)
        return lines
    if isinstance(value, list):
        if value and all(isinstance(row, list) and all(not isinstance(x, (dict, list)) for x in row) for row in value):
            return [indent + "  ".join(f"{x!r:>12}" for x in row) for row in value]
        if all(not isinstance(x, (dict, list)) for x in value):
            return [indent + "(" + ", ".join(repr(x) for x in value) + ")"]
        lines = []
        for item in value:
            lines.append(f"{indent}-")
            lines.extend(_render_value(item, indent + "  "))
        return lines
    return [f"{indent}{value}"]


def render_text(report: Report) -> str:
    """Human readable report, matrices printed row by row."""
    body: Dict[str, Any] = report.model_dump(mode="json", by_alias=True)
    header: str = f"{body.pop('command')} (version {body.pop('version')}, seed {body.pop('seed')})"
    return "\n".join([header] + _render_value(body))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Executes one subcommand and writes its report to standard output.

    Parameters
    ----------
    argv: Optional[Sequence[str]]
        Arguments without the program name; sys.argv[1:] when omitted.

    Returns
    -------
    code: int
        0 on success, 1 when a classification fails or a required witness is missing, 2 on invalid input,
        3 when a witness fails re-verification or the computation breaks down unexpectedly.
    """

    arguments: List[str] = list(sys.argv[1:] if argv is None else argv)
    try:
        args: argparse.Namespace = build_parser().parse_args(arguments)
    except InvalidInputError as error:
        logger.error("%s", error)
        return EXIT_INVALID
    except SystemExit as exit_request:
        return int(exit_request.code or 0)

    try:
        settings: Settings = _configure(build_settings(), args)
        logging.getLogger(__name__.rsplit(".", 1)[0]).setLevel(settings.log_level.upper())
        client: EvolutionAlgebraClient = build_client(settings)
        inputs, results, code = HANDLERS[args.command](client, args)
    except ClassificationFailedError as error:
        logger.error("%s", error)
        return EXIT_FAILED
    except ToleranceViolationError as error:
        logger.error("%s", error)
        return EXIT_TOLERANCE
    except (InvalidInputError, RankNotOneError, NoFixedPointError, DivisionByNearZeroError, ValueError) as error:
        logger.error("%s", error)
        return EXIT_INVALID
    except EvolutionAlgebraError as error:
        logger.error("%s", error)
        return EXIT_FAILED
    except Exception as error:
        logger.exception("unexpected failure: %s", error)
        return EXIT_TOLERANCE

    report = Report(
        version=__version__,
        command=args.command,
        arguments=arguments,
        inputs=inputs,
        results=results,
        seed=settings.seed,
        tolerances=client.tolerances,
    )
    print(report.to_json() if args.format == "json" else render_text(report))
    return code


def main() -> None:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())
