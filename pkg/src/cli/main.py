"""Command-line front end.

Exit codes: 0 on success, 1 on a domain or internal-check error, 2 on usage errors.
"""
import argparse
import sys
from typing import List, Optional, Sequence

from ..config import config
from ..errors import ConfigError, K3FibError
from ..graph import (
    contract_to_minimal,
    divisor,
    fiber_decomposition,
    fibration_type,
    field_degree_bounds,
    find_fibers,
    height,
    induced_fiber,
    ns_lattice,
    sections_of,
)
from ..graph.curve_config import parse_term
from ..graph.datasets import get_record, list_datasets, load_config_source, records_for
from ..graph.datasets import dump_dataset as dump_curve_dataset
from ..graph.fibration_types import build_record, record_config
from ..logging_config import get_logger, setup_logging
from ..niemeier import catalog, glue_group, verify
from ..nishiyama import SUPPORTED_T0, classify
from ..roots import parse_kodaira, parse_root_type
from ..weierstrass import (
    EXCEEDS_BOUND,
    FFCurve,
    FFPoint,
    build_examples,
    discriminant_poly,
    format_example,
    on_curve,
    torsion_order,
)
from .render import (
    Table,
    render_fibers,
    render_fraction,
    render_mw,
    render_optional,
    render_roots,
    render_table,
)

logger = get_logger("k3fib.cli")

WEIERSTRASS_PREFIX = "weierstrass-"


def _output(text: str) -> None:
    sys.stdout.write(text.rstrip("\n") + "\n")


# --- classify -----------------------------------------------------------------

def classify_table(t0_name: str, workers: int = 1, sample: int = 1) -> Table:
    rows = classify(parse_root_type(t0_name), workers=workers, sample=sample)
    header = ("n°", "Niemeier", "embedding", "roots orth.", "reducible fibers", "MW")
    body = [
        (str(i), row.niemeier, str(row.target), render_roots(row.root_part),
         render_fibers(row.fibers), render_mw(row.mw_rank, row.mw_torsion))
        for i, row in enumerate(rows, start=1)
    ]
    return header, body


def _cmd_classify(args) -> int:
    workers = args.workers or config.get_worker_count()
    _output(render_table(classify_table(args.t0, workers, config.get_embedding_sample()), args.format))
    return 0


# --- niemeier -----------------------------------------------------------------

def niemeier_table() -> Table:
    header = ("n°", "Niemeier", "roots", "glue group")
    body = [(str(i), spec.name, str(spec.root_count), str(glue_group(spec)))
            for i, spec in enumerate(catalog(), start=1)]
    return header, body


def _cmd_niemeier(args) -> int:
    if args.action == "list":
        _output(render_table(niemeier_table(), args.format))
        return 0
    specs = catalog()
    reports = [verify(spec) for spec in specs]
    for report in reports:
        for failure in report.failures:
            _output(f"{report.name}: {failure}")
    passed = sum(1 for r in reports if r.ok)
    _output(f"{passed}/{len(reports)} ok")
    return 0 if passed == len(reports) else 1


# --- graph --------------------------------------------------------------------

def _fiber_terms(text: str):
    return [parse_term(token) for token in text.split()]


def _working_fiber(args):
    """Configuration, fiber class, expected Kodaira types and record zero for a graph subcommand."""
    base = load_config_source(args.config)
    if getattr(args, "record", None):
        spec = get_record(base.name, args.record)
        working = record_config(base, spec)
        return working, divisor(working, spec.fiber), spec.kodaira_types, spec.zero
    if getattr(args, "fiber", None):
        return base, divisor(base, _fiber_terms(args.fiber)), None, base.zero
    return base, induced_fiber(base), None, base.zero


def _cmd_graph_ns(args) -> int:
    cfg = load_config_source(args.config)
    ns = ns_lattice(cfg)
    _output(f"rank {ns.rank}")
    _output(f"determinant {ns.determinant}")
    _output("basis " + " ".join(ns.basis))
    return 0


def fibers_table(cfg, kodaira_text: str) -> Table:
    kodaira = parse_kodaira(kodaira_text)
    seeds = find_fibers(cfg, kodaira)
    header = ("n°", "type", "fiber")
    body = [(str(i), str(seed.kodaira), str(seed.fiber_class)) for i, seed in enumerate(seeds, start=1)]
    return header, body


def _cmd_graph_fibers(args) -> int:
    cfg = load_config_source(args.config)
    _output(render_table(fibers_table(cfg, args.kodaira), args.format))
    return 0


def _cmd_graph_type(args) -> int:
    working, fiber, expected, zero = _working_fiber(args)
    header = ("fiber", "reducible fibers", "sections", "type")
    fibers = fiber_decomposition(working, fiber, expected)
    body = [(str(fiber), " ".join(f.label for f in fibers) or "-",
             " ".join(sections_of(working, fiber)) or "-", str(fibration_type(working, fiber)))]
    if zero:
        bounds = field_degree_bounds(working, fiber, zero)
        header += ("fibration bound", "MW bound")
        body = [body[0] + (str(bounds.fibration_bound), str(bounds.mw_bound))]
    _output(render_table((header, body), args.format))
    return 0


def _cmd_graph_height(args) -> int:
    working, fiber, expected, record_zero = _working_fiber(args)
    zero = args.zero or record_zero
    if not zero:
        raise ConfigError("graph height needs --zero or a record with a zero section")
    report = height(working, fiber, args.section, zero, expected)
    _output(render_fraction(report.value))
    return 0


def _cmd_graph_contract(args) -> int:
    cfg = load_config_source(args.config)
    outcomes = contract_to_minimal(cfg, args.action or ())
    header = ("model", "contracted", "orbits")
    body = [(o.model, str(o.contracted), " ".join("(" + " ".join(orbit) + ")" for orbit in o.log))
            for o in outcomes]
    _output(render_table((header, body), args.format))
    return 0


def records_table(config_name: str) -> Table:
    cfg = load_config_source(config_name)
    header = ("n°", "record", "reducible fibers", "type", "[k_MW:k]", "heights")
    body = []
    for i, spec in enumerate(records_for(cfg.name), start=1):
        record = build_record(cfg, spec)
        heights = " ".join(
            f"{s}:{render_fraction(h.value) if h is not None else render_optional(h)}"
            for s, h in record.heights.items()
        )
        body.append((str(i), spec.name, " ".join(spec.kodaira), str(record.fibration_type),
                     str(record.bounds.mw_bound), heights or "-"))
    return header, body


def _cmd_graph_records(args) -> int:
    _output(render_table(records_table(args.config), args.format))
    return 0


# --- weierstrass --------------------------------------------------------------

def _curve_and_point(args):
    d = args.sqrt or 1
    return FFCurve.from_strings(args.a4, args.a6, d), FFPoint.from_strings(args.x, args.y, d)


def _cmd_weierstrass(args) -> int:
    if args.action == "examples":
        header = ("curve", "point", "on curve", "order", "expected")
        body = []
        for example in build_examples().values():
            for key, (point, expected) in example.points.items():
                order = torsion_order(example.curve, point, args.bound)
                body.append((example.name, key, str(on_curve(example.curve, point)).lower(),
                             str(order), str(expected)))
        _output(render_table((header, body), args.format))
        return 0
    curve, point = _curve_and_point(args)
    if args.action == "check":
        ok = on_curve(curve, point)
        _output("on curve" if ok else "not on curve")
        _output(f"discriminant {discriminant_poly(curve)}")
        return 0 if ok else 1
    order = torsion_order(curve, point, args.bound)
    _output(str(order))
    return 0 if order != EXCEEDS_BOUND else 1


# --- datasets -----------------------------------------------------------------

def dataset_names() -> List[str]:
    return list_datasets() + [WEIERSTRASS_PREFIX + name for name in build_examples()]


def dump_dataset(name: str) -> str:
    """Configuration text of a curve dataset or a Weierstrass example.

    Raises:
        ConfigError: For unknown names, listing the known ones
    """
    key = name.lower()
    if key.startswith(WEIERSTRASS_PREFIX):
        examples = build_examples()
        example = examples.get(key[len(WEIERSTRASS_PREFIX):])
        if example is None:
            raise ConfigError(f"Unknown dataset: {name}. Available: {', '.join(dataset_names())}")
        return format_example(example)
    try:
        return dump_curve_dataset(key)
    except ConfigError as e:
        if str(e).startswith("Unknown dataset"):
            raise ConfigError(f"Unknown dataset: {name}. Available: {', '.join(dataset_names())}") from e
        raise


def _cmd_datasets(args) -> int:
    if args.action == "list":
        _output("\n".join(dataset_names()))
        return 0
    _output(dump_dataset(args.name))
    return 0


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=config.OUTPUT_FORMATS, default=config.get_output_format(),
                        help="table format (default from K3FIB_FORMAT)")

    parser = argparse.ArgumentParser(prog="k3fib", description="Elliptic fibrations on K3 double covers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="fibrations from Niemeier frames")
    p.add_argument("--t0", required=True, choices=SUPPORTED_T0)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("niemeier", parents=[common], help="Niemeier catalog")
    p.add_argument("action", choices=("list", "verify"))
    p.set_defaults(handler=_cmd_niemeier)

    graph = sub.add_parser("graph", help="curve configurations")
    graph_sub = graph.add_subparsers(dest="graph_command", required=True)

    def graph_parser(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        gp = graph_sub.add_parser(name, parents=[common], help=help_text)
        gp.add_argument("--config", required=True, help="dataset name or .cfg file")
        gp.set_defaults(handler=handler)
        return gp

    graph_parser("ns", _cmd_graph_ns, "lattice spanned by the curves")
    gp = graph_parser("fibers", _cmd_graph_fibers, "fibers of a Kodaira type")
    gp.add_argument("--kodaira", required=True)
    for name, handler, help_text in (("type", _cmd_graph_type, "τ-type and field-degree bounds"),
                                     ("height", _cmd_graph_height, "height of a section")):
        gp = graph_parser(name, handler, help_text)
        gp.add_argument("--record", default=None)
        gp.add_argument("--fiber", default=None, help='fiber terms, e.g. "Th0_1 2*Th1_1"')
        if name == "height":
            gp.add_argument("--zero", default=None)
            gp.add_argument("--section", required=True)
    gp = graph_parser("contract", _cmd_graph_contract, "equivariant blow-downs")
    gp.add_argument("--action", action="append", default=None)
    graph_parser("records", _cmd_graph_records, "curated fibrations")

    p = sub.add_parser("weierstrass", parents=[common], help="Weierstrass models over k(t)")
    p.add_argument("action", choices=("check", "torsion", "examples"))
    p.add_argument("--a4")
    p.add_argument("--a6")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--sqrt", type=int, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.set_defaults(handler=_cmd_weierstrass)

    p = sub.add_parser("datasets", help="embedded datasets")
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("name", nargs="?")
    p.set_defaults(handler=_cmd_datasets)
    return parser


def _usage_problems(args) -> Optional[str]:
    if args.command == "weierstrass" and args.action != "examples":
        missing = [f"--{k}" for k in ("a4", "a6", "x", "y") if getattr(args, k) is None]
        if missing:
            return f"weierstrass {args.action} needs {' '.join(missing)}"
    if args.command == "datasets" and args.action == "dump" and not args.name:
        return "datasets dump needs a dataset name"
    return None


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run one subcommand; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    problem = _usage_problems(args)
    if problem:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"k3fib: error: {problem}\n")
        return 2

    setup_logging(log_level=config.LOG_LEVEL, log_to_file=config.LOG_TO_FILE,
                  log_to_console=config.LOG_TO_CONSOLE, log_dir=config.LOG_DIR)
    try:
        problems = config.validate()
        if problems:
            raise ConfigError("invalid environment configuration", problems)
        return args.handler(args)
    except K3FibError as e:
        logger.error("Command failed", extra={"extra_data": {"command": args.command, "error": str(e)}})
        sys.stderr.write(f"k3fib: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())
