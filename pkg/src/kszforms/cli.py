"""CLI entry point for kszforms."""

import argparse
import csv
import functools
import io
import json
import logging
import os
import sys
import time
from collections.abc import Callable
from dataclasses import replace
from pathlib import Path
from typing import Any

from . import __version__
from .bounds import bound_values
from .defaults import (
    CONJECTURE_PS,
    DEFAULT_CONFIG,
    DEFAULT_CONFIG_PATH,
    DEFAULT_CONJECTURE_NS,
    DEFAULT_FOURIER_DIMS,
    DEFAULT_FOURIER_PS,
    DEFAULT_GITIGNORE,
    THREADS_ENV_VAR,
)
from .errors import ArgumentError, CapabilityError, KszFormsError
from .exponents import hl_lower_bound, profile
from .lab import Lab
from .models.ExperimentConfig import CONJECTURE_PATHS, ExperimentConfig, FourierGrid
from .models.ExtendedExponent import TWO, ExtendedExponent
from .models.FormInstance import FormInstance
from .models.Invocation import Invocation
from .models.LabConfig import LabConfig
from .models.NormEstimate import NormEstimate
from .models.RunRecord import RunRecord
from .models.UnimodularTensor import UnimodularTensor
from .services.ExperimentService import describe
from .services.NormService import ESTIMATE_METHODS
from .services.RecordService import dump_json
from .tensors import fourier_matrix, rademacher, read_tensor, steinhaus, write_tensor
from .utils.parsing import parse_dims, parse_int_list, parse_p_list

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv", "human")
GENERATOR_KINDS = ("rademacher", "steinhaus", "fourier")

# Experiment kind run by each experiment subcommand
EXPERIMENT_COMMANDS = {
    "search": "min-norm-search",
    "slope": "slope",
    "conjecture": "conjecture-ratio",
    "fourier-scan": "fourier-scan",
    "constant": "constant-one",
}

RECORD_EPILOG = """output (--format json):
  {"invocation": {...}, "record": {"schema_version", "code_version", "config",
   "rows": [{"dims", "values"}], "derived"}}
  --format csv prints the rows; --describe lists the CSV columns.
  Timestamps and the run id are kept out of stdout; they are written to the
  record file (--out) and the run log under "metadata"."""


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default="json",
        help="Output format (default: json)",
    )
    parser.add_argument(
        "--config",
        default=None,
        help=f"Path to config file (default: {DEFAULT_CONFIG_PATH})",
    )
    parser.add_argument(
        "--cwd",
        help="Working directory (default: current directory)",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help=f"Worker threads (default: ${THREADS_ENV_VAR}, else the config file)",
    )
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Enable debug logging on stderr",
    )
    parser.add_argument(
        "--no-log",
        action="store_true",
        dest="no_log",
        help="Disable run logging",
    )


def _add_experiment_flags(parser: argparse.ArgumentParser) -> None:
    _add_common_flags(parser)
    parser.add_argument(
        "--out",
        default=None,
        help="Write the full run record (JSON) to this path",
    )
    parser.add_argument(
        "--csv",
        default=None,
        help="Write the rows as CSV to this path",
    )
    parser.add_argument(
        "--describe",
        action="store_true",
        help="List the CSV columns of this experiment and exit",
    )


def _add_grid_flags(parser: argparse.ArgumentParser) -> None:
    dims = ",".join(str(n) for n in DEFAULT_FOURIER_DIMS)
    ps = ",".join(DEFAULT_FOURIER_PS)
    parser.add_argument("--n1s", default=dims, help=f"Row counts (default: {dims})")
    parser.add_argument("--n2s", default=dims, help=f"Column counts (default: {dims})")
    parser.add_argument("--p1s", default=ps, help=f"First-slot exponents (default: {ps})")
    parser.add_argument("--p2s", default=ps, help=f"Second-slot exponents (default: {ps})")
    parser.add_argument("--seed", type=int, default=0, help="Seed of the random starts")


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the CLI.

    Returns:
        Configured ArgumentParser.
    """
    parser = argparse.ArgumentParser(
        prog="kszforms",
        description="Unimodular multilinear forms on mixed l_p domains",
        epilog="exit codes: 0 success, 2 usage, 3 capability, 4 IO",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {__version__}",
    )

    subparsers = parser.add_subparsers(dest="command", help="Commands")
    raw = argparse.RawDescriptionHelpFormatter

    # exponents command
    exponents_parser = subparsers.add_parser(
        "exponents",
        help="Evaluate every exponent formula for a p-tuple",
        formatter_class=raw,
        epilog="""output (--format json):
  {"invocation": {...}, "profile": {"ps", "m", "theorem1", "albuquerque_rezende",
   "classical_ksz", "bayart", "gamma", "rho", "dominates", "regime",
   "optimality_case"}, "bounds": {...} with --n}
  Exact exponents are fraction strings ("5/6"); infinity is "inf".""",
    )
    exponents_parser.add_argument("--p", required=True, help="Exponents, e.g. 1.5,3,inf")
    exponents_parser.add_argument(
        "--n", type=int, default=None, help="Also evaluate the bounds at dimension n"
    )
    _add_common_flags(exponents_parser)

    # generate command
    generate_parser = subparsers.add_parser(
        "generate",
        help="Generate a unimodular tensor",
        formatter_class=raw,
        epilog="""output (--format json):
  {"invocation": {...}, "tensor": {"dims", "field", "entries", "provenance"}}
  With --out the tensor is written there and "tensor" omits the entries.
  Tensor files hold row-major entries: numbers for real signs, [re, im] pairs
  for complex entries.""",
    )
    generate_parser.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    generate_parser.add_argument("--dims", required=True, help="Dimensions, e.g. 8x8x8")
    generate_parser.add_argument(
        "--seed", type=int, default=0, help="Seed (ignored for fourier; default: 0)"
    )
    generate_parser.add_argument("--out", default=None, help="Write the tensor file here")
    _add_common_flags(generate_parser)

    # norm command
    norm_parser = subparsers.add_parser(
        "norm",
        help="Estimate the norm of a tensor file on an l_p domain",
        formatter_class=raw,
        epilog="""output (--format json):
  {"invocation": {...}, "dims", "field", "ps",
   "estimate": {"lower", "upper", "method", "iterations", "converged", "starts",
   "witness"}, "bounds": {"theorem1_bound", "ar_bound"}}
  "upper" is set only by exact oracles. Complex witness coordinates are [re, im].""",
    )
    norm_parser.add_argument("--input", required=True, help="Tensor file")
    norm_parser.add_argument("--p", required=True, help="One exponent per slot")
    norm_parser.add_argument(
        "--method", choices=ESTIMATE_METHODS, default="auto", help="Estimator (default: auto)"
    )
    norm_parser.add_argument("--starts", type=int, default=None, help="Random ascent starts")
    norm_parser.add_argument("--seed", type=int, default=0, help="Seed of the random starts")
    _add_common_flags(norm_parser)

    # search command
    search_parser = subparsers.add_parser(
        "search",
        help="Smallest norm among random or all sign tensors",
        formatter_class=raw,
        epilog=RECORD_EPILOG,
    )
    search_parser.add_argument("--p", required=True, help="Exponents (one value repeats --m times)")
    search_parser.add_argument("--m", type=int, default=None, help="Number of slots")
    search_parser.add_argument("--n", type=int, required=True, help="Dimension of every slot")
    search_parser.add_argument("--trials", type=int, default=1, help="Random tensors drawn")
    search_parser.add_argument("--seed", type=int, default=0)
    search_parser.add_argument("--field", choices=("real", "complex"), default="real")
    search_parser.add_argument(
        "--exhaustive", action="store_true", help="Enumerate every real sign tensor"
    )
    _add_experiment_flags(search_parser)

    # slope command
    slope_parser = subparsers.add_parser(
        "slope",
        help="Log-log slope of minimal norms against n",
        formatter_class=raw,
        epilog=RECORD_EPILOG,
    )
    slope_parser.add_argument("--p", required=True, help="Exponents")
    slope_parser.add_argument("--ns", required=True, help="Increasing dimensions, e.g. 2,4,8")
    slope_parser.add_argument("--trials", type=int, default=1, help="Random tensors per n")
    slope_parser.add_argument("--seed", type=int, default=0)
    slope_parser.add_argument("--field", choices=("real", "complex"), default="real")
    slope_parser.add_argument(
        "--exhaustive", action="store_true", help="Enumerate every real sign tensor"
    )
    _add_experiment_flags(slope_parser)

    # conjecture command
    default_ns = ",".join(str(n) for n in DEFAULT_CONJECTURE_NS)
    conjecture_parser = subparsers.add_parser(
        "conjecture",
        help="theorem1 bound over the conjectured bound on l_3/2 x l_3 x l_3",
        formatter_class=raw,
        epilog=RECORD_EPILOG,
    )
    conjecture_parser.add_argument("--path", choices=CONJECTURE_PATHS, default="diagonal")
    conjecture_parser.add_argument(
        "--ns", default=default_ns, help=f"Path parameters (default: {default_ns})"
    )
    _add_experiment_flags(conjecture_parser)

    # fourier-scan command
    fourier_parser = subparsers.add_parser(
        "fourier-scan",
        help="Norms of Fourier-matrix corners against their bound",
        formatter_class=raw,
        epilog=RECORD_EPILOG,
    )
    _add_grid_flags(fourier_parser)
    _add_experiment_flags(fourier_parser)

    # constant command
    constant_parser = subparsers.add_parser(
        "constant",
        help="Fourier ratios next to the real-sign reference constant",
        formatter_class=raw,
        epilog=RECORD_EPILOG,
    )
    _add_grid_flags(constant_parser)
    _add_experiment_flags(constant_parser)

    # init command
    init_parser = subparsers.add_parser(
        "init",
        help="Initialize a new .kszforms directory with default configuration",
    )
    init_parser.add_argument(
        "--force",
        action="store_true",
        help="Overwrite existing files",
    )
    init_parser.add_argument("--cwd", help="Working directory (default: current directory)")

    for name, handler in (
        ("exponents", run_exponents),
        ("generate", run_generate),
        ("norm", run_norm),
        ("search", run_search),
        ("slope", run_slope),
        ("conjecture", run_conjecture),
        ("fourier-scan", run_fourier_scan),
        ("constant", run_constant),
        ("init", run_init),
    ):
        subparsers.choices[name].set_defaults(handler=handler)

    return parser


def _working_dir(cwd: str | None) -> Path:
    return Path(cwd) if cwd else Path.cwd()


def _resolve_path(path: str, cwd: str | None) -> Path:
    resolved = Path(path)
    if not resolved.is_absolute():
        resolved = _working_dir(cwd) / resolved
    return resolved


def load_config(config_path: str | None, cwd: str | None) -> LabConfig:
    """Load configuration from file or use defaults.

    An explicit path must exist. Without one, `.kszforms/settings.json` under the
    working directory is used when present; otherwise built-in defaults with run
    logging disabled.

    Raises:
        FileNotFoundError: If an explicit config file doesn't exist.
        json.JSONDecodeError: If the config file isn't valid JSON.
        ValueError: If the config names unknown estimator settings.
    """
    if config_path:
        return LabConfig.from_file(_resolve_path(config_path, cwd))

    path = _working_dir(cwd) / DEFAULT_CONFIG_PATH
    if path.exists():
        return LabConfig.from_file(path)
    return LabConfig.from_dict({"logging": {"enabled": False}})


def resolve_threads(flag: int | None, configured: int) -> int:
    """--threads, else $KSZFORMS_THREADS, else the configured value."""
    if flag is not None:
        return flag
    env = os.environ.get(THREADS_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ArgumentError(f"{THREADS_ENV_VAR} must be an integer, got '{env}'") from None
    return configured


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger("kszforms").setLevel(logging.DEBUG if verbose else logging.WARNING)


def _resolve_config(args: argparse.Namespace) -> LabConfig:
    """Config file merged with the flag overrides of this invocation."""
    config = load_config(args.config, args.cwd)

    logging_config = dict(config.logging)
    if args.verbose:
        logging_config["verbose"] = True
    if args.no_log:
        logging_config["enabled"] = False
    _configure_logging(bool(logging_config.get("verbose")))

    estimator = replace(
        config.estimator, threads=resolve_threads(args.threads, config.estimator.threads)
    )
    starts = getattr(args, "starts", None)
    if starts is not None:
        estimator = replace(estimator, starts=starts)
    return LabConfig(estimator=estimator, logging=logging_config)


def _invocation(
    args: argparse.Namespace,
    config: LabConfig,
    seed: int | None = None,
    input_path: str | None = None,
    output_path: str | None = None,
) -> Invocation:
    flags = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("command", "handler")
    }
    flags["threads"] = config.estimator.threads
    flags["estimator"] = config.estimator.to_dict()
    return Invocation(
        subcommand=args.command,
        flags=flags,
        seed=seed,
        output_format=args.format,
        input_path=input_path,
        output_path=output_path,
    )


def _print_error(message: str, as_json: bool, kind: str = "error") -> None:
    """Print an error message to stderr.

    Args:
        message: The error message.
        as_json: Whether to output as JSON.
        kind: Exception class name echoed in JSON errors.
    """
    if as_json:
        print(json.dumps({"error": message, "kind": kind}), file=sys.stderr)
    else:
        print(f"Error: {message}", file=sys.stderr)


def exit_code_for(error: Exception) -> int:
    """Exit code of an error: 3 capability, 4 IO, 2 usage, 1 otherwise."""
    if isinstance(error, CapabilityError):
        return 3
    if isinstance(error, OSError):
        return 4
    if isinstance(error, (KszFormsError, ValueError)):
        return 2
    return 1


def _exit_codes(
    handler: Callable[[argparse.Namespace], int],
) -> Callable[[argparse.Namespace], int]:
    """Turn errors raised by a subcommand into an error message and exit code."""

    @functools.wraps(handler)
    def run(args: argparse.Namespace) -> int:
        as_json = getattr(args, "format", "json") == "json"
        try:
            return handler(args)
        except json.JSONDecodeError as e:
            _print_error(f"Invalid JSON in config: {e}", as_json, type(e).__name__)
            return 2
        except Exception as e:
            code = exit_code_for(e)
            if code == 1:
                logger.exception("unexpected error in %s", args.command)
            _print_error(str(e), as_json, type(e).__name__)
            return code

    return run


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _format_cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (list, tuple)):
        return ",".join(_format_cell(v) for v in value)
    return str(value)


def format_single_csv(data: dict[str, Any]) -> str:
    """Header plus one row; list values are comma-joined inside their cell."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(data))
    writer.writerow(
        [
            "" if v is None else (",".join(str(x) for x in v) if isinstance(v, list) else v)
            for v in data.values()
        ]
    )
    return buffer.getvalue()


def format_human_mapping(data: dict[str, Any]) -> str:
    width = max(len(key) for key in data)
    return "\n".join(f"{key.ljust(width)}  {_format_cell(value)}" for key, value in data.items())


def format_record_human(record: RunRecord) -> str:
    """Aligned table of the rows followed by the derived values."""
    columns = [name for name, _ in describe(record.kind)]
    table = [columns]
    for row in record.rows:
        table.append(
            ["x".join(str(n) for n in row.dims)]
            + [_format_cell(row.values.get(name)) for name in columns[1:]]
        )
    widths = [max(len(line[i]) for line in table) for i in range(len(columns))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in table]
    if record.derived:
        lines.append("")
        lines.append(format_human_mapping(record.derived))
    return "\n".join(lines)


def format_estimate_human(estimate: NormEstimate) -> str:
    lines = [f"||A|| >= {estimate.lower:.10g}  ({estimate.method})"]
    if estimate.upper is not None:
        lines.append(f"||A|| <= {estimate.upper:.10g}  (exact)")
    lines.append(
        f"iterations {estimate.iterations}, starts {estimate.starts}, "
        f"converged {_format_cell(estimate.converged)}"
    )
    return "\n".join(lines)


@_exit_codes
def run_exponents(args: argparse.Namespace) -> int:
    """Print the exponent profile of a p-tuple (and its bounds at --n)."""
    config = _resolve_config(args)
    ps = parse_p_list(args.p)
    result = profile(ps).to_dict()

    payload: dict[str, Any] = {"invocation": _invocation(args, config).to_dict(), "profile": result}
    if args.n is not None:
        bounds: dict[str, Any] = dict(bound_values((args.n,) * len(ps), ps))
        bounds["hl_floor"] = hl_lower_bound(ps, args.n) if all(p >= TWO for p in ps) else None
        payload["bounds"] = bounds
        result = {**result, **bounds}

    if args.format == "json":
        _emit(dump_json(payload))
    elif args.format == "csv":
        _emit(format_single_csv(result))
    else:
        _emit(format_human_mapping(result))
    return 0


def _generate(kind: str, dims: tuple[int, ...], seed: int) -> UnimodularTensor:
    if kind == "rademacher":
        return rademacher(dims, seed)
    if kind == "steinhaus":
        return steinhaus(dims, seed)
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ArgumentError(f"fourier tensors are square matrices, got dims {dims}")
    return fourier_matrix(dims[0])


@_exit_codes
def run_generate(args: argparse.Namespace) -> int:
    """Generate a Rademacher, Steinhaus or Fourier tensor."""
    config = _resolve_config(args)
    dims = parse_dims(args.dims)
    seed = None if args.kind == "fourier" else args.seed
    tensor = _generate(args.kind, dims, args.seed)

    invocation = _invocation(args, config, seed=seed, output_path=args.out)
    tensor_data = tensor.to_dict()
    if args.out:
        write_tensor(tensor, _resolve_path(args.out, args.cwd))
        del tensor_data["entries"]

    if args.format == "json":
        _emit(dump_json({"invocation": invocation.to_dict(), "tensor": tensor_data}))
    elif args.format == "csv":
        _emit(format_single_csv({
            "kind": args.kind,
            "dims": "x".join(str(n) for n in tensor.dims),
            "field": tensor.field,
            "seed": seed,
            "output": args.out,
        }))
    else:
        target = args.out or "stdout"
        print(f"{args.kind} tensor {'x'.join(str(n) for n in dims)} ({tensor.field}) -> {target}")
        if not args.out:
            _emit(json.dumps(tensor_data))
    return 0


@_exit_codes
def run_norm(args: argparse.Namespace) -> int:
    """Estimate ||A|| for a tensor file on the given exponents."""
    config = _resolve_config(args)
    ps = parse_p_list(args.p)
    input_path = _resolve_path(args.input, args.cwd)
    tensor = read_tensor(input_path)
    if len(ps) != tensor.m:
        raise ArgumentError(
            f"expected {tensor.m} exponents for dims {tensor.dims}, got {len(ps)}"
        )
    form = FormInstance.on(tensor, ps)

    if args.format == "human":
        print(f"Estimating norm of {tensor.dims} ({args.method})...", file=sys.stderr)
    estimate = Lab(config, _working_dir(args.cwd)).estimate(form, args.method, args.seed)

    invocation = _invocation(args, config, seed=args.seed, input_path=args.input)
    if args.format == "json":
        payload = {
            "invocation": invocation.to_dict(),
            "dims": list(tensor.dims),
            "field": tensor.field,
            "ps": [p.to_json() for p in ps],
            "estimate": estimate.to_dict(),
            "bounds": bound_values(tensor.dims, ps),
        }
        _emit(dump_json(payload))
    elif args.format == "csv":
        _emit(format_single_csv(estimate.to_dict(include_witness=False)))
    else:
        _emit(format_estimate_human(estimate))
    return 0


def _print_columns(args: argparse.Namespace) -> int:
    kind = EXPERIMENT_COMMANDS[args.command]
    columns = describe(kind)
    if args.format == "json":
        data = {"kind": kind, "columns": [{"name": n, "meaning": m} for n, m in columns]}
        _emit(dump_json(data))
    else:
        _emit(format_human_mapping(dict(columns)))
    return 0


def _run_experiment(
    args: argparse.Namespace, config: LabConfig, experiment: ExperimentConfig
) -> int:
    """Run an experiment through the Lab and print its record."""
    invocation = _invocation(args, config, seed=experiment.seed, output_path=args.out)
    human = args.format == "human"
    if human:
        print(f"Running {experiment.kind} ({experiment.expected_rows()} rows)...", file=sys.stderr)
    started = time.perf_counter()

    lab = Lab(config, _working_dir(args.cwd))
    record = lab.run(experiment, invocation.to_dict())
    if args.out:
        lab.records.persist(record, _resolve_path(args.out, args.cwd))
    if args.csv:
        lab.records.export_csv(record, _resolve_path(args.csv, args.cwd))

    if args.format == "json":
        _emit(dump_json({"invocation": invocation.to_dict(), "record": record.results_dict()}))
    elif args.format == "csv":
        _emit(lab.records.to_csv(record))
    else:
        _emit(format_record_human(record))
        print(f"\nCompleted in {time.perf_counter() - started:.1f}s", file=sys.stderr)
        run_id = record.metadata.get("run_id")
        if run_id:
            print(f"Run log: {lab.records.get_run_path(run_id)}", file=sys.stderr)
    return 0


def _search_ps(p_text: str, m: int | None) -> tuple[ExtendedExponent, ...]:
    ps = parse_p_list(p_text)
    if m is None:
        return ps
    if len(ps) == 1 and m > 1:
        return ps * m
    if len(ps) != m:
        raise ArgumentError(f"--m {m} does not match {len(ps)} exponents in '{p_text}'")
    return ps


@_exit_codes
def run_search(args: argparse.Namespace) -> int:
    if args.describe:
        return _print_columns(args)
    config = _resolve_config(args)
    experiment = ExperimentConfig(
        kind="min-norm-search",
        ps=_search_ps(args.p, args.m),
        schedule=(args.n,),
        trials=args.trials,
        seed=args.seed,
        estimator=config.estimator,
        field=args.field,
        exhaustive=args.exhaustive,
    )
    return _run_experiment(args, config, experiment)


@_exit_codes
def run_slope(args: argparse.Namespace) -> int:
    if args.describe:
        return _print_columns(args)
    config = _resolve_config(args)
    experiment = ExperimentConfig(
        kind="slope",
        ps=parse_p_list(args.p),
        schedule=parse_int_list(args.ns),
        trials=args.trials,
        seed=args.seed,
        estimator=config.estimator,
        field=args.field,
        exhaustive=args.exhaustive,
    )
    return _run_experiment(args, config, experiment)


@_exit_codes
def run_conjecture(args: argparse.Namespace) -> int:
    if args.describe:
        return _print_columns(args)
    config = _resolve_config(args)
    experiment = ExperimentConfig(
        kind="conjecture-ratio",
        ps=CONJECTURE_PS,
        schedule=parse_int_list(args.ns),
        estimator=config.estimator,
        path=args.path,
    )
    return _run_experiment(args, config, experiment)


def _grid(args: argparse.Namespace) -> FourierGrid:
    return FourierGrid(
        n1s=parse_int_list(args.n1s),
        n2s=parse_int_list(args.n2s),
        p1s=parse_p_list(args.p1s),
        p2s=parse_p_list(args.p2s),
    )


@_exit_codes
def run_fourier_scan(args: argparse.Namespace) -> int:
    if args.describe:
        return _print_columns(args)
    config = _resolve_config(args)
    experiment = ExperimentConfig(
        kind="fourier-scan", grid=_grid(args), seed=args.seed, estimator=config.estimator
    )
    return _run_experiment(args, config, experiment)


@_exit_codes
def run_constant(args: argparse.Namespace) -> int:
    if args.describe:
        return _print_columns(args)
    config = _resolve_config(args)
    experiment = ExperimentConfig(
        kind="constant-one", grid=_grid(args), seed=args.seed, estimator=config.estimator
    )
    return _run_experiment(args, config, experiment)


def run_init(args: argparse.Namespace) -> int:
    """Initialize a new .kszforms directory with default configuration.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0 for success, 2 if the directory exists, 4 on IO errors).
    """
    kszforms_dir = _working_dir(args.cwd) / ".kszforms"
    settings_file = kszforms_dir / "settings.json"
    gitignore_file = kszforms_dir / ".gitignore"
    runs_dir = kszforms_dir / "runs"

    if kszforms_dir.exists() and not args.force:
        _print_error(f"{kszforms_dir} already exists. Use --force to overwrite.", False)
        return 2

    try:
        kszforms_dir.mkdir(exist_ok=True)
        runs_dir.mkdir(exist_ok=True)

        settings_file.write_text(dump_json(DEFAULT_CONFIG), encoding="utf-8")
        print(f"Created {settings_file}")

        gitignore_file.write_text(DEFAULT_GITIGNORE, encoding="utf-8")
        print(f"Created {gitignore_file}")

        print(f"\nInitialized kszforms in {kszforms_dir}")
        print("\nNext steps:")
        print("  1. Tune the estimator settings in .kszforms/settings.json")
        print("  2. Run: kszforms exponents --p 1.5,3,3")
        print("  3. Run: kszforms slope --p inf,inf --ns 2,3,4,5 --trials 8")

        return 0

    except OSError as e:
        _print_error(f"Failed to create files: {e}", False)
        return 4


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI.

    Returns:
        Exit code (0 success, 2 usage, 3 capability, 4 IO).
    """
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    if args.command is None:
        parser.print_help()
        return 0

    handler: Callable[[argparse.Namespace], int] = args.handler
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
