"""``densecap`` command-line interface.

Exit codes: 0 success/pass, 1 verification failure, 2 parse error,
3 invalid input, 4 internal numerical failure.
"""

import argparse
import csv
import io
import json
import math
import sys

from densecap import capacity, optimizer, states, suites
from densecap.errors import (
    ConvergenceError,
    DimensionError,
    FormatError,
    InvalidDensityMatrix,
    InvalidEnsemble,
    NumericalError,
)

DEFAULT_SEED = 0xD15EA5E

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3, 4


def to_json(obj, indent=2, _level=0):
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise NumericalError(f"non-finite value {obj} in output")
        return f"{obj:.17g}"
    if hasattr(obj, "item") and not hasattr(obj, "__len__"):
        return to_json(obj.item(), indent, _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(to_json(v, indent, _level + 1) for v in obj) + "]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(text, path=None):
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text + "\n")


def _load_state(path):
    try:
        if path == "-":
            data = json.load(sys.stdin)
        else:
            with open(path) as fh:
                data = json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from exc
    return states.density_from_dict(data)


def _parse_dims(text):
    try:
        a, b = (int(x) for x in text.lower().split("x"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"dims must look like 2x3, got {text!r}") from exc
    return a, b


def _positive(text):
    value = int(text, 0)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _seed(text):
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def cmd_capacity(args):
    rho = _load_state(args.input)
    report = capacity.capacity_decomposition(rho).to_dict()
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(report.keys())
        writer.writerow(_csv_cell(v) for v in report.values())
        _emit(buf.getvalue().rstrip("\n"), args.out)
    else:
        _emit(to_json(report), args.out)
    return EXIT_OK


def cmd_verify(args):
    verdict = suites.run_suite(args.suite, args.trials, args.seed, args.tol)
    _emit(to_json(verdict), args.out)
    return EXIT_OK if verdict["passed"] else EXIT_FAIL


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.9g}"
    return v


def werner_sweep(steps):
    rows = []
    for i in range(steps):
        p = i / (steps - 1)
        rho = states.werner_state(p)
        _, s_b, s_ab = capacity.entropies(rho)
        advantage, coherent = capacity.dense_coding_advantage(rho)
        rows.append(
            {
                "p": p,
                "sB": s_b,
                "sAB": s_ab,
                "capacity": 1.0 + s_b - s_ab,
                "coherent_info": coherent,
                "advantage": advantage,
            }
        )
    return rows


def cmd_sweep_werner(args):
    if args.steps < 2:
        raise ValueError("steps must be >= 2")
    rows = werner_sweep(args.steps)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(rows[0].keys())
    for row in rows:
        writer.writerow(_csv_cell(v) for v in row.values())
    threshold = capacity.werner_threshold(1e-6)
    if args.out is None or args.out == "-":
        sys.stdout.write(buf.getvalue())
        sys.stderr.write(f"advantage threshold p* = {threshold:.9g}\n")
    else:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(buf.getvalue())
        _emit(to_json({"out": args.out, "rows": len(rows), "threshold": threshold}))
    return EXIT_OK


def cmd_optimize(args):
    rho = _load_state(args.input)
    result = optimizer.optimize_holevo(rho, args.k, args.restarts, args.seed)
    _emit(to_json(result.to_dict()), args.out)
    return EXIT_OK


def cmd_random_state(args):
    da, db = args.dims
    if not (2 <= da <= 8 and 2 <= db <= 8):
        raise DimensionError(f"dims must lie in 2..8, got {da}x{db}")
    if args.kind == "pure":
        rho = states.random_pure(da, db, args.seed)
    elif args.kind == "mixed":
        rho = states.random_mixed(da, db, args.rank, args.seed)
    else:
        rho = states.random_separable(da, db, args.terms, args.seed)
    _emit(to_json(states.density_to_dict(rho)), args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="densecap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="capacity report for a density-matrix JSON file")
    p.add_argument("--in", dest="input", required=True, help="state JSON path, or - for stdin")
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    p.add_argument("--trials", type=_positive, default=100)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--tol", type=float, help="override every check tolerance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep-werner", help="capacity along the Werner family, CSV output")
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep_werner)

    p = sub.add_parser("optimize", help="numerically maximize the Holevo quantity")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--k", type=_positive, help="alphabet size (default D_A^2)")
    p.add_argument("--restarts", type=_positive, default=16)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("random-state", help="emit a seeded random state as JSON")
    p.add_argument("--dims", type=_parse_dims, default=(2, 2))
    p.add_argument("--kind", choices=["pure", "mixed", "separable"], default="mixed")
    p.add_argument("--rank", type=_positive)
    p.add_argument("--terms", type=_positive)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_random_state)
    return parser


def _fail(kind, exc):
    sys.stderr.write(f"densecap: {kind}: {exc}\n")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        _fail("parse error", exc)
        return EXIT_PARSE
    except (ConvergenceError, NumericalError) as exc:
        _fail("numerical failure", exc)
        return EXIT_NUMERIC
    except (InvalidDensityMatrix, InvalidEnsemble, DimensionError, ValueError, OSError) as exc:
        _fail("invalid input", exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
