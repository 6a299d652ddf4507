"""Command-line front end.

Four subcommands: ``measure``, ``separability``, ``invariance``, and
``parse``.  States come in either as a file (``--state``) or as a ket
expression (``--expr``).  ``--output machine`` emits one JSON document;
identical invocations produce byte-identical output, so machine output
can be diffed or hashed.  There is no environment-driven configuration
here: everything that affects results arrives through flags.

Exit codes: 0 on success, 1 for parse or syntax problems (expression
text, state files), 2 for validation problems (normalization, arity,
dimensions), 3 when a size guard refuses the computation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ArityMismatchError, ParseError, SizeGuardError, ValidationError
from .ketlang import evaluate, parse_ket, pretty
from .lu import invariance_experiment
from .measures import MeasureConfig, multipartite_measure, resolve_measure
from .separability import separability_report
from .statefile import load_state
from .states import PureState


def _input_flags(sub: argparse.ArgumentParser, expr_only: bool = False) -> None:
    if expr_only:
        sub.add_argument("--expr", required=True, help="ket expression to parse")
        return
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--state", help="path to a JSON state file")
    group.add_argument("--expr", help="ket expression for the state")


def _output_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--output", choices=("text", "machine"), default="text",
        help="human-readable lines or one JSON document",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entwedge",
        description="Wedge-product entanglement measures for pure multipartite states.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    measure = subs.add_parser("measure", help="compute an entanglement measure")
    _input_flags(measure)
    measure.add_argument("--norm-constant", type=float, default=2.0,
                         help="prefactor under the square root (default 2)")
    measure.add_argument("--measure", choices=("auto", "bipartite", "multipartite"),
                         default="auto", help="which measure to run")
    _output_flag(measure)
    measure.set_defaults(func=cmd_measure)

    separability = subs.add_parser("separability", help="residuals for every bipartition")
    _input_flags(separability)
    separability.add_argument("--threshold", type=float, default=1e-10,
                              help="residual at or below this counts as separable")
    _output_flag(separability)
    separability.set_defaults(func=cmd_separability)

    invariance = subs.add_parser("invariance", help="measure drift under local unitaries")
    _input_flags(invariance)
    invariance.add_argument("--trials", type=int, default=1000, help="number of rounds")
    invariance.add_argument("--seed", type=int, default=0, help="64-bit experiment seed")
    invariance.add_argument("--measure", choices=("auto", "bipartite", "multipartite"),
                            default="auto", help="which measure to track")
    invariance.add_argument("--norm-constant", type=float, default=2.0,
                            help="prefactor under the square root (default 2)")
    _output_flag(invariance)
    invariance.set_defaults(func=cmd_invariance)

    parse = subs.add_parser("parse", help="parse an expression and print its amplitudes")
    _input_flags(parse, expr_only=True)
    parse.set_defaults(func=cmd_parse)

    return parser


def _load_input(args) -> tuple[PureState, dict]:
    echo = {"expr": getattr(args, "expr", None), "state": getattr(args, "state", None)}
    if args.state is not None:
        return load_state(args.state), echo
    return evaluate(parse_ket(args.expr)), echo


def _emit(doc: dict, output: str, text_lines) -> None:
    if output == "machine":
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def cmd_measure(args) -> int:
    state, echo = _load_input(args)
    cfg = MeasureConfig(norm_constant=args.norm_constant)
    fn = resolve_measure(args.measure, state.num_subsystems)
    result = fn(state, cfg)
    note = None
    if fn is multipartite_measure and state.num_subsystems == 2:
        note = "on two subsystems the multipartite value is twice the bipartite concurrence"
    doc = {
        "command": "measure",
        "input": echo,
        "measure_kind": result.kind.value,
        "norm_constant": result.norm_constant,
        "value": result.value,
        "term_sum": result.term_sum,
        "note": note,
    }
    lines = [
        f"kind: {result.kind.value}",
        f"norm constant: {result.norm_constant!r}",
        f"value: {result.value!r}",
        f"term sum: {result.term_sum!r}",
    ]
    if note:
        lines.append(f"note: {note}")
    _emit(doc, args.output, lines)
    return 0


def cmd_separability(args) -> int:
    state, echo = _load_input(args)
    report = separability_report(state, threshold=args.threshold)
    partitions = [
        {"left": list(part.left), "residual": verdict.residual,
         "separable": verdict.separable}
        for part, verdict in report.per_partition.items()
    ]
    certificate = None
    if report.certificate is not None:
        certificate = [
            [{"re": float(z.real), "im": float(z.imag)} for z in factor]
            for factor in report.certificate
        ]
    doc = {
        "command": "separability",
        "input": echo,
        "threshold": report.threshold,
        "partitions": partitions,
        "fully_separable": report.fully_separable,
        "certificate": certificate,
        "certificate_error": report.certificate_error,
    }
    lines = [f"threshold: {report.threshold!r}"]
    for part, verdict in report.per_partition.items():
        word = "separable" if verdict.separable else "entangled"
        lines.append(f"split {part}: residual={verdict.residual!r} {word}")
    lines.append(f"fully separable: {'yes' if report.fully_separable else 'no'}")
    if report.certificate_error is not None:
        lines.append(f"certificate reconstruction error: {report.certificate_error!r}")
    _emit(doc, args.output, lines)
    return 0


def cmd_invariance(args) -> int:
    state, echo = _load_input(args)
    cfg = MeasureConfig(norm_constant=args.norm_constant)
    run = invariance_experiment(
        state, trials=args.trials, seed=args.seed, measure=args.measure, cfg=cfg
    )
    doc = {
        "command": "invariance",
        "input": echo,
        "measure_kind": run.measure_kind,
        "norm_constant": run.norm_constant,
        "baseline_value": run.baseline_value,
        "seed": run.seed,
        "trials": run.trials,
        "max_abs_deviation": run.max_abs_deviation,
        "deviations": list(run.deviations) if run.deviations is not None else None,
    }
    lines = [
        f"measure: {run.measure_kind}",
        f"baseline value: {run.baseline_value!r}",
        f"seed: {run.seed}",
        f"trials: {run.trials}",
        f"max abs deviation: {run.max_abs_deviation!r}",
    ]
    _emit(doc, args.output, lines)
    return 0


def cmd_parse(args) -> int:
    expr = parse_ket(args.expr)
    state = evaluate(expr)
    print(f"expression: {pretty(expr)}")
    print(f"dims: {','.join(str(n) for n in state.dims)}")
    tensor = state.tensor
    for idx in sorted(zip(*[axis.tolist() for axis in tensor.nonzero()])):
        z = complex(tensor[idx])
        label = ",".join(str(x) for x in idx)
        print(f"amp |{label}>: re={z.real!r} im={z.imag!r}")
    return 0


def cli_main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ArityMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())
