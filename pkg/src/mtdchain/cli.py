"""Command-line front end: ``mtdchain fit | predict | assess | simulate``.

Exit codes: 0 success, 2 input or parse error, 3 computation error.
Histories (``--history``, ``--init``) list the most recent state first.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .assessment import (
    AssessmentConfig,
    assess_teams,
    rank_orders,
    write_report_csv,
    write_trace_csv,
)
from .chain import WDL, StateSpace, parse_sequence, tokenize
from .chart import chart_from_report, render_svg, slug, write_chart_csv
from .errors import ComputationError, InputError
from .ledger import is_ledger, ledger_teams, read_ledger, team_sequence
from .model import fit, load_model, predict_distribution, save_model, simulate
from .rng import make_rng

EXIT_INPUT = 2
EXIT_COMPUTE = 3

log = logging.getLogger("mtdchain")


def _split_history(text: str) -> list[str]:
    return [t for t in text.replace(",", " ").split() if t]


def _resolve_space(flag: str | None, header: StateSpace | None) -> StateSpace:
    if flag is None:
        return header or WDL
    space = StateSpace.parse(flag)
    if header is not None and header != space:
        raise InputError(
            f"--states {','.join(space.labels)} conflicts with file header {','.join(header.labels)}"
        )
    return space


def load_sequences(path, states_flag, teams=None, last=None) -> dict:
    """Read a sequence file or a ledger; returns ``{team: Sequence}`` in input order."""
    path = Path(path)
    if is_ledger(path):
        space = _resolve_space(states_flag, None)
        records = read_ledger(path, space)
        names = teams or ledger_teams(records)
        return {t: team_sequence(records, t, space, last) for t in names}
    tokens, header = tokenize(path.read_text(encoding="utf-8"))
    space = _resolve_space(states_flag, header)
    seq = parse_sequence(tokens, space)
    if last is not None:
        seq = seq[max(len(seq) - last, 0):]
    return {path.stem: seq}


def _fmt(x: float) -> str:
    return repr(float(x))


def _say(args, *lines):
    if not args.quiet:
        for line in lines:
            print(line)


def cmd_fit(args) -> int:
    seqs = load_sequences(args.input, args.states, args.team and [args.team], args.last)
    if len(seqs) != 1:
        raise InputError("ledger holds several teams; pick one with --team")
    (team, seq), = seqs.items()
    model = fit(seq, args.order)
    save_model(model, args.out)
    labels = model.space.labels
    _say(
        args,
        f"order: {model.order}  states: {' '.join(labels)}  n: {len(seq)}",
        "lambda: " + " ".join(_fmt(w) for w in model.weights),
        f"lp_residual: {_fmt(model.lp_residual)}",
        "x_hat: " + " ".join(f"{lab} {_fmt(p)}" for lab, p in zip(labels, model.stationary_hat.probs)),
        f"wrote {args.out}",
    )
    return 0


def _format_dist(space, probs, digits) -> str:
    if digits is None:
        vals = [_fmt(p) for p in probs]
    else:
        vals = [f"{p:.{digits}f}" for p in probs]
    return " ".join(f"{lab} {v}" for lab, v in zip(space.labels, vals))


def cmd_predict(args) -> int:
    model = load_model(args.model)
    hist = model.history(_split_history(args.history))
    dist = predict_distribution(model, hist)
    print(_format_dist(model.space, dist.probs, args.digits))
    return 0


def cmd_simulate(args) -> int:
    model = load_model(args.model)
    hist = model.history(_split_history(args.init))
    if args.steps < 0:
        raise InputError("--steps must be >= 0")
    out = simulate(model, hist, args.steps, make_rng(args.seed))
    print(out.render())
    return 0


def _chart_path(base: Path, team: str, multi: bool) -> Path:
    if not multi:
        return base
    return base.with_name(f"{base.stem}_{slug(team)}{base.suffix or '.csv'}")


def cmd_assess(args) -> int:
    if args.seed < 0:
        raise InputError("--seed must be non-negative")
    if args.svg and not args.chart:
        raise InputError("--svg needs --chart")
    k_values = tuple(range(1, args.k_max + 1))
    cfg = AssessmentConfig(k_values=k_values, n_eval=args.n_eval, window=args.window,
                           seed=args.seed, repetitions=args.reps)
    seqs = load_sequences(args.input, args.states, args.team or None, args.window)
    reports = assess_teams(seqs, cfg, jobs=args.jobs)

    for rep in reports:
        ranked = rank_orders(rep)
        _say(args, f"team: {rep.team}  window: {cfg.window}  n_eval: {cfg.n_eval}  "
                   f"reps: {cfg.repetitions}  seed: {cfg.seed}",
             "k  accuracy")
        _say(args, *(f"{k:<2} {acc:.4f}" for k, acc in sorted(rep.per_k.items())))
        _say(args, f"best k: {ranked[0][0]} ({ranked[0][1]:.4f})", "")

    if args.report:
        with open(args.report, "w", encoding="utf-8", newline="") as fh:
            write_report_csv(reports, fh)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            write_trace_csv(reports, fh)
    if args.chart:
        base = Path(args.chart)
        multi = len(reports) > 1
        for rep in reports:
            chart = chart_from_report(rep)
            path = _chart_path(base, rep.team, multi)
            with open(path, "w", encoding="utf-8", newline="") as fh:
                write_chart_csv(chart, fh)
            if args.svg:
                path.with_suffix(".svg").write_text(render_svg(chart), encoding="utf-8")
            log.info("wrote %s", path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--states", default=argparse.SUPPRESS,
                        help='comma-separated state labels (default "W,D,L")')
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="PRNG seed (default 0)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="mtdchain", parents=[common],
                                     description="Higher-order (MTD) Markov chains for outcome sequences.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", parents=[common], help="fit an order-k model and save it")
    p.add_argument("input", help="sequence file or ledger CSV")
    p.add_argument("--order", "-k", type=int, required=True)
    p.add_argument("--out", "-o", required=True, help="model JSON path")
    p.add_argument("--team", help="team to use from a ledger")
    p.add_argument("--last", type=int, default=None, help="keep only the most recent N games")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("predict", parents=[common], help="next-state distribution for a history")
    p.add_argument("model")
    p.add_argument("--history", required=True, help='most recent first, e.g. "W,L"')
    p.add_argument("--digits", type=int, default=None, help="fixed decimals (default: full precision)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("assess", parents=[common], help="accuracy of orders 1..k-max")
    p.add_argument("input", help="sequence file or ledger CSV")
    p.add_argument("--team", action="append", help="restrict a ledger to these teams (repeatable)")
    p.add_argument("--k-max", type=int, default=13)
    p.add_argument("--n-eval", type=int, default=10)
    p.add_argument("--window", type=int, default=100)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="per-(team, k, repetition) accuracy CSV")
    p.add_argument("--trace", help="per-prediction trace CSV")
    p.add_argument("--chart", help="chart CSV path; one file per team when several")
    p.add_argument("--svg", action="store_true", help="also render each chart as SVG")
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("simulate", parents=[common], help="sample a trajectory from a model")
    p.add_argument("model")
    p.add_argument("--init", required=True, help='initial history, most recent first')
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("states", None), ("seed", 0), ("quiet", False)):
        if not hasattr(args, name):
            setattr(args, name, default)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ComputationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
