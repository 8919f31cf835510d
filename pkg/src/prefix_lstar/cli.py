"""Command-line entry point.

Exit status: 0 on success, 2 for bad arguments, 3 when some learning run
timed out but nothing else went wrong.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional, Sequence

from .automata import to_dot, to_regular_grammar
from .evaluation import (
    LEARNER_MODES,
    default_length_range,
    f1_grid,
    grid_csv,
    learn_with,
    run_exact_benchmark,
    verify_pac,
    make_sampler,
)
from .metrics import dumps_csv, dumps_jsonl
from .oracle import ExactEquivalence, PacEquivalence, PacParams, SamplerConfig, Teacher
from .targets import NAMES, NESTED, InvalidTargetSpec, build, desk_spec

EXIT_OK, EXIT_USAGE, EXIT_TIMEOUT = 0, 2, 3

LEARNER_FLAGS = {"lstar": "lstar", "plstar-std": "plstar_standard", "plstar-opt": "plstar_optimised"}


class UsageError(Exception):
    pass


def _add_target(p: argparse.ArgumentParser, multiple: bool = False) -> None:
    if multiple:
        p.add_argument("--targets", default="all", help="comma-separated names or 'all'")
    else:
        p.add_argument("--target", required=True, choices=NAMES)
    p.add_argument("--depth", type=int, help="nesting bound for arith/json/dyck")
    p.add_argument("--alphabet", choices=("tiny", "full"), default="tiny")


def _add_sampling(p: argparse.ArgumentParser, many_p: bool = False) -> None:
    if many_p:
        p.add_argument("--samplers", nargs="+", choices=("uniform", "prefix"), default=["uniform", "prefix"])
        p.add_argument("--p", type=float, nargs="+", default=[0.05, 0.5, 1.0])
    else:
        p.add_argument("--sampler", choices=("uniform", "prefix"), default="prefix")
        p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--m", type=int, default=200)
    p.add_argument("--lmin", type=int)
    p.add_argument("--lmax", type=int)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timeout-secs", type=float, default=120.0)
    p.add_argument("--out", help="output file (JSON lines or JSON)")
    p.add_argument("--record-time", action="store_true", help="write wall times into output files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefix-lstar", description="Learn DFAs with L* and PL*.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="run one learner on one target")
    _add_target(p)
    p.add_argument("--learner", choices=tuple(LEARNER_FLAGS), default="plstar-opt")
    p.add_argument("--oracle", choices=("exact", "pac"), default="exact")
    _add_sampling(p)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--delta", type=float, default=0.05)
    _add_common(p)
    p.add_argument("--out-csv")

    p = sub.add_parser("bench", help="exact-oracle comparison of all learners")
    _add_target(p, multiple=True)
    _add_common(p)
    p.add_argument("--out-csv")

    p = sub.add_parser("pac-verify", help="estimate Pr(d <= epsilon) over repeated PAC runs")
    _add_target(p)
    _add_sampling(p)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--runs", type=int, default=30)
    p.add_argument("--n-distance", type=int, default=1000)
    _add_common(p)

    p = sub.add_parser("f1-grid", help="mean F1 over a (sampler, p, epsilon, delta) grid")
    _add_target(p)
    _add_sampling(p, many_p=True)
    p.add_argument("--epsilon", type=float, nargs="+", default=[0.05])
    p.add_argument("--delta", type=float, nargs="+", default=[0.05])
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--n-f1", type=int, default=1000)
    _add_common(p)
    p.add_argument("--out-csv")

    p = sub.add_parser("export-dfa", help="print a target DFA")
    _add_target(p)
    p.add_argument("--format", choices=("dot", "grammar"), default="dot")
    p.add_argument("--out")
    return parser


def _spec(name: str, args, strict: bool = True):
    if strict and args.depth is not None and name not in NESTED:
        raise UsageError(f"{name} takes no --depth")
    depth = args.depth if name in NESTED else None
    try:
        return desk_spec(name, args.alphabet, depth)
    except InvalidTargetSpec as exc:
        raise UsageError(str(exc)) from None


def _sampler_config(args, name: str, target, p: Optional[float] = None) -> SamplerConfig:
    lo, hi = default_length_range(name, target)
    lo = lo if args.lmin is None else args.lmin
    hi = hi if args.lmax is None else args.lmax
    try:
        return SamplerConfig(p=args.p if p is None else p, m=args.m, l_min=lo, l_max=hi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _summary(m) -> str:
    time_note = "" if m.wall_time is None else f" time={m.wall_time:.2f}s"
    return (
        f"{m.target} {m.learner}: outcome={m.outcome} states={m.hypothesis_states} "
        f"queries={m.mq_or_pq} eq={m.eq} comparisons={m.cell_comparisons} "
        f"table={m.table_size}{time_note}"
    )


def _pac_params(eps: float, delta: float) -> PacParams:
    try:
        return PacParams(eps, delta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_learn(args) -> int:
    spec = _spec(args.target, args)
    target = build(spec)
    teacher = Teacher(target)
    if args.oracle == "exact":
        oracle = ExactEquivalence(teacher)
    else:
        cfg = _sampler_config(args, args.target, target)
        sampler = make_sampler(args.sampler, target, cfg)
        oracle = PacEquivalence(teacher, _pac_params(args.epsilon, args.delta), sampler, random.Random(args.seed))
    _, m = learn_with(LEARNER_FLAGS[args.learner], teacher, oracle, args.timeout_secs, spec.label, args.seed)
    print(_summary(m))
    _write(args.out, dumps_jsonl([m], args.record_time))
    _write(args.out_csv, dumps_csv([m], args.record_time))
    return EXIT_TIMEOUT if m.outcome == "timeout" else EXIT_OK


def cmd_bench(args) -> int:
    if args.targets == "all":
        names = list(NAMES)
    else:
        names = [n.strip() for n in args.targets.split(",") if n.strip()]
        unknown = [n for n in names if n not in NAMES]
        if unknown or not names:
            raise UsageError(f"unknown targets {unknown}; expected names from {NAMES}")
    specs = [_spec(n, args, strict=False) for n in names]
    records = run_exact_benchmark(specs, tuple(LEARNER_MODES), args.timeout_secs, args.seed)
    for m in records:
        print(_summary(m))
    _write(args.out, dumps_jsonl(records, args.record_time))
    _write(args.out_csv, dumps_csv(records, args.record_time))
    return EXIT_TIMEOUT if any(m.outcome == "timeout" for m in records) else EXIT_OK


def cmd_pac_verify(args) -> int:
    spec = _spec(args.target, args)
    target = build(spec)
    cfg = _sampler_config(args, args.target, target)
    _pac_params(args.epsilon, args.delta)
    if args.runs < 1 or args.n_distance < 1:
        raise UsageError("--runs and --n-distance must be positive")
    report = verify_pac(
        target,
        args.sampler,
        args.epsilon,
        args.delta,
        args.runs,
        args.n_distance,
        random.Random(args.seed),
        cfg,
        timeout=args.timeout_secs,
        label=spec.label,
    )
    print(
        f"{spec.label} {args.sampler}: Pr(d <= {args.epsilon}) = "
        f"{report.fraction_within_epsilon:.3f} over {report.runs} runs "
        f"(max d = {max(report.distances):.4f}, timeouts = {report.timeouts})"
    )
    _write(args.out, json.dumps(report.to_dict(), indent=2) + "\n")
    return EXIT_TIMEOUT if report.timeouts else EXIT_OK


def cmd_f1_grid(args) -> int:
    spec = _spec(args.target, args)
    target = build(spec)
    cfg = _sampler_config(args, args.target, target, p=0.5)
    for e in args.epsilon:
        for d in args.delta:
            _pac_params(e, d)
    for p in args.p:
        if not 0 <= p <= 1:
            raise UsageError("--p values must lie in [0, 1]")
    if args.repeats < 1:
        raise UsageError("--repeats must be positive")
    samplers = []
    for kind in args.samplers:
        samplers += [("uniform", None)] if kind == "uniform" else [("prefix", p) for p in args.p]
    cells = f1_grid(
        target,
        samplers,
        args.epsilon,
        args.delta,
        args.repeats,
        random.Random(args.seed),
        cfg.l_min,
        cfg.l_max,
        m=cfg.m,
        n_f1=args.n_f1,
        timeout=args.timeout_secs,
        label=spec.label,
    )
    for c in cells:
        p = "" if c.p is None else f" p={c.p}"
        print(
            f"{c.target} {c.sampler}{p} eps={c.epsilon} delta={c.delta}: "
            f"mean F1 = {c.mean_f1:.3f} (timeouts {c.timeouts}/{c.runs})"
        )
    _write(args.out_csv, grid_csv(cells))
    _write(args.out, "".join(json.dumps(c.__dict__) + "\n" for c in cells))
    return EXIT_TIMEOUT if any(c.timeouts for c in cells) else EXIT_OK


def cmd_export(args) -> int:
    spec = _spec(args.target, args)
    dfa = build(spec)
    if args.format == "dot":
        text = to_dot(dfa, spec.label.replace("-", "_"))
    else:
        g = to_regular_grammar(dfa)
        text = "".join(f"{b} -> {a!r}{' ' + c if c else ''}\n" for b, a, c in g.rules)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "learn": cmd_learn,
    "bench": cmd_bench,
    "pac-verify": cmd_pac_verify,
    "f1-grid": cmd_f1_grid,
    "export-dfa": cmd_export,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
