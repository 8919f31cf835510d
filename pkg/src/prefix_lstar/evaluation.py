"""Experiment drivers: exact-oracle comparison, PAC verification and F1 grids.

Every driver takes an explicit ``random.Random``; each run draws its own
sub-seed from it in a fixed order, so a report is a function of the seed.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence

from .automata import Dfa, EmptyLanguageError, WordSampler
from .lstar import LearningTimeout, LStarLearner, drive, lstar_learn
from .metrics import RunMetrics
from .oracle import (
    ExactEquivalence,
    PacEquivalence,
    PacParams,
    Sampler,
    SamplerConfig,
    Teacher,
    prefix_sampler,
    pseudo_uniform_sampler,
)
from .plstar import PlStarLearner, plstar_learn
from .targets import LENGTH_RANGES, TargetSpec, build

SAMPLERS = ("uniform", "prefix")
LEARNER_MODES = {"lstar": None, "plstar_standard": "standard", "plstar_optimised": "optimised"}


def f1_score(precision: float, recall: float) -> float:
    if not (0 <= precision <= 1 and 0 <= recall <= 1):
        raise ValueError("precision and recall must lie in [0, 1]")
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class F1Report:
    precision: float
    recall: float
    f1: float
    sample_size: int
    l_min: int
    l_max: int


class TargetEmptyInRange(EmptyLanguageError):
    """The target has no string in the requested length range, so recall is undefined."""


def _accept_rate(source: WordSampler, judge: Dfa, n: int, rng: random.Random) -> float:
    hits = sum(judge.accepts(source.sample(rng)) for _ in range(n))
    return hits / n


def estimate_f1(
    hypothesis: Dfa,
    target: Dfa,
    l_min: int,
    l_max: int,
    n: int,
    rng: random.Random,
) -> F1Report:
    """Precision and recall from ``n`` uniform draws of each language in the length range.

    An empty hypothesis (in range) has precision 1.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    target_words = WordSampler(target, l_min, l_max)
    if target_words.empty:
        raise TargetEmptyInRange(f"target accepts no string with length in [{l_min}, {l_max}]")
    hyp_words = WordSampler(hypothesis, l_min, l_max)
    precision = 1.0 if hyp_words.empty else _accept_rate(hyp_words, target, n, rng)
    recall = _accept_rate(target_words, hypothesis, n, rng)
    return F1Report(precision, recall, f1_score(precision, recall), n, l_min, l_max)


def estimate_distance(hypothesis: Dfa, target: Dfa, sampler: Sampler, n: int, rng: random.Random) -> float:
    """Fraction of ``n`` draws on which the two languages disagree; failed draws agree."""
    if n < 1:
        raise ValueError("n must be at least 1")
    wrong = 0
    for _ in range(n):
        x = sampler(rng)
        if x is not None and hypothesis.accepts(x) != target.accepts(x):
            wrong += 1
    return wrong / n


def diameter(dfa: Dfa) -> int:
    """Largest breadth-first distance from the start state to a reachable state."""
    dist = {dfa.start: 0}
    frontier = [dfa.start]
    while frontier:
        nxt = []
        for q in frontier:
            for r in dfa.delta[q].tolist():
                if r not in dist:
                    dist[r] = dist[q] + 1
                    nxt.append(r)
        frontier = nxt
    return max(dist.values())


def default_length_range(name: str, target: Dfa) -> tuple[int, int]:
    """Per-target sampling range; ``[1, 2 * diameter]`` for targets without one."""
    if name in LENGTH_RANGES:
        return LENGTH_RANGES[name]
    return 1, max(1, 2 * diameter(target))


def make_sampler(kind: str, target: Dfa, cfg: SamplerConfig) -> Sampler:
    """Sampling distribution ``kind`` over the target's alphabet.

    The prefix-based sampler gets a teacher of its own so that its probes do not
    show up in the learner's query counts.
    """
    if kind == "uniform":
        return pseudo_uniform_sampler(target.alphabet, cfg.l_min, cfg.l_max)
    if kind == "prefix":
        return prefix_sampler(cfg, Teacher(target))
    raise ValueError(f"unknown sampler {kind!r}; expected one of {SAMPLERS}")


def learn_with(
    learner: str,
    teacher: Teacher,
    oracle,
    timeout: Optional[float] = None,
    label: str = "",
    seed=None,
):
    """Run one learner; returns ``(hypothesis or None, metrics)``.

    Timeouts are reported through ``metrics.outcome`` instead of raised.
    """
    if learner not in LEARNER_MODES:
        raise ValueError(f"unknown learner {learner!r}")
    try:
        if learner == "lstar":
            return lstar_learn(teacher, oracle, timeout, label, seed)
        return plstar_learn(teacher, oracle, LEARNER_MODES[learner], timeout, label, seed)
    except LearningTimeout as exc:
        return exc.hypothesis, exc.metrics


# Exact-oracle comparison

def run_exact_benchmark(
    specs: Iterable[TargetSpec],
    learners: Sequence[str] = tuple(LEARNER_MODES),
    timeout: Optional[float] = None,
    seed: int = 0,
) -> list[RunMetrics]:
    """One record per ``(target, learner)``, targets outermost."""
    records = []
    for spec in specs:
        target = build(spec)
        for name in learners:
            teacher = Teacher(target)
            _, m = learn_with(name, teacher, ExactEquivalence(teacher), timeout, spec.label, seed)
            records.append(m)
    return records


@dataclass(frozen=True)
class QueryGap:
    lstar_queries: int
    plstar_queries: int
    n_suffixes: int
    alphabet_size: int

    @property
    def gap(self) -> int:
        return self.lstar_queries - self.plstar_queries

    @property
    def bound(self) -> int:
        return self.n_suffixes * (1 + self.alphabet_size) - 1

    @property
    def holds(self) -> bool:
        return self.gap >= self.bound


def query_gap(target: Dfa) -> QueryGap:
    """Query counts of L* and standard PL* under the exact oracle, with the final suffix count."""
    lt, pt = Teacher(target), Teacher(target)
    lstar = LStarLearner(lt)
    plstar = PlStarLearner(pt, "standard")
    drive(lstar, ExactEquivalence(lt))
    drive(plstar, ExactEquivalence(pt))
    return QueryGap(
        lt.membership_queries,
        pt.prefix_queries,
        len(plstar.table.s_suff),
        len(target.alphabet),
    )


# PAC verification

@dataclass
class PacReport:
    target: str
    sampler: str
    epsilon: float
    delta: float
    runs: int
    distances: list[float] = field(default_factory=list)
    timeouts: int = 0

    @property
    def fraction_within_epsilon(self) -> float:
        return sum(d <= self.epsilon for d in self.distances) / self.runs

    def to_dict(self) -> dict:
        d = asdict(self)
        d["fraction_within_epsilon"] = self.fraction_within_epsilon
        return d


def verify_pac(
    target: Dfa,
    sampler: str,
    epsilon: float,
    delta: float,
    runs: int,
    n_distance: int,
    rng: random.Random,
    cfg: Optional[SamplerConfig] = None,
    learner: str = "plstar_optimised",
    timeout: Optional[float] = None,
    label: str = "",
) -> PacReport:
    """Learn ``runs`` times with the PAC oracle and estimate each hypothesis' distance.

    Distance is measured under the same distribution the oracle samples from.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    cfg = cfg or SamplerConfig()
    report = PacReport(label, sampler, epsilon, delta, runs)
    for _ in range(runs):
        run_seed = rng.getrandbits(64)
        run_rng = random.Random(run_seed)
        draw = make_sampler(sampler, target, cfg)
        teacher = Teacher(target)
        oracle = PacEquivalence(teacher, PacParams(epsilon, delta), draw, run_rng)
        hypothesis, metrics = learn_with(learner, teacher, oracle, timeout, label, run_seed)
        if hypothesis is None:
            hypothesis = Dfa.empty(target.alphabet)
        report.timeouts += metrics.outcome == "timeout"
        report.distances.append(estimate_distance(hypothesis, target, draw, n_distance, run_rng))
    return report


# F1 grid

@dataclass(frozen=True)
class GridCell:
    target: str
    sampler: str
    p: Optional[float]
    epsilon: float
    delta: float
    mean_f1: float
    runs: int
    timeouts: int


GRID_COLUMNS = ["target", "sampler", "p", "epsilon", "delta", "mean_f1", "runs", "timeouts"]


def f1_grid(
    target: Dfa,
    samplers: Sequence[tuple[str, Optional[float]]],
    epsilons: Sequence[float],
    deltas: Sequence[float],
    repeats: int,
    rng: random.Random,
    l_min: int,
    l_max: int,
    m: int = 200,
    n_f1: int = 1000,
    timeout: Optional[float] = None,
    learner: str = "plstar_optimised",
    label: str = "",
) -> list[GridCell]:
    """Mean F1 over ``repeats`` PAC runs for every ``(sampler, epsilon, delta)`` cell.

    ``samplers`` pairs a sampler kind with its ``p`` (ignored for ``uniform``).
    A timed-out run is scored on its last hypothesis, or 0 if it made none.
    """
    if not (samplers and epsilons and deltas) or repeats < 1:
        raise ValueError("grids must be non-empty and repeats positive")
    cells = []
    for kind, p in samplers:
        cfg = SamplerConfig(p=0.5 if p is None else p, m=m, l_min=l_min, l_max=l_max)
        for eps in epsilons:
            for dlt in deltas:
                scores = []
                timeouts = 0
                for _ in range(repeats):
                    run_seed = rng.getrandbits(64)
                    teacher = Teacher(target)
                    sampler = make_sampler(kind, target, cfg)
                    run_rng = random.Random(run_seed)
                    oracle = PacEquivalence(teacher, PacParams(eps, dlt), sampler, run_rng)
                    hypothesis, metrics = learn_with(learner, teacher, oracle, timeout, label, run_seed)
                    if metrics.outcome == "timeout":
                        timeouts += 1
                    if hypothesis is None:
                        scores.append(0.0)
                    else:
                        scores.append(estimate_f1(hypothesis, target, l_min, l_max, n_f1, run_rng).f1)
                cells.append(
                    GridCell(
                        label,
                        kind,
                        None if kind == "uniform" else cfg.p,
                        eps,
                        dlt,
                        sum(scores) / len(scores),
                        repeats,
                        timeouts,
                    )
                )
    return cells


def grid_csv(cells: Iterable[GridCell]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(GRID_COLUMNS)
    for c in cells:
        row = asdict(c)
        writer.writerow(["" if row[k] is None else row[k] for k in GRID_COLUMNS])
    return buf.getvalue()
