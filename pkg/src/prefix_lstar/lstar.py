"""Angluin's L* with membership queries.

Scan orders are fixed so that the prefix-query learner in :mod:`plstar` can be
run side by side with this one and make the same choices:

* prefixes and suffixes are visited in insertion order, symbols in alphabet
  order;
* each refinement round first repairs closedness, then consistency;
* the consistency witness is the least ``(a, e)`` pair (symbol first, then
  suffix position) over all violating row pairs.

Cell comparisons are counted one per compared pair of cells. Comparing two
rows walks the suffixes in order and stops at the first mismatch.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .automata import Alphabet, Dfa
from .metrics import RunMetrics, size_lstar

Row = tuple

__all__ = [
    "LStarTable",
    "LStarLearner",
    "LearningTimeout",
    "Deadline",
    "lstar_is_closed",
    "lstar_is_consistent",
    "lstar_hypothesis",
    "lstar_learn",
]


class LearningTimeout(Exception):
    """Raised when a learning run exceeds its wall-clock budget.

    ``hypothesis`` is the last conjecture made before the budget ran out (None
    if there was none); ``metrics`` holds the counters at that point.
    """

    def __init__(self, hypothesis: Optional[Dfa], metrics: RunMetrics):
        super().__init__(f"learning timed out after {metrics.wall_time:.1f}s")
        self.hypothesis = hypothesis
        self.metrics = metrics


class _Expired(Exception):
    pass


class Deadline:
    def __init__(self, seconds: Optional[float] = None):
        self.start = time.monotonic()
        self.until = None if seconds is None else self.start + seconds

    def check(self) -> None:
        if self.until is not None and time.monotonic() > self.until:
            raise _Expired

    def elapsed(self) -> float:
        return time.monotonic() - self.start


# Row comparisons shared by both learners.

def compare_rows(r1: Row, r2: Row) -> tuple[int, int]:
    """Return ``(first mismatching index or -1, cells compared)``."""
    for i, (x, y) in enumerate(zip(r1, r2)):
        if x != y:
            return i, i + 1
    return -1, len(r1)


def scan_closedness(candidates: Iterable[tuple[object, Row]], reps: Sequence[Row]):
    """First candidate whose row matches none of ``reps``, plus cells compared."""
    count = 0
    memo: dict[tuple[Row, Row], tuple[int, int]] = {}
    for label, row in candidates:
        for rep in reps:
            key = (row, rep)
            res = memo.get(key)
            if res is None:
                res = memo[key] = compare_rows(row, rep)
            count += res[1]
            if res[0] < 0:
                break
        else:
            return label, count
    return None, count


def scan_consistency(
    states: Sequence[tuple[str, Row]],
    successor: Callable[[str, int], Row],
    n_symbols: int,
):
    """Least violating ``(symbol index, suffix index)`` over all equal-row pairs.

    Every pair of states is compared; pairs with equal rows then have their
    successor rows compared symbol by symbol.
    """
    count = 0
    best = None
    memo: dict[tuple[Row, Row], tuple[int, int]] = {}
    succ: dict[str, list[Row]] = {}

    def compare(r1, r2):
        res = memo.get((r1, r2))
        if res is None:
            res = memo[r1, r2] = compare_rows(r1, r2)
        return res

    def successors(s):
        rows = succ.get(s)
        if rows is None:
            rows = succ[s] = [successor(s, a) for a in range(n_symbols)]
        return rows

    for i in range(len(states)):
        s1, r1 = states[i]
        for j in range(i + 1, len(states)):
            s2, r2 = states[j]
            mismatch, n = compare(r1, r2)
            count += n
            if mismatch >= 0:
                continue
            for a, (x, y) in enumerate(zip(successors(s1), successors(s2))):
                mismatch, n = compare(x, y)
                count += n
                if mismatch >= 0 and (best is None or (a, mismatch) < best):
                    best = (a, mismatch)
    return best, count


def hypothesis_from_rows(
    alphabet: Alphabet,
    states: Sequence[tuple[str, Row]],
    successor: Callable[[str, int], Row],
) -> Dfa:
    """DFA whose states are the distinct rows, numbered by first occurrence.

    The first suffix must be the empty string so that a row's first cell says
    whether the state accepts.
    """
    ids: dict[Row, int] = {}
    reps: list[tuple[str, Row]] = []
    for s, row in states:
        if row not in ids:
            ids[row] = len(reps)
            reps.append((s, row))
    k = len(alphabet)
    delta = np.zeros((len(reps), k), dtype=np.int64)
    for q, (s, _) in enumerate(reps):
        for a in range(k):
            target = successor(s, a)
            if target not in ids:
                raise ValueError("table is not closed")
            delta[q, a] = ids[target]
    accepting = [q for q, (_, row) in enumerate(reps) if row[0] == 1]
    start = ids[states[0][1]]
    return Dfa(alphabet, delta, start, accepting)


@dataclass
class LStarTable:
    """Observation table ``(S_pre, S_suff, T)``; ``t`` maps each filled string to 0/1."""

    alphabet: Alphabet
    s_pre: list[str]
    s_suff: list[str]
    t: dict[str, int]
    comparisons: int = 0
    _pre: set = field(default_factory=set, repr=False, compare=False)
    _suff: set = field(default_factory=set, repr=False, compare=False)

    def __post_init__(self):
        self._pre = set(self.s_pre)
        self._suff = set(self.s_suff)

    def has_prefix(self, s: str) -> bool:
        return s in self._pre

    def has_suffix(self, e: str) -> bool:
        return e in self._suff

    def row(self, s: str) -> Row:
        t = self.t
        return tuple(t[s + e] for e in self.s_suff)

    def row_labels(self) -> list[str]:
        """``S_pre`` followed by the new strings of ``S_pre . A``, in scan order."""
        seen = set(self.s_pre)
        out = list(self.s_pre)
        for s in self.s_pre:
            for a in self.alphabet.symbols:
                if s + a not in seen:
                    seen.add(s + a)
                    out.append(s + a)
        return out

    def rows(self) -> dict[str, Row]:
        return {u: self.row(u) for u in self.row_labels()}

    def cells(self) -> dict[tuple[str, str], int]:
        return {(u, e): self.t[u + e] for u in self.row_labels() for e in self.s_suff}

    def same_as(self, other: "LStarTable") -> bool:
        return (
            self.s_pre == other.s_pre
            and self.s_suff == other.s_suff
            and self.cells() == other.cells()
        )


def lstar_is_closed(tbl: LStarTable):
    """First ``(s, a)`` whose row ``row(sa)`` is missing from ``S_pre``'s rows, else None."""
    rows = tbl.rows()
    reps = [rows[s] for s in tbl.s_pre]
    symbols = tbl.alphabet.symbols
    candidates = (((s, a), rows[s + a]) for s in tbl.s_pre for a in symbols)
    witness, count = scan_closedness(candidates, reps)
    tbl.comparisons += count
    return witness


def lstar_is_consistent(tbl: LStarTable) -> Optional[str]:
    """The suffix ``a.e`` exposing an inconsistency, or None."""
    symbols = tbl.alphabet.symbols
    rows = tbl.rows()
    states = [(s, rows[s]) for s in tbl.s_pre]
    best, count = scan_consistency(states, lambda s, a: rows[s + symbols[a]], len(symbols))
    tbl.comparisons += count
    if best is None:
        return None
    a, e = best
    return symbols[a] + tbl.s_suff[e]


def lstar_hypothesis(tbl: LStarTable) -> Dfa:
    symbols = tbl.alphabet.symbols
    rows = tbl.rows()
    states = [(s, rows[s]) for s in tbl.s_pre]
    return hypothesis_from_rows(tbl.alphabet, states, lambda s, a: rows[s + symbols[a]])


class LStarLearner:
    """Step-wise L*; :func:`lstar_learn` drives it to completion."""

    name = "lstar"

    def __init__(self, teacher, deadline: Optional[Deadline] = None):
        self.teacher = teacher
        self.deadline = deadline or Deadline()
        self.table = LStarTable(teacher.alphabet, [], [""], {})
        self.last_hypothesis: Optional[Dfa] = None
        self.add_prefix("")

    @property
    def queries(self) -> int:
        return self.teacher.membership_queries

    def _fill(self, w: str) -> None:
        if w not in self.table.t:
            self.table.t[w] = int(self.teacher.membership_query(w))

    def add_prefix(self, s: str) -> bool:
        tbl = self.table
        if tbl.has_prefix(s):
            return False
        tbl.s_pre.append(s)
        tbl._pre.add(s)
        for u in [s] + [s + a for a in tbl.alphabet.symbols]:
            self.deadline.check()
            for e in tbl.s_suff:
                self._fill(u + e)
        return True

    def add_suffix(self, e: str) -> bool:
        tbl = self.table
        if tbl.has_suffix(e):
            return False
        tbl.s_suff.append(e)
        tbl._suff.add(e)
        for u in tbl.row_labels():
            self.deadline.check()
            self._fill(u + e)
        return True

    def refine(self) -> bool:
        """One round: repair closedness, then consistency. False once both hold."""
        changed = False
        witness = lstar_is_closed(self.table)
        if witness is not None:
            s, a = witness
            changed = self.add_prefix(s + a)
        suffix = lstar_is_consistent(self.table)
        if suffix is not None:
            changed = self.add_suffix(suffix) or changed
        return changed

    def hypothesis(self) -> Dfa:
        h = lstar_hypothesis(self.table)
        self.last_hypothesis = h
        return h

    def add_counterexample(self, w: str) -> None:
        added = [self.add_prefix(w[:i]) for i in range(len(w) + 1)]
        if not any(added):
            raise ValueError(f"counterexample {w!r} adds nothing to the table")

    def table_size(self) -> int:
        return size_lstar(self.table)

    def metrics(self, target: str, outcome: str, elapsed: float, seed=None) -> RunMetrics:
        h = self.last_hypothesis
        return RunMetrics(
            learner=self.name,
            target=target,
            mq_or_pq=self.queries,
            eq=self.teacher.equivalence_queries,
            cell_comparisons=self.table.comparisons,
            table_size=self.table_size(),
            hypothesis_states=0 if h is None else h.n_states,
            wall_time=elapsed,
            seed=seed,
            outcome=outcome,
        )


def drive(learner, eq_oracle, target: str = "", seed=None) -> tuple[Dfa, RunMetrics]:
    """Refine/conjecture loop shared by every learner.

    Raises :class:`LearningTimeout` once the learner's deadline passes.
    """
    deadline = learner.deadline
    outcome = "exact_success" if getattr(eq_oracle, "exact", False) else "pac_success"
    try:
        while True:
            while learner.refine():
                deadline.check()
            h = learner.hypothesis()
            deadline.check()
            cex = eq_oracle(h)
            if cex is None:
                return h, learner.metrics(target, outcome, deadline.elapsed(), seed)
            learner.add_counterexample(cex)
    except _Expired:
        m = learner.metrics(target, "timeout", deadline.elapsed(), seed)
        raise LearningTimeout(learner.last_hypothesis, m) from None


def lstar_learn(
    teacher,
    eq_oracle,
    timeout: Optional[float] = None,
    target: str = "",
    seed=None,
) -> tuple[Dfa, RunMetrics]:
    deadline = Deadline(timeout)
    learner = LStarLearner(teacher)
    learner.deadline = deadline
    return drive(learner, eq_oracle, target, seed)
