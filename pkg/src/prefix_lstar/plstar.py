"""PL*: L* driven by prefix queries.

The table keeps explicit rows only for the strings in ``s_stored``. Any other
string of ``S_pre`` or ``S_pre . A`` extends a known minimal dead prefix, so
its row is all zeros and need not be stored. Two update policies decide which
strings get stored when a prefix enters ``S_pre``:

``standard``
    at most one dead string is stored. If a dead string of ``S_pre`` shows up
    while the stored dead string lies outside ``S_pre``, the two are swapped.
``optimised``
    the first dead one-symbol extension found is promoted into ``S_pre``
    straight away, so the swap never happens.

Scan orders and the cell-comparison rule are those of :mod:`lstar`.
"""

from __future__ import annotations

from typing import Callable, Optional

from .automata import Alphabet, Dfa, PrefixResponse
from .lstar import (
    Deadline,
    LStarTable,
    Row,
    drive,
    hypothesis_from_rows,
    scan_closedness,
    scan_consistency,
)
from .metrics import RunMetrics, size_plstar

MODES = ("standard", "optimised")

DEAD = PrefixResponse.DEAD_PREF
LIVE = PrefixResponse.LIVE_PREF
MEMBER = PrefixResponse.MEMBER


class TableInvariantError(RuntimeError):
    """A PL* table reached a state its update rules should make impossible."""


class TableNotReady(ValueError):
    """Hypothesis requested from a table that is not closed and consistent."""


def _noop() -> None:
    pass


class PlStarTable:
    """``(S_pre, S_suff, S_stored, S_dead_pref, T)`` plus the update mode.

    ``t`` is keyed by ``(stored string, suffix)``. ``stored_dead`` lists the
    stored strings known to be dead prefixes.
    """

    def __init__(self, alphabet: Alphabet, mode: str = "standard"):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.alphabet = alphabet
        self.mode = mode
        self.s_pre: list[str] = []
        self.s_suff: list[str] = [""]
        self.s_stored: dict[str, None] = {}
        self.s_dead_pref: set[str] = set()
        self.t: dict[tuple[str, str], int] = {}
        self.stored_dead: list[str] = []
        self.comparisons = 0
        self._pre: set[str] = set()
        self._suff: set[str] = {""}
        # Proper prefixes of the elements of s_dead_pref.
        self._dead_stems: set[str] = set()

    def has_prefix(self, s: str) -> bool:
        return s in self._pre

    def is_stored(self, s: str) -> bool:
        return s in self.s_stored

    def extends_dead(self, x: str) -> bool:
        dead = self.s_dead_pref
        if not dead:
            return False
        return any(x[:i] in dead for i in range(len(x) + 1))

    def lookup(self, x: str) -> Optional[int]:
        """A stored cell holding ``x`` under any split ``x = s e``, else None."""
        t = self.t
        for i in range(len(x) + 1):
            v = t.get((x[:i], x[i:]))
            if v is not None:
                return v
        return None

    def row(self, s: str) -> Row:
        t = self.t
        return tuple(t[s, e] for e in self.s_suff)

    def dead_row(self) -> Row:
        if not self.stored_dead:
            raise TableInvariantError("an unstored row exists but no dead string is stored")
        return self.row(self.stored_dead[0])

    def successor_row(self, s: str, a: str) -> Row:
        """``r_{sa}``: the stored row, or the stored dead row when ``sa`` is not stored."""
        sa = s + a
        return self.row(sa) if sa in self.s_stored else self.dead_row()

    def add_dead(self, x: str) -> None:
        """Insert ``x`` into ``s_dead_pref`` keeping no element a proper prefix of another."""
        if self.extends_dead(x):
            return
        if x in self._dead_stems:
            self.s_dead_pref = {d for d in self.s_dead_pref if not d.startswith(x)}
            self._dead_stems = {d[:i] for d in self.s_dead_pref for i in range(len(d))}
        self.s_dead_pref.add(x)
        self._dead_stems.update(x[:i] for i in range(len(x)))


def asked_prefix_query(tbl: PlStarTable, teacher, x: str) -> PrefixResponse:
    response = teacher.prefix_query(x)
    if response is DEAD:
        tbl.add_dead(x)
    return response


def resolve_membership(tbl: PlStarTable, teacher, x: str) -> int:
    cell = tbl.lookup(x)
    if cell is not None:
        return cell
    if tbl.extends_dead(x):
        return 0
    return int(asked_prefix_query(tbl, teacher, x) is MEMBER)


def classify_cached(tbl: PlStarTable, teacher, x: str) -> PrefixResponse:
    if tbl.extends_dead(x):
        return DEAD
    cell = tbl.lookup(x)
    if cell is not None:
        # Not an extension of a dead prefix, so a 0 cell is live.
        return MEMBER if cell else LIVE
    return asked_prefix_query(tbl, teacher, x)


def _store(tbl: PlStarTable, teacher, x: str, response: PrefixResponse) -> None:
    if x in tbl.s_stored:
        return
    tbl.s_stored[x] = None
    # The classification already answers the empty-suffix cell.
    tbl.t[x, ""] = int(response is MEMBER)
    for e in tbl.s_suff[1:]:
        tbl.t[x, e] = resolve_membership(tbl, teacher, x + e)
    if response is DEAD:
        tbl.stored_dead.append(x)


def _unstore(tbl: PlStarTable, x: str) -> None:
    del tbl.s_stored[x]
    for e in tbl.s_suff:
        del tbl.t[x, e]
    tbl.stored_dead.remove(x)


def update_after_spre_add(tbl: PlStarTable, teacher, x: str, check: Callable[[], None] = _noop) -> None:
    """Decide whether ``x`` (a new prefix ``s`` or one of its ``s a``) gets a stored row."""
    check()
    response = classify_cached(tbl, teacher, x)
    if response is not DEAD:
        _store(tbl, teacher, x, response)
        return
    in_pre = x in tbl._pre
    dead_in_pre = [d for d in tbl.stored_dead if d in tbl._pre]
    if not tbl.stored_dead:
        if in_pre or tbl.mode == "standard":
            _store(tbl, teacher, x, response)
        else:
            # Promote the first dead extension into S_pre, then visit its own extensions.
            tbl.s_pre.append(x)
            tbl._pre.add(x)
            _store(tbl, teacher, x, response)
            for a in tbl.alphabet.symbols:
                update_after_spre_add(tbl, teacher, x + a, check)
    elif not in_pre or dead_in_pre:
        pass
    elif tbl.mode == "standard":
        for d in list(tbl.stored_dead):
            _unstore(tbl, d)
        _store(tbl, teacher, x, response)
    else:
        raise TableInvariantError(f"stored dead string outside S_pre while adding {x!r}")


def add_prefix(tbl: PlStarTable, teacher, s: str, check: Callable[[], None] = _noop) -> bool:
    if s in tbl._pre:
        return False
    tbl.s_pre.append(s)
    tbl._pre.add(s)
    update_after_spre_add(tbl, teacher, s, check)
    for a in tbl.alphabet.symbols:
        update_after_spre_add(tbl, teacher, s + a, check)
    return True


def add_suffix(tbl: PlStarTable, teacher, e: str, check: Callable[[], None] = _noop) -> bool:
    if e in tbl._suff:
        return False
    tbl.s_suff.append(e)
    tbl._suff.add(e)
    for u in list(tbl.s_stored):
        check()
        tbl.t[u, e] = resolve_membership(tbl, teacher, u + e)
    return True


def add_counterexample(tbl: PlStarTable, teacher, w: str, check: Callable[[], None] = _noop) -> bool:
    """Add every prefix of ``w``, shortest first. True if anything was new."""
    added = False
    for i in range(len(w) + 1):
        added = add_prefix(tbl, teacher, w[:i], check) or added
    return added


def _states(tbl: PlStarTable) -> list[tuple[str, Row]]:
    return [(s, tbl.row(s)) for s in tbl.s_pre if s in tbl.s_stored]


def pl_is_closed(tbl: PlStarTable):
    states = _states(tbl)
    reps = [row for _, row in states]
    symbols = tbl.alphabet.symbols
    candidates = (
        ((s, a), tbl.row(s + a))
        for s in tbl.s_pre
        for a in symbols
        if s + a in tbl.s_stored
    )
    witness, count = scan_closedness(candidates, reps)
    tbl.comparisons += count
    return witness


def pl_is_consistent(tbl: PlStarTable) -> Optional[str]:
    symbols = tbl.alphabet.symbols
    states = _states(tbl)
    best, count = scan_consistency(
        states, lambda s, a: tbl.successor_row(s, symbols[a]), len(symbols)
    )
    tbl.comparisons += count
    if best is None:
        return None
    a, e = best
    return symbols[a] + tbl.s_suff[e]


def build_hypothesis(tbl: PlStarTable, check: bool = True) -> Dfa:
    """Hypothesis over the distinct rows of ``S_pre`` that are stored.

    With ``check`` the table is first verified to be closed and consistent;
    the verification does not touch the comparison counter.
    """
    if check:
        saved = tbl.comparisons
        ready = pl_is_closed(tbl) is None and pl_is_consistent(tbl) is None
        tbl.comparisons = saved
        if not ready:
            raise TableNotReady("table is not closed and consistent")
    symbols = tbl.alphabet.symbols
    return hypothesis_from_rows(
        tbl.alphabet, _states(tbl), lambda s, a: tbl.successor_row(s, symbols[a])
    )


def to_lstar_table(tbl: PlStarTable) -> LStarTable:
    """The L* table with the same prefixes and suffixes; unstored rows read as zeros."""
    out = LStarTable(tbl.alphabet, list(tbl.s_pre), list(tbl.s_suff), {})
    for u in out.row_labels():
        stored = u in tbl.s_stored
        for e in tbl.s_suff:
            v = tbl.t[u, e] if stored else 0
            prev = out.t.setdefault(u + e, v)
            if prev != v:
                raise TableInvariantError(f"cells disagree on {u + e!r}")
    return out


def check_invariants(tbl: PlStarTable) -> None:
    """Raise :class:`TableInvariantError` if any structural invariant fails."""
    if "" not in tbl._pre or tbl.s_suff[0] != "":
        raise TableInvariantError("empty string missing from S_pre or S_suff")
    for s in tbl.s_pre:
        for u in [s] + [s + a for a in tbl.alphabet.symbols]:
            if u not in tbl.s_stored and not tbl.extends_dead(u):
                raise TableInvariantError(f"{u!r} is neither stored nor a known dead extension")
    for d in tbl.s_dead_pref:
        if any(d[:i] in tbl.s_dead_pref for i in range(len(d))):
            raise TableInvariantError(f"dead prefix {d!r} is not minimal")
    expected = {(u, e) for u in tbl.s_stored for e in tbl.s_suff}
    if set(tbl.t) != expected:
        raise TableInvariantError("T is not defined on exactly S_stored x S_suff")
    if len(tbl.stored_dead) > 1:
        raise TableInvariantError("more than one dead string is stored")
    if tbl.mode == "optimised" and any(d not in tbl._pre for d in tbl.stored_dead):
        raise TableInvariantError("optimised mode stored a dead string outside S_pre")


class PlStarLearner:
    """Step-wise PL*, with the same stepping interface as :class:`LStarLearner`."""

    def __init__(self, teacher, mode: str = "standard", deadline: Optional[Deadline] = None):
        self.teacher = teacher
        self.deadline = deadline or Deadline()
        self.table = PlStarTable(teacher.alphabet, mode)
        self.name = "plstar_standard" if mode == "standard" else "plstar_optimised"
        self.last_hypothesis: Optional[Dfa] = None
        self.add_prefix("")

    @property
    def queries(self) -> int:
        return self.teacher.prefix_queries

    def _check(self) -> None:
        self.deadline.check()

    def add_prefix(self, s: str) -> bool:
        return add_prefix(self.table, self.teacher, s, self._check)

    def add_suffix(self, e: str) -> bool:
        return add_suffix(self.table, self.teacher, e, self._check)

    def refine(self) -> bool:
        changed = False
        witness = pl_is_closed(self.table)
        if witness is not None:
            s, a = witness
            changed = self.add_prefix(s + a)
        suffix = pl_is_consistent(self.table)
        if suffix is not None:
            changed = self.add_suffix(suffix) or changed
        return changed

    def hypothesis(self) -> Dfa:
        h = build_hypothesis(self.table, check=False)
        self.last_hypothesis = h
        return h

    def add_counterexample(self, w: str) -> None:
        if not add_counterexample(self.table, self.teacher, w, self._check):
            raise ValueError(f"counterexample {w!r} adds nothing to the table")

    def table_size(self) -> int:
        return size_plstar(self.table)

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


def plstar_learn(
    teacher,
    eq_oracle,
    mode: str = "standard",
    timeout: Optional[float] = None,
    target: str = "",
    seed=None,
) -> tuple[Dfa, RunMetrics]:
    deadline = Deadline(timeout)
    learner = PlStarLearner(teacher, mode)
    learner.deadline = deadline
    return drive(learner, eq_oracle, target, seed)
