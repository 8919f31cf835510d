"""Per-run counters, table-size formulas and their on-disk formats."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional

LEARNERS = ("lstar", "plstar_standard", "plstar_optimised")
OUTCOMES = ("exact_success", "pac_success", "timeout")


@dataclass
class RunMetrics:
    learner: str
    target: str
    mq_or_pq: int = 0
    eq: int = 0
    cell_comparisons: int = 0
    table_size: int = 0
    hypothesis_states: int = 0
    wall_time: Optional[float] = None
    seed: Optional[int] = None
    outcome: str = "exact_success"

    def __post_init__(self):
        if self.learner not in LEARNERS:
            raise ValueError(f"unknown learner {self.learner!r}")
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")

    def to_dict(self) -> dict:
        return asdict(self)


FIELD_NAMES = [f.name for f in fields(RunMetrics)]


def size_lstar(tbl) -> int:
    """``|S_pre| + |S_suff| + |S_pre u S_pre.A| * |S_suff|`` for an L* table."""
    rows = set(tbl.s_pre)
    rows.update(s + a for s in tbl.s_pre for a in tbl.alphabet.symbols)
    return len(tbl.s_pre) + len(tbl.s_suff) + len(rows) * len(tbl.s_suff)


def size_plstar(tbl) -> int:
    """``|S_pre| + |S_suff| + |S_stored| + |S_dead| + |S_stored| * |S_suff|``."""
    n_stored = len(tbl.s_stored)
    return (
        len(tbl.s_pre)
        + len(tbl.s_suff)
        + n_stored
        + len(tbl.s_dead_pref)
        + n_stored * len(tbl.s_suff)
    )


def _row(m: RunMetrics, record_time: bool) -> dict:
    d = m.to_dict()
    if not record_time:
        # Timing varies between otherwise identical runs.
        d["wall_time"] = None
    return d


def dumps_jsonl(records: Iterable[RunMetrics], record_time: bool = False) -> str:
    return "".join(json.dumps(_row(m, record_time), sort_keys=False) + "\n" for m in records)


def dumps_csv(records: Iterable[RunMetrics], record_time: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELD_NAMES, lineterminator="\n")
    writer.writeheader()
    for m in records:
        row = _row(m, record_time)
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


def write_jsonl(path, records: Iterable[RunMetrics], record_time: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dumps_jsonl(records, record_time))


def write_csv(path, records: Iterable[RunMetrics], record_time: bool = False) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(dumps_csv(records, record_time))


def read_jsonl(path) -> list[RunMetrics]:
    with open(path, encoding="utf-8") as fh:
        return [RunMetrics(**json.loads(line)) for line in fh if line.strip()]
