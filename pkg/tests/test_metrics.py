import csv
import io
import json

import pytest

from prefix_lstar.automata import Alphabet
from prefix_lstar.lstar import LStarTable
from prefix_lstar.metrics import (
    FIELD_NAMES,
    RunMetrics,
    dumps_csv,
    dumps_jsonl,
    read_jsonl,
    size_lstar,
    size_plstar,
    write_jsonl,
)
from prefix_lstar.plstar import PlStarTable

from conftest import BIN


def test_size_lstar_initial_tables():
    assert size_lstar(LStarTable(BIN, [""], [""], {})) == 5
    big = Alphabet(tuple(chr(c) for c in range(256)))
    assert size_lstar(LStarTable(big, [""], [""], {})) == 259


def test_size_lstar_counts_shared_rows_once():
    # "0" is both a prefix and an extension of "".
    tbl = LStarTable(BIN, ["", "0"], ["", "1"], {})
    assert size_lstar(tbl) == 2 + 2 + 5 * 2


def test_size_plstar():
    tbl = PlStarTable(Alphabet.of("ab"))
    tbl.s_pre = [""]
    tbl.s_stored = dict.fromkeys(["", "a", "b"])
    assert size_plstar(tbl) == 8
    tbl.s_stored = {"": None}
    tbl.s_dead_pref = {""}
    assert size_plstar(tbl) == 5


def record(**kw):
    base = dict(learner="lstar", target="dyck-2", mq_or_pq=10, eq=2, cell_comparisons=7,
                table_size=30, hypothesis_states=3, wall_time=0.25, seed=1)
    base.update(kw)
    return RunMetrics(**base)


def test_validation():
    with pytest.raises(ValueError):
        record(learner="rpni")
    with pytest.raises(ValueError):
        record(outcome="maybe")


def test_jsonl_drops_time_unless_asked():
    line = json.loads(dumps_jsonl([record()]))
    assert line["wall_time"] is None
    assert list(line) == FIELD_NAMES
    assert json.loads(dumps_jsonl([record()], record_time=True))["wall_time"] == 0.25


def test_csv_round_trip():
    text = dumps_csv([record(), record(learner="plstar_optimised", outcome="timeout")])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["learner"] for r in rows] == ["lstar", "plstar_optimised"]
    assert rows[0]["wall_time"] == ""
    assert rows[1]["outcome"] == "timeout"


def test_jsonl_file_round_trip(tmp_path):
    path = tmp_path / "m.jsonl"
    recs = [record(), record(eq=5)]
    write_jsonl(path, recs, record_time=True)
    assert read_jsonl(path) == recs
