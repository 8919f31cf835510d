"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line to the terminal
(bypassing output capture) before asserting.
"""

import filecmp
import itertools
import random
import time

import mpmath
import pytest

from prefix_lstar.automata import Alphabet, Dfa, PrefixResponse, classify, coaccessible, minimize, shortest_counterexample
from prefix_lstar.cli import main
from prefix_lstar.evaluation import default_length_range, f1_grid, query_gap, verify_pac
from prefix_lstar.lstar import LStarLearner, lstar_is_closed, lstar_is_consistent
from prefix_lstar.oracle import ExactEquivalence, PacParams, SamplerConfig, Teacher, pac_calls
from prefix_lstar.plstar import PlStarLearner, pl_is_closed, pl_is_consistent, to_lstar_table
from prefix_lstar.evaluation import learn_with
from prefix_lstar.targets import build, desk_spec

from conftest import all_small_dfas

SPARSE = ["dyck", "arith", "json", "date"]
DESK_SPECS = [
    desk_spec("dyck", depth=1),
    desk_spec("dyck", depth=2),
    desk_spec("arith", depth=1),
    desk_spec("arith", depth=2),
    desk_spec("json", depth=1),
    desk_spec("date"),
]
LEARNERS = ("lstar", "plstar_standard", "plstar_optimised")


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


def test_c1_exact_learning_correctness(verdict):
    start = time.monotonic()
    bad = []
    for spec in DESK_SPECS:
        target = build(spec)
        n_min = minimize(target).n_states
        for name in LEARNERS:
            t = Teacher(target)
            h, m = learn_with(name, t, ExactEquivalence(t), label=spec.label)
            if h is None or shortest_counterexample(target, h) is not None or h.n_states != n_min:
                bad.append((spec.label, name))
    elapsed = time.monotonic() - start
    ok = not bad and elapsed < 60
    assert verdict(1, ok, f"mismatches={bad} runtime={elapsed:.1f}s (< 60s)")


def lockstep(target):
    """Step L* and standard PL* together; return (rounds, first divergence or None)."""
    lt, pt = Teacher(target), Teacher(target)
    lstar, plstar = LStarLearner(lt), PlStarLearner(pt, "standard")
    lo, po = ExactEquivalence(lt), ExactEquivalence(pt)
    rounds = 0
    while True:
        rounds += 1
        if not lstar.table.same_as(to_lstar_table(plstar.table)):
            return rounds, "tables differ"
        a, b = lstar.refine(), plstar.refine()
        if a != b:
            return rounds, "refine outcome differs"
        if not lstar.table.same_as(to_lstar_table(plstar.table)):
            return rounds, "tables differ after refine"
        if a:
            continue
        ca, cb = lo(lstar.hypothesis()), po(plstar.hypothesis())
        if ca != cb:
            return rounds, f"counterexamples {ca!r} vs {cb!r}"
        if lt.equivalence_queries != pt.equivalence_queries:
            return rounds, "equivalence counts differ"
        if ca is None:
            return rounds, None
        lstar.add_counterexample(ca)
        plstar.add_counterexample(cb)


def test_c2_lockstep(verdict):
    results = {}
    for spec in DESK_SPECS + [desk_spec("even_length")]:
        results[spec.label] = lockstep(build(spec))
    bad = {k: v for k, v in results.items() if v[1] is not None}
    rounds = {k: v[0] for k, v in results.items()}
    assert verdict(2, not bad, f"rounds={rounds} divergences={bad}")


def test_c3_query_gap_bound(verdict):
    gaps = {spec.label: query_gap(build(spec)) for spec in DESK_SPECS}
    big = Alphabet(tuple(chr(c) for c in range(256)))
    empty = query_gap(Dfa.empty(big))
    exact = (empty.lstar_queries, empty.plstar_queries, empty.gap, empty.bound) == (257, 1, 256, 256)
    ok = all(g.holds for g in gaps.values()) and exact
    detail = {k: (g.gap, g.bound) for k, g in gaps.items()}
    assert verdict(3, ok, f"(gap, bound)={detail} empty-256=({empty.lstar_queries}, {empty.plstar_queries})")


def test_c4_dense_degeneration(verdict):
    target = build(desk_spec("even_length"))
    g = query_gap(target)
    assert verdict(4, g.lstar_queries == g.plstar_queries, f"mq={g.lstar_queries} pq={g.plstar_queries}")


def _snapshot_checks(tbl):
    saved = tbl.comparisons
    pl = (pl_is_closed(tbl) is None, pl_is_consistent(tbl) is None)
    tbl.comparisons = saved
    lt = to_lstar_table(tbl)
    return pl, (lstar_is_closed(lt) is None, lstar_is_consistent(lt) is None)


def test_c5_check_agreement(verdict):
    rng = random.Random(2024)
    ab = Alphabet.of("ab")
    states = agree = 0
    not_closed = not_consistent = 0
    targets = 0
    while states < 400:
        targets += 1
        delta = [[rng.randrange(3) for _ in range(2)] for _ in range(3)]
        accepting = [q for q in range(3) if rng.random() < 0.4]
        target = Dfa(ab, delta, 0, accepting)
        for mode in ("standard", "optimised"):
            t = Teacher(target)
            learner = PlStarLearner(t, mode)
            oracle = ExactEquivalence(t)
            while True:
                pl, ls = _snapshot_checks(learner.table)
                states += 1
                agree += pl == ls
                not_closed += not ls[0]
                not_consistent += not ls[1]
                if learner.refine():
                    continue
                cex = oracle(learner.hypothesis())
                if cex is None:
                    break
                learner.add_counterexample(cex)
    ok = states >= 200 and agree == states
    detail = (f"{agree}/{states} table states agree over {targets} targets "
              f"(not closed {not_closed}, not consistent {not_consistent})")
    assert verdict(5, ok, detail)


def test_c6_pac_guarantee(verdict):
    start = time.monotonic()
    fractions = {}
    for name in SPARSE:
        spec = desk_spec(name)
        target = build(spec)
        lo, hi = default_length_range(name, target)
        cfg = SamplerConfig(p=0.5, m=200, l_min=lo, l_max=hi)
        for sampler in ("uniform", "prefix"):
            rep = verify_pac(target, sampler, 0.05, 0.05, 30, 1000, random.Random(0), cfg, label=spec.label)
            fractions[spec.label, sampler] = rep.fraction_within_epsilon
    elapsed = time.monotonic() - start
    ok = all(f >= 0.95 for f in fractions.values()) and elapsed < 600
    assert verdict(6, ok, f"fractions={fractions} runtime={elapsed:.0f}s (< 600s)")


def test_c7_f1_trends(verdict):
    uniform, prefix = {}, {}
    for name in SPARSE:
        spec = desk_spec(name)
        target = build(spec)
        lo, hi = default_length_range(name, target)
        cells = f1_grid(
            target, [("uniform", None), ("prefix", 1.0)], [0.05], [0.05], 5,
            random.Random(0), lo, hi, label=spec.label,
        )
        uniform[spec.label] = cells[0].mean_f1
        prefix[spec.label] = cells[1].mean_f1
    ok = all(v <= 0.05 for v in uniform.values()) and all(v >= 0.9 for v in prefix.values())
    assert verdict(7, ok, f"uniform mean F1={uniform} prefix p=1 mean F1={prefix}")


def _brute_live_states(dfa, max_len=8):
    """States from which some extension of length <= max_len is accepted, by enumeration."""
    delta = dfa.delta.tolist()
    accepting = dfa.accepting
    out = set()
    for q in range(dfa.n_states):
        frontier = [q]
        found = q in accepting
        for _ in range(max_len):
            if found:
                break
            frontier = [r for p in frontier for r in delta[p]]
            found = any(r in accepting for r in frontier)
        if found:
            out.add(q)
    return out


def test_c8_oracle_brute_force(verdict):
    dfas = all_small_dfas(3, 2, 2000)
    probes = list(itertools.chain.from_iterable(itertools.product("ab", repeat=n) for n in range(5)))
    probes = ["".join(p) for p in probes]
    mismatches = 0
    for d in dfas:
        live = coaccessible(d)
        brute_live = _brute_live_states(d)
        teacher = Teacher(d)
        for w in probes:
            q = d.state_after(w)
            if q in d.accepting:
                expected = PrefixResponse.MEMBER
            elif q in brute_live:
                expected = PrefixResponse.LIVE_PREF
            else:
                expected = PrefixResponse.DEAD_PREF
            got = classify(d, live, w)
            mismatches += got is not expected or teacher.prefix_query(w) is not expected
    ok = mismatches == 0 and len(dfas) == 2000
    assert verdict(8, ok, f"{len(dfas)} automata x {len(probes)} strings, mismatches={mismatches}")


def test_c9_pac_calls_formula(verdict):
    triples = [
        (eps, delta, i)
        for eps in (0.01, 0.05, 0.1, 0.25, 0.5)
        for delta in (0.01, 0.05, 0.1, 0.3, 1.0)
        for i in (1, 13)
    ]
    assert len(triples) == 50
    bad = []
    with mpmath.workdps(80):
        for eps, delta, i in triples:
            ref = mpmath.ceil((mpmath.log(1 / mpmath.mpf(str(delta))) + i * mpmath.log(2)) / mpmath.mpf(str(eps)))
            if pac_calls(PacParams(eps, delta, i)) != int(ref):
                bad.append((eps, delta, i))
    assert verdict(9, not bad, f"{50 - len(bad)}/50 triples agree")


def test_c10_cli_determinism(verdict, tmp_path, capsys):
    commands = {
        "learn-pac": ["learn", "--target", "dyck", "--oracle", "pac", "--sampler", "prefix",
                      "--seed", "7", "--out", "{out}", "--out-csv", "{csv}"],
        "learn-uniform": ["learn", "--target", "date", "--learner", "lstar", "--oracle", "pac",
                          "--sampler", "uniform", "--seed", "7", "--out", "{out}", "--out-csv", "{csv}"],
        "bench": ["bench", "--targets", "dyck,date,even_length", "--seed", "7",
                  "--out", "{out}", "--out-csv", "{csv}"],
        "pac-verify": ["pac-verify", "--target", "dyck", "--depth", "1", "--runs", "3",
                       "--n-distance", "100", "--seed", "7", "--out", "{out}"],
        "f1-grid": ["f1-grid", "--target", "dyck", "--depth", "1", "--repeats", "2",
                    "--n-f1", "100", "--seed", "7", "--out", "{out}", "--out-csv", "{csv}"],
    }
    differing = []
    for label, argv in commands.items():
        outputs = []
        for attempt in range(2):
            out, csv_path = tmp_path / f"{label}-{attempt}.out", tmp_path / f"{label}-{attempt}.csv"
            args = [a.format(out=out, csv=csv_path) for a in argv]
            assert main(args) == 0
            outputs.append((out, csv_path))
        (a, ac), (b, bc) = outputs
        same = filecmp.cmp(a, b, shallow=False)
        if ac.exists() or bc.exists():
            same = same and filecmp.cmp(ac, bc, shallow=False)
        if not same:
            differing.append(label)
    assert verdict(10, not differing, f"{len(commands)} commands run twice, differing={differing}")
