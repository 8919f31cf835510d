"""L* against PL* with an exact equivalence oracle.

Both learners reach the same minimal automaton. PL* never asks about
extensions of a known dead prefix, which is where its savings come from.
"""

from prefix_lstar.automata import Alphabet, Dfa, minimize
from prefix_lstar.evaluation import query_gap, run_exact_benchmark
from prefix_lstar.lstar import LStarLearner
from prefix_lstar.oracle import ExactEquivalence, Teacher
from prefix_lstar.plstar import PlStarLearner, to_lstar_table
from prefix_lstar.targets import NAMES, build, desk_spec

print(f"{'target':12s} {'learner':18s} {'queries':>8s} {'eq':>4s} {'compares':>9s} {'size':>6s} {'states':>6s}")
for m in run_exact_benchmark([desk_spec(n) for n in NAMES]):
    print(f"{m.target:12s} {m.learner:18s} {m.mq_or_pq:8d} {m.eq:4d} {m.cell_comparisons:9d} "
          f"{m.table_size:6d} {m.hypothesis_states:6d}")

# The saving is at least |S_suff| * (1 + |A|) - 1 on languages with dead prefixes.
for name in ("dyck", "date"):
    g = query_gap(build(desk_spec(name)))
    print(f"{name}: gap {g.gap} >= bound {g.bound}: {g.holds}")

empty = query_gap(Dfa.empty(Alphabet(tuple(chr(c) for c in range(256)))))
print(f"empty language over 256 symbols: L* {empty.lstar_queries} queries, PL* {empty.plstar_queries}")

# Stepping both learners by hand shows their tables coincide round by round.
target = build(desk_spec("dyck"))
a, b = Teacher(target), Teacher(target)
lstar, plstar = LStarLearner(a), PlStarLearner(b)
rounds = 0
while True:
    assert lstar.table.same_as(to_lstar_table(plstar.table))
    if lstar.refine() | plstar.refine():
        rounds += 1
        continue
    cex = ExactEquivalence(a)(lstar.hypothesis())
    assert cex == ExactEquivalence(b)(plstar.hypothesis())
    if cex is None:
        break
    lstar.add_counterexample(cex)
    plstar.add_counterexample(cex)
    rounds += 1
print(f"dyck-2: tables agreed for {rounds} steps; {plstar.last_hypothesis.n_states} states "
      f"(minimal {minimize(target).n_states})")
print(f"stored rows: PL* {len(plstar.table.s_stored)} vs L* {len(lstar.table.row_labels())}")
