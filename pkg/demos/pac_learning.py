"""Learning without an exact oracle.

Each equivalence test draws a growing batch of random strings. Two
distributions are available: fixed-length-then-uniform-symbols, and a walk
guided by prefix queries that can aim for members (p = 1) or non-members.
"""

import random

from prefix_lstar.evaluation import default_length_range, estimate_distance, learn_with, make_sampler, verify_pac
from prefix_lstar.oracle import PacEquivalence, PacParams, SamplerConfig, Teacher, pac_calls
from prefix_lstar.targets import build, desk_spec

print("draws per test for eps = delta = 0.05:", [pac_calls(PacParams(0.05, 0.05, i)) for i in range(1, 6)])

spec = desk_spec("dyck")
target = build(spec)
lo, hi = default_length_range("dyck", target)
cfg = SamplerConfig(p=0.5, m=200, l_min=lo, l_max=hi)
rng = random.Random(3)
for kind in ("uniform", "prefix"):
    sampler = make_sampler(kind, target, cfg)
    teacher = Teacher(target)
    oracle = PacEquivalence(teacher, PacParams(0.05, 0.05), sampler, rng)
    h, m = learn_with("plstar_optimised", teacher, oracle, label=spec.label)
    d = estimate_distance(h, target, sampler, 1000, rng)
    print(f"{kind:8s} sampler: {h.n_states} states, {m.eq} tests, {m.mq_or_pq} prefix queries, distance {d:.3f}")

report = verify_pac(target, "prefix", 0.05, 0.05, 10, 500, random.Random(0), cfg, label=spec.label)
print(f"Pr(d <= 0.05) over {report.runs} runs: {report.fraction_within_epsilon}")
