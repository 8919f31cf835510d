"""How the choice of sampler shapes the quality of PAC hypotheses.

Random strings almost never belong to a sparse language, so the uniform
sampler sees no positive examples and the learner settles on the empty
language (F1 = 0). Aiming the prefix-guided sampler at members fixes that.
"""

import random

from prefix_lstar.evaluation import default_length_range, f1_grid, grid_csv
from prefix_lstar.targets import build, desk_spec

for name in ("dyck", "date"):
    spec = desk_spec(name)
    target = build(spec)
    lo, hi = default_length_range(name, target)
    cells = f1_grid(
        target,
        [("uniform", None), ("prefix", 0.5), ("prefix", 1.0)],
        [0.05],
        [0.05],
        3,
        random.Random(0),
        lo,
        hi,
        n_f1=500,
        label=spec.label,
    )
    print(grid_csv(cells))
