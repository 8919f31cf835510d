"""Active learning of regular languages with prefix queries (PL*) and L*."""

from .automata import (
    Alphabet,
    Dfa,
    PrefixResponse,
    classify,
    coaccessible,
    count_words,
    minimize,
    run,
    sample_uniform,
    shortest_counterexample,
    to_regular_grammar,
)
from .lstar import LearningTimeout, LStarLearner, LStarTable, lstar_learn
from .metrics import RunMetrics, size_lstar, size_plstar
from .oracle import (
    ExactEquivalence,
    PacEquivalence,
    PacParams,
    SamplerConfig,
    Teacher,
    pac_calls,
    sample_prefix_based,
    sample_pseudo_uniform,
)
from .plstar import PlStarLearner, PlStarTable, plstar_learn, to_lstar_table
from .targets import TargetSpec, build, default_alphabet

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Dfa",
    "PrefixResponse",
    "classify",
    "coaccessible",
    "count_words",
    "minimize",
    "run",
    "sample_uniform",
    "shortest_counterexample",
    "to_regular_grammar",
    "ExactEquivalence",
    "PacEquivalence",
    "PacParams",
    "SamplerConfig",
    "Teacher",
    "pac_calls",
    "sample_prefix_based",
    "sample_pseudo_uniform",
    "LearningTimeout",
    "LStarLearner",
    "LStarTable",
    "lstar_learn",
    "RunMetrics",
    "size_lstar",
    "size_plstar",
    "PlStarLearner",
    "PlStarTable",
    "plstar_learn",
    "to_lstar_table",
    "TargetSpec",
    "build",
    "default_alphabet",
]
