"""Teachers and random samplers.

A :class:`Teacher` wraps a target DFA and answers prefix, membership and
exact equivalence queries, counting each kind. The PAC equivalence test
replaces an exact query by a batch of random draws whose size grows with the
number of tests issued so far.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Callable, Optional

from .automata import (
    Alphabet,
    Dfa,
    PrefixResponse,
    coaccessible,
    shortest_counterexample,
)

Sampler = Callable[[random.Random], Optional[str]]

__all__ = [
    "PrefixResponse",
    "Teacher",
    "PacParams",
    "SamplerConfig",
    "pac_calls",
    "ExactEquivalence",
    "PacEquivalence",
    "equivalence_pac",
    "sample_pseudo_uniform",
    "sample_prefix_based",
    "pseudo_uniform_sampler",
    "prefix_sampler",
]


class Teacher:
    """Answers queries about a fixed target language.

    Answers are pure functions of the target; only the counters change.
    A teacher should serve a single learning run at a time.
    """

    _CACHE_LIMIT = 200_000

    def __init__(self, target: Dfa):
        self.target = target
        self.liveness = coaccessible(target)
        self.prefix_queries = 0
        self.membership_queries = 0
        self.equivalence_queries = 0
        # Reached state per recently seen string; queries often extend one another.
        self._states: dict[str, int] = {"": target.start}

    def _state(self, w: str) -> int:
        states = self._states
        q = states.get(w)
        if q is not None:
            return q
        head = states.get(w[:-1])
        if head is not None:
            q = self.target.step(head, w[-1])
        else:
            q = self.target.state_after(w)
        if len(states) >= self._CACHE_LIMIT:
            states.clear()
            states[""] = self.target.start
        states[w] = q
        return q

    @property
    def alphabet(self) -> Alphabet:
        return self.target.alphabet

    def prefix_query(self, w: str) -> PrefixResponse:
        q = self._state(w)
        if self.target.accept_mask[q]:
            response = PrefixResponse.MEMBER
        elif q in self.liveness:
            response = PrefixResponse.LIVE_PREF
        else:
            response = PrefixResponse.DEAD_PREF
        self.prefix_queries += 1
        return response

    def membership_query(self, w: str) -> bool:
        answer = bool(self.target.accept_mask[self._state(w)])
        self.membership_queries += 1
        return answer

    def equivalence_exact(self, hypothesis: Dfa) -> str | None:
        cex = shortest_counterexample(self.target, hypothesis)
        self.equivalence_queries += 1
        return cex

    def counters(self) -> dict[str, int]:
        return {
            "prefix_queries": self.prefix_queries,
            "membership_queries": self.membership_queries,
            "equivalence_queries": self.equivalence_queries,
        }


@dataclass
class PacParams:
    epsilon: float
    delta: float
    eq_index: int = 1

    def __post_init__(self):
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must lie in (0, 1]")
        if not 0 < self.delta <= 1:
            raise ValueError("delta must lie in (0, 1]")
        if self.eq_index < 1:
            raise ValueError("eq_index starts at 1")


def pac_calls(params: PacParams) -> int:
    """Number of random draws for the ``eq_index``-th equivalence test.

    ``ceil((ln(1/delta) + i ln 2) / epsilon)``, evaluated in 50-digit decimal
    arithmetic so values sitting on an integer are not pushed over by binary
    rounding.
    """
    with localcontext() as ctx:
        ctx.prec = 50
        eps = Decimal(repr(params.epsilon))
        delta = Decimal(repr(params.delta))
        value = ((1 / delta).ln() + params.eq_index * Decimal(2).ln()) / eps
        return int(value.to_integral_value(rounding="ROUND_CEILING"))


class ExactEquivalence:
    """Equivalence oracle backed by the teacher's target automaton."""

    exact = True

    def __init__(self, teacher: Teacher):
        self.teacher = teacher

    def __call__(self, hypothesis: Dfa) -> str | None:
        return self.teacher.equivalence_exact(hypothesis)


def equivalence_pac(
    teacher: Teacher,
    hypothesis: Dfa,
    params: PacParams,
    sampler: Sampler,
    rng: random.Random,
) -> str | None:
    """Random-sampling replacement for an equivalence query.

    Always draws exactly ``pac_calls(params)`` samples. A draw where the
    sampler fails counts as a correctly classified draw. Returns the first
    misclassified sample, or None. Advances ``params.eq_index``.
    """
    target = teacher.target
    n = pac_calls(params)
    teacher.equivalence_queries += 1
    params.eq_index += 1
    for _ in range(n):
        x = sampler(rng)
        if x is None:
            continue
        if hypothesis.accepts(x) != target.accepts(x):
            return x
    return None


class PacEquivalence:
    exact = False

    def __init__(self, teacher: Teacher, params: PacParams, sampler: Sampler, rng: random.Random):
        self.teacher = teacher
        self.params = params
        self.sampler = sampler
        self.rng = rng

    def __call__(self, hypothesis: Dfa) -> str | None:
        return equivalence_pac(self.teacher, hypothesis, self.params, self.sampler, self.rng)


def sample_pseudo_uniform(l_min: int, l_max: int, alphabet: Alphabet, rng: random.Random) -> str:
    """Length uniform on ``[l_min, l_max]``, then each symbol uniform on the alphabet."""
    if not 0 <= l_min <= l_max:
        raise ValueError("need 0 <= l_min <= l_max")
    length = rng.randint(l_min, l_max)
    symbols = alphabet.symbols
    return "".join(symbols[rng.randrange(len(symbols))] for _ in range(length))


@dataclass(frozen=True)
class SamplerConfig:
    p: float = 0.5
    m: int = 200
    l_min: int = 0
    l_max: int = 20

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError("p must lie in [0, 1]")
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if not 0 <= self.l_min <= self.l_max:
            raise ValueError("need 0 <= l_min <= l_max")


class ExampleKind(enum.Enum):
    POSITIVE = "POSITIVE"
    NEGATIVE = "NEGATIVE"


def sample_prefix_based(cfg: SamplerConfig, teacher: Teacher, rng: random.Random) -> str | None:
    """Draw one string by growing a prefix under prefix-query feedback.

    The example kind is fixed per call: POSITIVE with probability ``p``.
    Each iteration appends a symbol not yet tried at the current prefix and
    probes the extension:

    * MEMBER: a POSITIVE draw returns it once it is at least ``l_min`` long;
      otherwise a fair coin decides between extending and trying another
      symbol.
    * LIVE_PREF: POSITIVE extends, NEGATIVE returns it.
    * DEAD_PREF: POSITIVE tries another symbol, NEGATIVE returns it.

    An attempt fails when the probe grows past ``l_max`` or every symbol has
    been tried at the current prefix; the state is then reset. Returns None
    after ``m`` failed attempts.
    """
    symbols = teacher.alphabet.symbols
    kind = ExampleKind.POSITIVE if rng.random() < cfg.p else ExampleKind.NEGATIVE
    prefix = ""
    seen: set[str] = set()
    choices = list(symbols)
    attempts = 0
    while attempts < cfg.m:
        s = choices[rng.randrange(len(choices))]
        probe = prefix + s
        response = teacher.prefix_query(probe)
        if response is PrefixResponse.MEMBER:
            if kind is ExampleKind.POSITIVE and len(probe) >= cfg.l_min:
                return probe
            if rng.random() < 0.5:
                seen = set()
                prefix = probe
            else:
                seen.add(s)
        elif response is PrefixResponse.LIVE_PREF:
            if kind is ExampleKind.NEGATIVE:
                return probe
            seen = set()
            prefix = probe
        else:
            if kind is ExampleKind.NEGATIVE:
                return probe
            seen.add(s)
        choices = [a for a in symbols if a not in seen]
        if len(probe) > cfg.l_max or not choices:
            attempts += 1
            prefix = ""
            seen = set()
            choices = list(symbols)
    return None


def pseudo_uniform_sampler(alphabet: Alphabet, l_min: int, l_max: int) -> Sampler:
    def draw(rng: random.Random) -> str:
        return sample_pseudo_uniform(l_min, l_max, alphabet, rng)

    return draw


def prefix_sampler(cfg: SamplerConfig, teacher: Teacher) -> Sampler:
    def draw(rng: random.Random) -> str | None:
        return sample_prefix_based(cfg, teacher, rng)

    return draw
