"""Deterministic finite automata over an ordered finite alphabet.

A :class:`Dfa` is total: every state has exactly one successor per symbol.
Transitions live in an ``(n_states, n_symbols)`` integer array, so a DFA over
256 symbols is still cheap to copy around and compare.

Strings are plain Python ``str`` values; every character must be a symbol of
the DFA's alphabet.
"""

from __future__ import annotations

import enum
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np


class AutomatonError(Exception):
    """Base class for automaton errors."""


class SymbolNotInAlphabet(AutomatonError, ValueError):
    pass


class AlphabetMismatch(AutomatonError, ValueError):
    pass


class EmptyLanguageError(AutomatonError, ValueError):
    """No accepted string exists in the requested length range."""


class PrefixResponse(enum.Enum):
    MEMBER = "MEMBER"
    LIVE_PREF = "LIVE_PREF"
    DEAD_PREF = "DEAD_PREF"


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if any(not isinstance(a, str) or len(a) != 1 for a in symbols):
            raise ValueError("alphabet symbols must be single characters")
        if len(set(symbols)) != len(symbols):
            raise ValueError("alphabet symbols must be pairwise distinct")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "index", {a: i for i, a in enumerate(symbols)})

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol) -> bool:
        return symbol in self.index

    def encode(self, w: str) -> list[int]:
        """Symbol indices of ``w``; raises :class:`SymbolNotInAlphabet`."""
        try:
            return [self.index[a] for a in w]
        except KeyError as exc:
            raise SymbolNotInAlphabet(f"symbol {exc.args[0]!r} is not in the alphabet") from None


class Dfa:
    """Total deterministic automaton ``(Q, A, delta, q0, F)`` with ``Q = 0..n-1``."""

    __slots__ = ("alphabet", "delta", "start", "accepting", "_accept_mask")

    def __init__(self, alphabet: Alphabet, delta, start: int, accepting: Iterable[int]):
        delta = np.array(delta, dtype=np.int64)
        if delta.ndim != 2 or delta.shape[1] != len(alphabet) or delta.shape[0] < 1:
            raise ValueError(
                f"delta must have shape (n_states, {len(alphabet)}), got {delta.shape}"
            )
        n = delta.shape[0]
        if delta.min() < 0 or delta.max() >= n:
            raise ValueError("delta refers to a state outside 0..n-1")
        accepting = frozenset(int(q) for q in accepting)
        if not 0 <= start < n or any(not 0 <= q < n for q in accepting):
            raise ValueError("start and accepting states must lie in 0..n-1")
        delta.flags.writeable = False
        mask = np.zeros(n, dtype=bool)
        mask[list(accepting)] = True
        mask.flags.writeable = False
        self.alphabet = alphabet
        self.delta = delta
        self.start = int(start)
        self.accepting = accepting
        self._accept_mask = mask

    @classmethod
    def from_transitions(
        cls,
        alphabet: Alphabet,
        transitions: Mapping[int, Mapping[str, int]],
        start: int = 0,
        accepting: Iterable[int] = (),
    ) -> "Dfa":
        n = len(transitions)
        delta = np.zeros((n, len(alphabet)), dtype=np.int64)
        for q in range(n):
            row = transitions[q]
            for a, i in alphabet.index.items():
                delta[q, i] = row[a]
        return cls(alphabet, delta, start, accepting)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Dfa":
        return cls(alphabet, np.zeros((1, len(alphabet))), 0, ())

    @classmethod
    def universal(cls, alphabet: Alphabet) -> "Dfa":
        return cls(alphabet, np.zeros((1, len(alphabet))), 0, (0,))

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    @property
    def accept_mask(self) -> np.ndarray:
        return self._accept_mask

    def step(self, q: int, w: str) -> int:
        delta = self.delta
        for i in self.alphabet.encode(w):
            q = delta[q, i]
        return int(q)

    def state_after(self, w: str) -> int:
        return self.step(self.start, w)

    def accepts(self, w: str) -> bool:
        return bool(self._accept_mask[self.state_after(w)])

    def __repr__(self):
        return (
            f"Dfa(n_states={self.n_states}, alphabet_size={len(self.alphabet)}, "
            f"start={self.start}, accepting={sorted(self.accepting)})"
        )


def run(dfa: Dfa, w: str) -> bool:
    return dfa.accepts(w)


@dataclass(frozen=True)
class LivenessTable:
    live: frozenset[int]

    def __contains__(self, q) -> bool:
        return q in self.live


def coaccessible(dfa: Dfa) -> LivenessTable:
    """States from which some accepting state is reachable."""
    preds: list[set[int]] = [set() for _ in range(dfa.n_states)]
    for q, row in enumerate(dfa.delta.tolist()):
        for r in row:
            preds[r].add(q)
    live = set(dfa.accepting)
    todo = list(live)
    while todo:
        q = todo.pop()
        for p in preds[q]:
            if p not in live:
                live.add(p)
                todo.append(p)
    return LivenessTable(frozenset(live))


def classify(dfa: Dfa, liveness: LivenessTable, w: str) -> PrefixResponse:
    q = dfa.state_after(w)
    if dfa.accept_mask[q]:
        return PrefixResponse.MEMBER
    if q in liveness.live:
        return PrefixResponse.LIVE_PREF
    return PrefixResponse.DEAD_PREF


def reachable(dfa: Dfa) -> list[int]:
    """Reachable states in breadth-first order (symbols in alphabet order)."""
    seen = {dfa.start}
    order = [dfa.start]
    delta = dfa.delta.tolist()
    i = 0
    while i < len(order):
        for r in delta[order[i]]:
            if r not in seen:
                seen.add(r)
                order.append(r)
        i += 1
    return order


def canonical(dfa: Dfa) -> Dfa:
    """Restrict to reachable states and renumber them in BFS order.

    Two DFAs without unreachable states are isomorphic iff their canonical
    forms have equal transition arrays, start states and accepting sets.
    """
    order = reachable(dfa)
    rename = {q: i for i, q in enumerate(order)}
    delta = np.array([[rename[r] for r in dfa.delta[q].tolist()] for q in order], dtype=np.int64)
    accepting = [rename[q] for q in order if q in dfa.accepting]
    return Dfa(dfa.alphabet, delta, 0, accepting)


def isomorphic(a: Dfa, b: Dfa) -> bool:
    if a.alphabet != b.alphabet:
        return False
    ca, cb = canonical(a), canonical(b)
    return (
        ca.n_states == cb.n_states
        and ca.accepting == cb.accepting
        and np.array_equal(ca.delta, cb.delta)
    )


def minimize(dfa: Dfa) -> Dfa:
    """Minimal DFA for ``L(dfa)`` via Moore partition refinement.

    States of the result are numbered in breadth-first order from the start
    state, so equal languages give identical outputs.
    """
    order = reachable(dfa)
    rename = {q: i for i, q in enumerate(order)}
    delta = np.array([[rename[r] for r in dfa.delta[q].tolist()] for q in order], dtype=np.int64)
    block = np.array([1 if q in dfa.accepting else 0 for q in order], dtype=np.int64)
    n_blocks = len(np.unique(block))
    while True:
        signature = np.column_stack([block, block[delta]])
        _, new_block = np.unique(signature, axis=0, return_inverse=True)
        new_block = new_block.reshape(-1)
        n_new = int(new_block.max()) + 1
        block = new_block
        if n_new == n_blocks:
            break
        n_blocks = n_new
    quotient = np.zeros((n_blocks, delta.shape[1]), dtype=np.int64)
    accepting = set()
    for q in range(len(order)):
        quotient[block[q]] = block[delta[q]]
        if order[q] in dfa.accepting:
            accepting.add(int(block[q]))
    return canonical(Dfa(dfa.alphabet, quotient, int(block[0]), accepting))


def shortest_counterexample(a: Dfa, b: Dfa) -> str | None:
    """Length-lexicographically least string in ``L(a) xor L(b)``, or None.

    Breadth-first search over the product automaton, expanding symbols in
    alphabet order. The result depends only on the two languages' automata,
    so repeated queries with the same hypothesis get the same answer.
    """
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch("automata are over different alphabets")
    symbols = a.alphabet.symbols
    da, db = a.delta.tolist(), b.delta.tolist()
    fa, fb = a.accept_mask, b.accept_mask
    start = (a.start, b.start)
    parent: dict[tuple[int, int], tuple[tuple[int, int], int] | None] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if fa[p] != fb[q]:
            out = []
            while parent[pair] is not None:
                pair, i = parent[pair]
                out.append(symbols[i])
            return "".join(reversed(out))
        rp, rq = da[p], db[q]
        for i in range(len(symbols)):
            nxt = (rp[i], rq[i])
            if nxt not in parent:
                parent[nxt] = (pair, i)
                queue.append(nxt)
    return None


def equivalent(a: Dfa, b: Dfa) -> bool:
    return shortest_counterexample(a, b) is None


@dataclass(frozen=True)
class RegularGrammar:
    """Right-linear grammar with rules ``B -> aC`` and ``B -> a``.

    ``rules`` holds ``(lhs, symbol, rhs)`` triples; ``rhs`` is None for a
    terminal rule. The grammar cannot derive the empty string.
    """

    variables: tuple[str, ...]
    start: str
    rules: tuple[tuple[str, str, str | None], ...]

    def rule_strings(self) -> set[str]:
        return {f"{b}->{a}{c or ''}" for b, a, c in self.rules}


def to_regular_grammar(dfa: Dfa) -> RegularGrammar:
    names = tuple(f"q{q}" for q in range(dfa.n_states))
    rules = []
    for q in range(dfa.n_states):
        for i, a in enumerate(dfa.alphabet.symbols):
            r = int(dfa.delta[q, i])
            rules.append((names[q], a, names[r]))
            if r in dfa.accepting:
                rules.append((names[q], a, None))
    return RegularGrammar(names, names[dfa.start], tuple(rules))


def _successor_groups(dfa: Dfa) -> list[list[tuple[int, list[int]]]]:
    """Per state: ``(target, symbol indices)`` pairs ordered by first symbol."""
    groups = []
    for row in dfa.delta.tolist():
        by_target: dict[int, list[int]] = {}
        for i, r in enumerate(row):
            by_target.setdefault(r, []).append(i)
        groups.append(list(by_target.items()))
    return groups


def count_words(dfa: Dfa, l_max: int) -> list[list[int]]:
    """``count[q][n]``: number of length-``n`` strings accepted from state ``q``.

    Counts are exact Python integers (they reach ``|A|**n``).
    """
    if l_max < 0:
        raise ValueError("l_max must be non-negative")
    groups = _successor_groups(dfa)
    n = dfa.n_states
    by_length = [[1 if q in dfa.accepting else 0 for q in range(n)]]
    for _ in range(l_max):
        prev = by_length[-1]
        by_length.append(
            [sum(len(syms) * prev[r] for r, syms in groups[q]) for q in range(n)]
        )
    return [[by_length[k][q] for k in range(l_max + 1)] for q in range(n)]


class WordSampler:
    """Uniform sampler over the accepted strings with length in ``[l_min, l_max]``.

    Picks a length with probability proportional to its number of accepted
    words, then walks the automaton choosing each symbol with weight equal to
    the number of accepting completions. All arithmetic is on exact integers.
    """

    def __init__(self, dfa: Dfa, l_min: int, l_max: int):
        if not 0 <= l_min <= l_max:
            raise ValueError("need 0 <= l_min <= l_max")
        self.dfa = dfa
        self.l_min, self.l_max = l_min, l_max
        self._counts = count_words(dfa, l_max)
        self._groups = _successor_groups(dfa)
        start_counts = self._counts[dfa.start]
        self._length_weights = [start_counts[k] for k in range(l_min, l_max + 1)]
        self.total = sum(self._length_weights)

    @property
    def empty(self) -> bool:
        return self.total == 0

    def sample(self, rng: random.Random) -> str:
        if self.total == 0:
            raise EmptyLanguageError(
                f"no accepted string with length in [{self.l_min}, {self.l_max}]"
            )
        pick = rng.randrange(self.total)
        length = self.l_min
        for weight in self._length_weights:
            if pick < weight:
                break
            pick -= weight
            length += 1
        symbols = self.dfa.alphabet.symbols
        q = self.dfa.start
        out = []
        for remaining in range(length - 1, -1, -1):
            pick = rng.randrange(self._counts[q][remaining + 1])
            for r, syms in self._groups[q]:
                weight = len(syms) * self._counts[r][remaining]
                if pick < weight:
                    out.append(symbols[syms[pick // self._counts[r][remaining]]])
                    q = r
                    break
                pick -= weight
        return "".join(out)


def sample_uniform(dfa: Dfa, l_min: int, l_max: int, rng: random.Random) -> str:
    return WordSampler(dfa, l_min, l_max).sample(rng)


def words(alphabet: Alphabet | Sequence[str], max_len: int, min_len: int = 0) -> Iterator[str]:
    """All strings over ``alphabet`` in length-lexicographic order."""
    symbols = list(alphabet)
    layer = [""]
    for n in range(max_len + 1):
        if n >= min_len:
            yield from layer
        layer = [w + a for w in layer for a in symbols]


def _symbol_label(code_points: list[int]) -> str:
    parts = []
    start = prev = code_points[0]
    for c in code_points[1:] + [None]:
        if c is not None and c == prev + 1:
            prev = c
            continue
        if start == prev:
            parts.append(_escape(chr(start)))
        elif prev == start + 1:
            parts.append(_escape(chr(start)) + "," + _escape(chr(prev)))
        else:
            parts.append(f"{_escape(chr(start))}-{_escape(chr(prev))}")
        if c is not None:
            start = prev = c
    return ",".join(parts)


def _escape(ch: str) -> str:
    if ch == '"' or ch == "\\":
        return "\\" + ch
    if ch.isprintable() and not ch.isspace():
        return ch
    return f"\\\\x{ord(ch):02x}"


def to_dot(dfa: Dfa, name: str = "dfa") -> str:
    """Graphviz DOT text; parallel edges are merged, symbol runs coalesced."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(dfa.n_states):
        shape = "doublecircle" if q in dfa.accepting else "circle"
        lines.append(f"  q{q} [shape={shape}];")
    lines.append(f"  __start -> q{dfa.start};")
    symbols = dfa.alphabet.symbols
    for q, row in enumerate(dfa.delta.tolist()):
        by_target: dict[int, list[int]] = {}
        for i, r in enumerate(row):
            by_target.setdefault(r, []).append(ord(symbols[i]))
        for r, cps in by_target.items():
            lines.append(f'  q{q} -> q{r} [label="{_symbol_label(sorted(cps))}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
