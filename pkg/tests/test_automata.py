import itertools
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prefix_lstar.automata import (
    Alphabet,
    AlphabetMismatch,
    Dfa,
    EmptyLanguageError,
    PrefixResponse,
    SymbolNotInAlphabet,
    canonical,
    classify,
    coaccessible,
    count_words,
    equivalent,
    isomorphic,
    minimize,
    run,
    sample_uniform,
    shortest_counterexample,
    to_dot,
    to_regular_grammar,
    words,
)
from prefix_lstar.targets import desk_spec, build

from conftest import BIN, dfas

M, L, D = PrefixResponse.MEMBER, PrefixResponse.LIVE_PREF, PrefixResponse.DEAD_PREF


def nerode_classes(dfa, depth=4):
    """Count reachable states distinguished by some string of length <= depth."""
    reach = {dfa.state_after(w) for w in words(dfa.alphabet, dfa.n_states)}
    tests = list(words(dfa.alphabet, depth))
    sigs = {tuple(dfa.accept_mask[dfa.step(q, v)] for v in tests) for q in reach}
    return len(sigs)


def test_alphabet_rejects_bad_symbols():
    with pytest.raises(ValueError):
        Alphabet.of("")
    with pytest.raises(ValueError):
        Alphabet.of("aa")
    with pytest.raises(ValueError):
        Alphabet(("ab",))
    with pytest.raises(SymbolNotInAlphabet):
        BIN.encode("012")


def test_dfa_validates_shape():
    with pytest.raises(ValueError):
        Dfa(BIN, [[0]], 0, [])
    with pytest.raises(ValueError):
        Dfa(BIN, [[0, 2]], 0, [])
    with pytest.raises(ValueError):
        Dfa(BIN, [[0, 0]], 1, [])


def test_run_on_ends_in_zero(fig2):
    assert run(fig2, "010") is True
    assert run(fig2, "001") is False
    assert run(fig2, "") is False


def test_classify_dyck():
    dyck = build(desk_spec("dyck", depth=2))
    live = coaccessible(dyck)
    assert classify(dyck, live, "(") is L
    assert classify(dyck, live, "()") is M
    assert classify(dyck, live, ")") is D


def test_coaccessible_examples(fig2):
    assert coaccessible(Dfa.empty(BIN)).live == frozenset()
    assert coaccessible(Dfa.universal(BIN)).live == {0}
    assert coaccessible(fig2).live == {0, 1}


def test_minimize_examples(fig2):
    assert minimize(fig2).n_states == 2 == nerode_classes(fig2)
    padded = Dfa(BIN, [[1, 0], [1, 0], [2, 0]], 0, [1, 2])
    small = minimize(padded)
    assert small.n_states == 2 and equivalent(small, fig2)
    triple = Dfa(BIN, [[1, 2], [2, 0], [0, 1]], 0, [0, 1, 2])
    assert minimize(triple).n_states == 1


def test_shortest_counterexample_examples(fig2):
    assert shortest_counterexample(fig2, fig2) is None
    eps_only = Dfa(BIN, [[1, 1], [1, 1]], 0, [0])
    assert shortest_counterexample(eps_only, Dfa.empty(BIN)) == ""
    assert shortest_counterexample(fig2, Dfa.empty(BIN)) == "0"
    with pytest.raises(AlphabetMismatch):
        shortest_counterexample(fig2, Dfa.empty(Alphabet.of("ab")))


def test_grammar_examples(fig2):
    g = to_regular_grammar(fig2)
    assert g.rule_strings() == {"q0->0q1", "q0->1q0", "q0->0", "q1->0q1", "q1->1q0", "q1->0"}
    assert g.start == "q0"
    empty = to_regular_grammar(Dfa.empty(BIN))
    assert all(c is not None for _, _, c in empty.rules)
    star = to_regular_grammar(Dfa.universal(Alphabet.of("0")))
    assert star.rule_strings() == {"q0->0q0", "q0->0"}


def test_count_words_examples(fig2):
    assert count_words(fig2, 3)[0][3] == 4
    assert all(c == 0 for row in count_words(Dfa.empty(BIN), 5) for c in row)
    counts = count_words(fig2, 0)
    assert [counts[q][0] for q in range(2)] == [0, 1]


def test_count_words_is_exact_for_large_alphabets():
    big = Alphabet(tuple(chr(c) for c in range(256)))
    assert count_words(Dfa.universal(big), 10)[0][10] == 256**10


def test_sample_uniform_singleton():
    ab = Alphabet.of("ab")
    # 0 -a-> 1 -b-> 2 (accepting), everything else to sink 3.
    dfa = Dfa(ab, [[1, 3], [3, 2], [3, 3], [3, 3]], 0, [2])
    rng = random.Random(1)
    assert {sample_uniform(dfa, 2, 2, rng) for _ in range(50)} == {"ab"}


def test_sample_uniform_empty_raises(fig2):
    with pytest.raises(EmptyLanguageError):
        sample_uniform(Dfa.empty(BIN), 0, 5, random.Random(0))
    with pytest.raises(EmptyLanguageError):
        sample_uniform(fig2, 0, 0, random.Random(0))


def test_sample_uniform_frequency(fig2):
    rng = random.Random(7)
    n = 10_000
    freq = Counter(sample_uniform(fig2, 1, 2, rng) for _ in range(n))
    assert set(freq) == {"0", "00", "10"}
    assert abs(freq["0"] / n - 1 / 3) <= 0.02


def test_words_order():
    assert list(words("ab", 2)) == ["", "a", "b", "aa", "ab", "ba", "bb"]
    assert list(words("ab", 2, min_len=2)) == ["aa", "ab", "ba", "bb"]


def test_canonical_and_isomorphic(fig2):
    swapped = Dfa(BIN, [[0, 1], [0, 1]], 1, [0])
    assert isomorphic(fig2, swapped)
    assert np.array_equal(canonical(swapped).delta, fig2.delta)
    assert not isomorphic(fig2, Dfa.empty(BIN))


def test_to_dot_mentions_every_state(fig2):
    text = to_dot(fig2, "m")
    assert text.startswith("digraph m")
    assert "doublecircle" in text


# Properties


@settings(max_examples=150, deadline=None)
@given(dfas())
def test_minimize_idempotent(d):
    m1 = minimize(d)
    m2 = minimize(m1)
    assert m2.n_states == m1.n_states
    assert equivalent(m1, d) and equivalent(m2, d)
    assert m1.n_states == nerode_classes(d, depth=d.n_states)


@settings(max_examples=150, deadline=None)
@given(dfas(), st.data())
def test_shortest_counterexample_matches_brute_force(a, data):
    b = data.draw(dfas(max_symbols=len(a.alphabet), min_symbols=len(a.alphabet)))
    brute = next((w for w in words(a.alphabet, 8) if a.accepts(w) != b.accepts(w)), None)
    assert shortest_counterexample(a, b) == brute


@settings(max_examples=100, deadline=None)
@given(dfas(max_symbols=2))
def test_dead_prefixes_are_extension_closed(d):
    live = coaccessible(d)
    short = list(words(d.alphabet, 4))
    for w in short:
        r = classify(d, live, w)
        assert (r is M) == run(d, w)
        if r is D:
            assert all(classify(d, live, w + v) is D for v in short)


@settings(max_examples=100, deadline=None)
@given(dfas())
def test_count_words_matches_enumeration(d):
    counts = count_words(d, 6)[d.start]
    by_len = Counter(len(w) for w in words(d.alphabet, 6) if d.accepts(w))
    assert counts == [by_len.get(n, 0) for n in range(7)]


@settings(max_examples=60, deadline=None)
@given(dfas(), st.integers(0, 4), st.integers(0, 3), st.integers(0, 2**32))
def test_sample_uniform_in_language_and_range(d, lo, span, seed):
    hi = lo + span
    rng = random.Random(seed)
    if sum(count_words(d, hi)[d.start][lo:]) == 0:
        with pytest.raises(EmptyLanguageError):
            sample_uniform(d, lo, hi, rng)
        return
    for _ in range(5):
        w = sample_uniform(d, lo, hi, rng)
        assert run(d, w) and lo <= len(w) <= hi


def test_exhaustive_support_uniformity():
    # Over all accepted words of length 3 in a 3-state DFA, each word is equally likely.
    ab = Alphabet.of("ab")
    d = Dfa(ab, [[1, 0], [2, 0], [2, 2]], 0, [2])
    support = [w for w in itertools.islice(words(ab, 3, 3), None) if d.accepts(w)]
    rng = random.Random(3)
    n = 6000
    freq = Counter(sample_uniform(d, 3, 3, rng) for _ in range(n))
    assert set(freq) == set(support)
    for w in support:
        assert abs(freq[w] / n - 1 / len(support)) <= 0.03
