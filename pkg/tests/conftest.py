import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from prefix_lstar.automata import Alphabet, Dfa

BIN = Alphabet.of("01")


def ends_in_zero() -> Dfa:
    # q0 start, q1 accepting; 0 -> q1, 1 -> q0 from either state.
    return Dfa(BIN, [[1, 0], [1, 0]], 0, [1])


@st.composite
def dfas(draw, max_states=4, max_symbols=3, min_symbols=1):
    k = draw(st.integers(min_symbols, max_symbols))
    n = draw(st.integers(1, max_states))
    delta = [[draw(st.integers(0, n - 1)) for _ in range(k)] for _ in range(n)]
    accepting = draw(st.sets(st.integers(0, n - 1)))
    return Dfa(Alphabet.of("abc"[:k]), delta, 0, accepting)


def all_small_dfas(max_states=3, k=2, limit=2000):
    """Every DFA with at most ``max_states`` states over ``k`` symbols, start 0."""
    alphabet = Alphabet.of("ab"[:k])
    out = []
    for n in range(1, max_states + 1):
        for targets in itertools.product(range(n), repeat=n * k):
            delta = np.array(targets).reshape(n, k)
            for mask in range(1 << n):
                out.append(Dfa(alphabet, delta, 0, [q for q in range(n) if mask >> q & 1]))
                if len(out) >= limit:
                    return out
    return out


@pytest.fixture
def fig2():
    return ends_in_zero()
