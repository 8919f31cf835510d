"""Working with DFAs: running words, minimizing, counting and sampling.

The running example is the two-state automaton for binary strings that end in 0.
"""

import random

from prefix_lstar.automata import (
    Alphabet,
    Dfa,
    classify,
    coaccessible,
    count_words,
    minimize,
    sample_uniform,
    shortest_counterexample,
    to_regular_grammar,
)

binary = Alphabet.of("01")
ends_in_zero = Dfa(binary, [[1, 0], [1, 0]], 0, [1])

for w in ["010", "001", ""]:
    print(f"accepts {w!r}: {ends_in_zero.accepts(w)}")

# A redundant copy of the accepting state disappears under minimization.
padded = Dfa(binary, [[1, 0], [2, 0], [2, 0]], 0, [1, 2])
print("padded states:", padded.n_states, "-> minimal:", minimize(padded).n_states)

# Equivalence counterexamples are length-lexicographically least.
print("least difference from the empty language:", shortest_counterexample(ends_in_zero, Dfa.empty(binary)))

print("grammar rules:", sorted(to_regular_grammar(ends_in_zero).rule_strings()))

live = coaccessible(ends_in_zero)
print("prefix class of '1':", classify(ends_in_zero, live, "1").value)

counts = count_words(ends_in_zero, 5)[ends_in_zero.start]
print("accepted words by length 0..5:", counts)

rng = random.Random(0)
print("uniform draws in [1, 4]:", [sample_uniform(ends_in_zero, 1, 4, rng) for _ in range(6)])
