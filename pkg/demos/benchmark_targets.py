"""The benchmark languages and how prefixes of them are classified."""

from prefix_lstar.automata import classify, coaccessible
from prefix_lstar.targets import NAMES, build, desk_spec

for name in NAMES:
    spec = desk_spec(name)
    dfa = build(spec)
    print(f"{spec.label:12s} alphabet={''.join(dfa.alphabet.symbols)!r:24s} states={dfa.n_states}")

# Every string is a member, a live prefix (completable) or a dead prefix.
date = build(desk_spec("date"))
live = coaccessible(date)
for w in ["01/01/00", "30/04", "31/04", "32"]:
    print(f"date {w!r:12s} -> {classify(date, live, w).value}")

dyck = build(desk_spec("dyck", depth=1))
live = coaccessible(dyck)
for w in ["()", "(", "(())", ")"]:
    print(f"dyck-1 {w!r:8s} -> {classify(dyck, live, w).value}")

# Larger depths and the 256-symbol alphabet are one argument away.
full = build(desk_spec("dyck", alphabet="full", depth=4))
print("dyck-4 over 256 symbols:", full.n_states, "states")
