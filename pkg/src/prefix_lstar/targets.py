"""Benchmark target languages compiled to minimal DFAs.

The nested languages (``arith``, ``json``, ``dyck``) are context-free; they
become regular once nesting is bounded. Each recursive nonterminal is indexed
by the remaining nesting budget and recursion past the bound is cut, giving a
finite expression that is compiled through an epsilon-NFA, determinized and
minimized. The outermost nesting pair counts as depth 1, so ``dyck`` at depth
1 accepts ``()`` but not ``(())``.

Symbols of the alphabet that a grammar never uses lead to the dead state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automata import Alphabet, Dfa, minimize

NESTED = ("arith", "json", "dyck")
NAMES = NESTED + ("date", "even_length")
DIGITS = "0123456789"

# Literal pattern; note that ``[1,2]`` and ``[0,1]`` admit a comma.
DATE_PATTERN = (
    r"^(0[1-9]|[1,2][0-9]|3[0,1])\/(01|03|05|07|08|10|12)\/([0-9][0-9])$"
    r"|^((0[1-9]|[1,2][0-9]|30)\/(04|06|09|11)\/([0-9][0-9]))$"
    r"|^((0[1-9]|[1,2][0-9])\/(02)\/([0-9][0-9]))$"
)

TERMINALS = {
    "arith": DIGITS + "()+-*/",
    "json": DIGITS + '{},:"',
    "dyck": "()[]",
    "date": DIGITS + "/,",
    "even_length": "ab",
}

_JUNK = "xyz#~"


class InvalidTargetSpec(ValueError):
    pass


def default_alphabet() -> Alphabet:
    """Code points 0-255 in ascending order."""
    return Alphabet(tuple(chr(c) for c in range(256)))


def tiny_alphabet(name: str) -> Alphabet:
    """The grammar's terminals plus two symbols the grammar never uses."""
    terminals = TERMINALS[name]
    if name == "even_length":
        return Alphabet(tuple(terminals))
    junk = [c for c in _JUNK if c not in terminals][:2]
    return Alphabet(tuple(sorted(set(terminals) | set(junk))))


@dataclass(frozen=True)
class TargetSpec:
    name: str
    depth: int | None = None
    alphabet: Alphabet | None = None

    def __post_init__(self):
        if self.name not in NAMES:
            raise InvalidTargetSpec(f"unknown target {self.name!r}; expected one of {NAMES}")
        if self.name in NESTED:
            if self.depth is None or self.depth < 1:
                raise InvalidTargetSpec(f"{self.name} needs a positive nesting depth")
        elif self.depth is not None:
            raise InvalidTargetSpec(f"{self.name} takes no depth")
        if self.alphabet is None:
            object.__setattr__(self, "alphabet", default_alphabet())
        needed = set() if self.name == "even_length" else set(TERMINALS[self.name])
        missing = needed - set(self.alphabet.symbols)
        if missing:
            raise InvalidTargetSpec(
                f"alphabet lacks terminals {''.join(sorted(missing))!r} used by {self.name}"
            )

    @property
    def label(self) -> str:
        return self.name if self.depth is None else f"{self.name}-{self.depth}"


# Regular expressions as nested tuples:
#   ("sym", frozenset)  ("cat", (e1, ...))  ("alt", (e1, ...))  ("star", e)  ("eps",)  ("none",)
#   ("sep", e, s) is e (s e)* with a single copy of e, keeping deep nestings linear.

EPS = ("eps",)
NONE = ("none",)


def sym(chars) -> tuple:
    return ("sym", frozenset(chars))


def lit(text: str) -> tuple:
    return cat(*(sym(c) for c in text))


def cat(*parts) -> tuple:
    if any(p == NONE for p in parts):
        return NONE
    parts = tuple(p for p in parts if p != EPS)
    if not parts:
        return EPS
    return parts[0] if len(parts) == 1 else ("cat", parts)


def alt(*parts) -> tuple:
    parts = tuple(p for p in parts if p != NONE)
    if not parts:
        return NONE
    return parts[0] if len(parts) == 1 else ("alt", parts)


def star(e) -> tuple:
    return EPS if e in (EPS, NONE) else ("star", e)


def separated(e, s) -> tuple:
    return NONE if e == NONE else ("sep", e, s)


def arith_expr(depth: int) -> tuple:
    # E -> F*E | F/E | F and F -> T+F | T-F | T flatten to T ([+-*/] T)*
    # as far as the string language goes; T -> ( E ) | D.
    def e(d):
        return separated(t(d), sym("+-*/"))

    def t(d):
        if d == 0:
            return sym(DIGITS)
        return alt(cat(sym("("), e(d - 1), sym(")")), sym(DIGITS))

    return e(depth)


def json_expr(depth: int, alphabet: Alphabet) -> tuple:
    # E -> { C },  C -> P (, P)*,  P -> T : V,  V -> E | T | N,  T -> "H" | ""
    h = sym(a for a in alphabet.symbols if a != '"')
    t = alt(cat(sym('"'), h, sym('"')), lit('""'))

    def e(d):
        if d == 0:
            return NONE
        p = cat(t, sym(":"), alt(e(d - 1), t, sym(DIGITS)))
        return cat(sym("{"), separated(p, sym(",")), sym("}"))

    return e(depth)


def dyck_expr(depth: int) -> tuple:
    # S -> ( S ) S | [ S ] S | eps
    def s(d):
        if d == 0:
            return EPS
        inner = s(d - 1)
        return star(alt(cat(sym("("), inner, sym(")")), cat(sym("["), inner, sym("]"))))

    return s(depth)


def date_expr() -> tuple:
    d09 = sym(DIGITS)
    d19 = sym("123456789")
    day_lo = alt(cat(sym("0"), d19), cat(sym("1,2"), d09))
    year = cat(d09, d09)
    slash = sym("/")
    long_months = alt(*(lit(m) for m in ("01", "03", "05", "07", "08", "10", "12")))
    short_months = alt(*(lit(m) for m in ("04", "06", "09", "11")))
    return alt(
        cat(alt(day_lo, cat(sym("3"), sym("0,1"))), slash, long_months, slash, year),
        cat(alt(day_lo, lit("30")), slash, short_months, slash, year),
        cat(day_lo, slash, lit("02"), slash, year),
    )


def even_length_expr(alphabet: Alphabet) -> tuple:
    any_sym = sym(alphabet.symbols)
    return star(cat(any_sym, any_sym))


class _Nfa:
    def __init__(self):
        self.eps: list[list[int]] = []
        self.edges: list[list[tuple[frozenset, int]]] = []

    def new(self) -> int:
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1

    def build(self, e) -> tuple[int, int]:
        """Thompson fragment for ``e``; returns (entry, exit)."""
        kind = e[0]
        s, t = self.new(), self.new()
        if kind == "eps":
            self.eps[s].append(t)
        elif kind == "none":
            pass
        elif kind == "sym":
            self.edges[s].append((e[1], t))
        elif kind == "cat":
            cur = s
            for part in e[1]:
                i, o = self.build(part)
                self.eps[cur].append(i)
                cur = o
            self.eps[cur].append(t)
        elif kind == "alt":
            for part in e[1]:
                i, o = self.build(part)
                self.eps[s].append(i)
                self.eps[o].append(t)
        elif kind == "sep":
            i, o = self.build(e[1])
            si, so = self.build(e[2])
            self.eps[s].append(i)
            self.eps[o] += [t, si]
            self.eps[so].append(i)
        elif kind == "star":
            i, o = self.build(e[1])
            self.eps[s] += [i, t]
            self.eps[o] += [i, t]
        else:
            raise ValueError(f"unknown expression node {kind!r}")
        return s, t

    def closure(self, states) -> frozenset:
        seen = set(states)
        todo = list(states)
        while todo:
            q = todo.pop()
            for r in self.eps[q]:
                if r not in seen:
                    seen.add(r)
                    todo.append(r)
        return frozenset(seen)


def compile_expr(expr, alphabet: Alphabet) -> Dfa:
    """Minimal DFA for an expression, via epsilon-NFA and subset construction."""
    nfa = _Nfa()
    entry, final = nfa.build(expr)
    symbols = alphabet.symbols
    start = nfa.closure([entry])
    ids = {start: 0}
    subsets = [start]
    rows = []
    i = 0
    while i < len(subsets):
        current = subsets[i]
        moves: dict[str, set[int]] = {}
        for q in current:
            for chars, r in nfa.edges[q]:
                for c in chars:
                    moves.setdefault(c, set()).add(r)
        row = []
        closures: dict[frozenset, frozenset] = {}
        for a in symbols:
            raw = frozenset(moves.get(a, ()))
            nxt = closures.get(raw)
            if nxt is None:
                nxt = closures[raw] = nfa.closure(raw)
            if nxt not in ids:
                ids[nxt] = len(subsets)
                subsets.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
        i += 1
    accepting = [k for k, sub in enumerate(subsets) if final in sub]
    return minimize(Dfa(alphabet, np.array(rows, dtype=np.int64), 0, accepting))


def build(spec: TargetSpec) -> Dfa:
    alphabet = spec.alphabet
    if spec.name == "arith":
        expr = arith_expr(spec.depth)
    elif spec.name == "json":
        expr = json_expr(spec.depth, alphabet)
    elif spec.name == "dyck":
        expr = dyck_expr(spec.depth)
    elif spec.name == "date":
        expr = date_expr()
    else:
        expr = even_length_expr(alphabet)
    return compile_expr(expr, alphabet)


DESK_DEPTHS = {"arith": 2, "json": 1, "dyck": 2}
FULL_DEPTHS = {"arith": 3, "json": 2, "dyck": 4}

# (l_min, l_max) used for sampling each target.
LENGTH_RANGES = {
    "arith": (100, 200),
    "json": (25, 40),
    "dyck": (10, 20),
    "date": (8, 40),
}


def desk_spec(name: str, alphabet: str = "tiny", depth: int | None = None) -> TargetSpec:
    """A target at desk scale: small depth and, by default, a tiny alphabet."""
    if depth is None:
        depth = DESK_DEPTHS.get(name)
    alpha = tiny_alphabet(name) if alphabet == "tiny" else default_alphabet()
    return TargetSpec(name, depth if name in NESTED else None, alpha)
