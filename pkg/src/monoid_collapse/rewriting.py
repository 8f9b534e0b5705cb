"""String rewriting systems over a finite alphabet.

Words are tuples of symbol indices into an :class:`Alphabet`.  The empty
tuple is the identity of the presented monoid.  Reduction uses a fixed
strategy (leftmost occurrence, then lowest rule index) so that every
computation is reproducible even for systems that are not confluent.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .errors import FuelExhausted, OrderViolation

Word = tuple  # tuple[int, ...]

DEFAULT_REDUCTION_FUEL = 100_000

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class Alphabet:
    """Ordered generating set.  ``order`` lists the symbols in ascending order
    for shortlex comparison; by default it is the listing order."""

    symbols: tuple
    order: tuple | None = None
    _rank: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols}")
        for s in symbols:
            if not isinstance(s, str) or not _IDENT.match(s):
                raise ValueError(f"symbol {s!r} is not an identifier")
        order = symbols if self.order is None else tuple(self.order)
        if sorted(order) != sorted(symbols):
            raise ValueError("order must list every symbol exactly once")
        object.__setattr__(self, "order", order)
        pos = {s: i for i, s in enumerate(order)}
        object.__setattr__(self, "_rank", tuple(pos[s] for s in symbols))

    def __len__(self):
        return len(self.symbols)

    def index(self, symbol):
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise KeyError(symbol) from None

    def shortlex_key(self, word):
        rank = self._rank
        return (len(word), tuple(rank[x] for x in word))

    def format(self, word, empty="1"):
        if not word:
            return empty
        names = [self.symbols[x] for x in word]
        if all(len(s) == 1 for s in self.symbols):
            return "".join(names)
        return " ".join(names)

    def parse(self, text):
        """Parse a word.  Whitespace separates symbols; a token that is not a
        symbol is split greedily into the longest matching symbols.  ``1`` and
        the empty string denote the empty word."""
        word = []
        for token in text.split():
            if token in ("1", "ε"):
                continue
            if token in self.symbols:
                word.append(self.symbols.index(token))
                continue
            i = 0
            while i < len(token):
                for j in range(len(token), i, -1):
                    if token[i:j] in self.symbols:
                        word.append(self.symbols.index(token[i:j]))
                        i = j
                        break
                else:
                    raise KeyError(token[i:])
        return tuple(word)


@dataclass(frozen=True)
class Rule:
    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs:
            raise ValueError("rule left-hand side must be nonempty")
        if self.lhs == self.rhs:
            raise ValueError("rule sides must differ")


@dataclass(frozen=True)
class CriticalPair:
    source: tuple
    left_result: tuple
    right_result: tuple
    overlap_kind: str  # "suffix_prefix" | "containment"
    rules: tuple = ()


@dataclass(frozen=True)
class Completeness:
    status: str  # "unverified" | "complete" | "failed_confluence"
    witness: CriticalPair | None = None
    note: str = ""

    @property
    def certified(self):
        return self.status == "complete"


UNVERIFIED = Completeness("unverified")


@dataclass(frozen=True)
class RewritingSystem:
    alphabet: Alphabet
    rules: tuple
    completeness: Completeness = UNVERIFIED
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        rules = tuple(r if isinstance(r, Rule) else Rule(*r) for r in self.rules)
        object.__setattr__(self, "rules", rules)
        n = len(self.alphabet)
        for r in rules:
            if any(not 0 <= x < n for x in r.lhs + r.rhs):
                raise ValueError(f"rule {r} uses a symbol outside the alphabet")
        by_first = {}
        for i, r in enumerate(rules):
            by_first.setdefault(r.lhs[0], []).append((i, r.lhs, r.rhs))
        self._cache["by_first"] = by_first
        self._cache["lhs_set"] = frozenset(r.lhs for r in rules)
        self._cache["lhs_lengths"] = tuple(sorted({len(r.lhs) for r in rules}))
        self._cache["nf"] = {}

    def __hash__(self):
        return hash((self.alphabet, self.rules))

    @classmethod
    def from_strings(cls, letters, rules, order=None):
        """Build a system over single-character symbols, e.g.
        ``RewritingSystem.from_strings("ab", [("ab", "")])``."""
        alphabet = Alphabet(tuple(letters), tuple(order) if order else None)
        return cls(alphabet, tuple(Rule(alphabet.parse(" ".join(l)), alphabet.parse(" ".join(r)))
                                   for l, r in rules))

    @property
    def max_lhs_length(self):
        lengths = self._cache["lhs_lengths"]
        return lengths[-1] if lengths else 0

    @property
    def certified(self):
        return self.completeness.certified

    def word(self, text):
        return self.alphabet.parse(text)

    def format(self, word):
        return self.alphabet.format(word)

    def format_rule(self, rule):
        return f"{self.format(rule.lhs)} -> {self.format(rule.rhs)}"

    def ends_with_lhs(self, word):
        """True iff some left-hand side is a suffix of ``word``."""
        lhs_set = self._cache["lhs_set"]
        n = len(word)
        for k in self._cache["lhs_lengths"]:
            if k > n:
                break
            if word[n - k:] in lhs_set:
                return True
        return False


def normal_form(w, rs, fuel=DEFAULT_REDUCTION_FUEL):
    """Reduce ``w`` to an irreducible word.

    Applies the leftmost occurrence of any left-hand side, choosing the
    lowest-index rule among those matching there, until nothing applies.
    """
    w = tuple(w)
    memo = rs._cache["nf"]
    hit = memo.get(w)
    if hit is not None:
        return hit
    by_first = rs._cache["by_first"]
    back = max(rs.max_lhs_length - 1, 0)
    cur = list(w)
    i = 0
    steps = 0
    while i < len(cur):
        for _, lhs, rhs in by_first.get(cur[i], ()):
            k = len(lhs)
            if tuple(cur[i:i + k]) == lhs:
                cur[i:i + k] = rhs
                steps += 1
                if steps > fuel:
                    raise FuelExhausted(f"normal_form of {rs.format(w)}", fuel)
                i = max(0, i - back)
                break
        else:
            i += 1
    result = tuple(cur)
    memo[w] = result
    return result


def is_irreducible(w, rs):
    by_first = rs._cache["by_first"]
    for i, x in enumerate(w):
        for _, lhs, _ in by_first.get(x, ()):
            if tuple(w[i:i + len(lhs)]) == lhs:
                return False
    return True


class Junction(NamedTuple):
    kind: str  # "irreducible" | "minimal_at_whole" | "reducible_at_prefix"
    prefix: tuple | None = None


IRREDUCIBLE = "irreducible"
MINIMAL_AT_WHOLE = "minimal_at_whole"
REDUCIBLE_AT_PREFIX = "reducible_at_prefix"


def junction_reducibility(u, v, rs):
    """Locate the shortest prefix ``v*`` of ``v`` such that ``u v*`` is
    reducible.  ``u`` and ``v`` must be irreducible, so any occurrence of a
    left-hand side spans the junction and ends inside ``v``."""
    u = tuple(u)
    for k in range(1, len(v) + 1):
        if rs.ends_with_lhs(u + tuple(v[:k])):
            if k == len(v):
                return Junction(MINIMAL_AT_WHOLE)
            return Junction(REDUCIBLE_AT_PREFIX, tuple(v[:k]))
    return Junction(IRREDUCIBLE)


def _occurrences(word, factor):
    k = len(factor)
    return [p for p in range(len(word) - k + 1) if word[p:p + k] == factor]


def critical_pairs(rs):
    pairs = []
    rules = rs.rules
    for i, ri in enumerate(rules):
        li = ri.lhs
        for j, rj in enumerate(rules):
            lj = rj.lhs
            for k in range(1, min(len(li), len(lj))):
                if li[-k:] == lj[:k]:
                    pairs.append(CriticalPair(
                        source=li + lj[k:],
                        left_result=ri.rhs + lj[k:],
                        right_result=li[:-k] + rj.rhs,
                        overlap_kind="suffix_prefix",
                        rules=(i, j),
                    ))
            if i != j and len(lj) <= len(li):
                for p in _occurrences(li, lj):
                    pairs.append(CriticalPair(
                        source=li,
                        left_result=ri.rhs,
                        right_result=li[:p] + rj.rhs + li[p + len(lj):],
                        overlap_kind="containment",
                        rules=(i, j),
                    ))
    return pairs


def check_order(rs):
    key = rs.alphabet.shortlex_key
    for rule in rs.rules:
        if not key(rule.lhs) > key(rule.rhs):
            raise OrderViolation(rule, rs.format_rule(rule))


def check_complete(rs):
    """Certify completeness: every rule shortlex-decreasing and every critical
    pair joinable.  Returns a copy of ``rs`` with the certificate attached."""
    check_order(rs)
    probe = RewritingSystem(rs.alphabet, rs.rules)
    for pair in critical_pairs(probe):
        if normal_form(pair.left_result, probe) != normal_form(pair.right_result, probe):
            return replace(rs, completeness=Completeness("failed_confluence", pair))
    return replace(rs, completeness=Completeness("complete"))


def opposite(rs):
    """The system presenting the opposite monoid: every rule reversed letterwise.

    Reversal is an anti-automorphism of the free monoid carrying reductions to
    reductions, so a complete system stays complete even when the reversed
    rules are no longer shortlex-decreasing.
    """
    hit = rs._cache.get("opposite")
    if hit is not None:
        return hit
    rules = tuple(Rule(r.lhs[::-1], r.rhs[::-1]) for r in rs.rules)
    completeness = rs.completeness
    if completeness.certified:
        completeness = Completeness("complete", note="inherited by reversal")
    else:
        completeness = UNVERIFIED
    op = RewritingSystem(rs.alphabet, rules, completeness)
    rs._cache["opposite"] = op
    return op


def _contains(word, factor):
    return bool(_occurrences(word, factor))


def knuth_bendix(rs, fuel=500):
    """Shortlex Knuth-Bendix completion.  ``fuel`` bounds the number of rule
    additions; rules are inter-reduced after each addition."""
    alphabet = rs.alphabet
    key = alphabet.shortlex_key
    rules = []
    pending = deque((r.lhs, r.rhs) for r in rs.rules)
    added = 0

    def current():
        return RewritingSystem(alphabet, tuple(Rule(l, r) for l, r in rules))

    while True:
        while pending:
            u, v = pending.popleft()
            system = current()
            u, v = normal_form(u, system), normal_form(v, system)
            if u == v:
                continue
            if key(u) < key(v):
                u, v = v, u
            added += 1
            if added > fuel:
                raise FuelExhausted("knuth_bendix", fuel)
            kept = []
            for l, r in rules:
                if _contains(l, u):
                    pending.append((l, r))
                else:
                    kept.append((l, r))
            kept.append((u, v))
            rules = kept
            system = current()
            rules = [(l, normal_form(r, system)) for l, r in rules]
        system = current()
        for pair in critical_pairs(system):
            a = normal_form(pair.left_result, system)
            b = normal_form(pair.right_result, system)
            if a != b:
                pending.append((a, b))
        if not pending:
            return check_complete(system)


def require_complete(rs):
    from .errors import NotComplete

    if not rs.certified:
        raise NotComplete("operation requires a certified complete rewriting system")
