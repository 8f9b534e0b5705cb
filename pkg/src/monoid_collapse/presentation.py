"""Presentation files.

Grammar, one directive per line, ``#`` starting a comment::

    alphabet: a b
    order: b < a            # optional; default is the alphabet order
    rule: a b ->            # empty right-hand side is the identity
    generators: a, b a      # optional generator subset for Cayley commands

Symbols are identifiers separated by whitespace.  Unknown directives,
duplicate declarations and undeclared symbols are rejected with the line
and column of the offending token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError, UndeclaredSymbol
from .rewriting import Alphabet, RewritingSystem, Rule

KEYS = ("alphabet", "order", "rule", "generators")
_TOKEN = re.compile(r"\S+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True)
class PresentationFile:
    alphabet: Alphabet
    equations: tuple  # (lhs word, rhs word) pairs
    order_declared: bool = False
    generators: tuple | None = None
    path: str | None = None

    def system(self):
        return RewritingSystem(self.alphabet, tuple(Rule(l, r) for l, r in self.equations))

    def serialize(self):
        a = self.alphabet
        fmt = lambda w: " ".join(a.symbols[x] for x in w)  # noqa: E731
        lines = ["alphabet: " + " ".join(a.symbols)]
        if self.order_declared:
            lines.append("order: " + " < ".join(a.order))
        for l, r in self.equations:
            lines.append(f"rule: {fmt(l)} ->" + (f" {fmt(r)}" if r else ""))
        if self.generators is not None:
            lines.append("generators: " + ", ".join(fmt(g) for g in self.generators))
        return "\n".join(lines) + "\n"


def presentation_of(rs, generators=None):
    """Presentation file for an existing system (e.g. a completed one)."""
    a = rs.alphabet
    return PresentationFile(a, tuple((r.lhs, r.rhs) for r in rs.rules),
                            order_declared=a.order != a.symbols, generators=generators)


def _tokens(text, start):
    return [(m.group(), start + m.start() + 1) for m in _TOKEN.finditer(text)]


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if ":" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError("expected 'key: value'", lineno, col)
        key, value = body.split(":", 1)
        key_col = len(key) - len(key.lstrip()) + 1
        key = key.strip()
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", lineno, key_col)
        yield lineno, key, _tokens(value, len(body) - len(value))


def parse_presentation(text, path=None):
    lines = list(_lines(text))
    symbols = None
    order = None
    for lineno, key, toks in lines:
        if key == "alphabet":
            if symbols is not None:
                raise ParseError("duplicate alphabet declaration", lineno, 1)
            symbols = []
            for tok, col in toks:
                if not _IDENT.match(tok):
                    raise ParseError(f"{tok!r} is not a symbol name", lineno, col)
                if tok in symbols:
                    raise ParseError(f"symbol {tok!r} declared twice", lineno, col)
                symbols.append(tok)
    declared = set(symbols or ())

    def word(toks, lineno):
        out = []
        for tok, col in toks:
            if tok not in declared:
                raise UndeclaredSymbol(tok, lineno, col)
            out.append(symbols.index(tok))
        return tuple(out)

    equations = []
    generators = None
    for lineno, key, toks in lines:
        if key == "order":
            if order is not None:
                raise ParseError("duplicate order declaration", lineno, 1)
            names = [t for t in toks if t[0] != "<"]
            seps = [t for t in toks if t[0] == "<"]
            if len(seps) != max(len(names) - 1, 0):
                raise ParseError("order must read 's1 < s2 < ...'", lineno, toks[0][1] if toks else 1)
            for tok, col in names:
                if tok not in declared:
                    raise UndeclaredSymbol(tok, lineno, col)
            order = [t for t, _ in names]
            if sorted(order) != sorted(symbols or ()):
                raise ParseError("order must list every symbol exactly once", lineno, 1)
        elif key == "rule":
            arrows = [i for i, (t, _) in enumerate(toks) if t == "->"]
            if len(arrows) != 1:
                col = toks[arrows[1]][1] if len(arrows) > 1 else (toks[0][1] if toks else 1)
                raise ParseError("a rule needs exactly one '->'", lineno, col)
            k = arrows[0]
            lhs, rhs = word(toks[:k], lineno), word(toks[k + 1:], lineno)
            if not lhs:
                raise ParseError("empty left-hand side", lineno, toks[k][1])
            if lhs == rhs:
                raise ParseError("rule sides are identical", lineno, toks[k][1])
            equations.append((lhs, rhs))
        elif key == "generators":
            if generators is not None:
                raise ParseError("duplicate generators declaration", lineno, 1)
            groups, cur = [], []
            for tok, col in toks:
                for piece in re.split(r"(,)", tok):
                    if piece == ",":
                        groups.append(cur)
                        cur = []
                    elif piece:
                        cur.append((piece, col))
            groups.append(cur)
            generators = tuple(word(g, lineno) for g in groups)
    if symbols is None:
        symbols = []
    alphabet = Alphabet(tuple(symbols), tuple(order) if order else None)
    return PresentationFile(alphabet, tuple(equations), order is not None, generators, path)


def read_presentation(path):
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), path=str(path))
