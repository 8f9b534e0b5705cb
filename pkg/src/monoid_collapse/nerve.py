"""Cells of the bar construction BM and its equivariant thickenings.

A simplex of BM is a tuple of normal-form words; the identity (empty word)
may occur and makes the simplex degenerate.  A *cell* is a nondegenerate
simplex.  The one-sided and two-sided nerves of the Cayley-graph categories
have cells ``m·τ`` and ``m·τ·s`` with τ a cell of BM; their face maps differ
from those of BM only in the outer faces, which push the first (last) entry
into the left (right) coefficient.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .monoid import irreducible_words, multiply


class Variant(str, enum.Enum):
    TRIVIAL = "trivial"
    LEFT = "left"
    RIGHT = "right"
    BI = "bi"

    @property
    def absorbs_left(self):
        return self in (Variant.LEFT, Variant.BI)

    @property
    def absorbs_right(self):
        return self in (Variant.RIGHT, Variant.BI)


def is_degenerate(simplex):
    return any(len(w) == 0 for w in simplex)


@dataclass(frozen=True)
class EquivariantCell:
    left: tuple
    cell: tuple
    right: tuple = ()
    variant: Variant = Variant.LEFT

    def __post_init__(self):
        if self.variant == Variant.LEFT and self.right:
            raise ValueError("left-equivariant cells carry no right coefficient")
        if self.variant == Variant.RIGHT and self.left:
            raise ValueError("right-equivariant cells carry no left coefficient")

    @property
    def dim(self):
        return len(self.cell)

    def act(self, m, s, rs):
        """``m·(self)·s``; the unused side of a one-sided variant is ignored."""
        left = multiply(m, self.left, rs) if self.variant.absorbs_left else ()
        right = multiply(self.right, s, rs) if self.variant.absorbs_right else ()
        return EquivariantCell(left, self.cell, right, self.variant)


@dataclass(frozen=True)
class SignedFace:
    sign: int
    left: tuple
    simplex: tuple
    right: tuple
    index: int

    @property
    def degenerate(self):
        return is_degenerate(self.simplex)


def face(simplex, i, rs):
    """The i-th face map of BM."""
    n = len(simplex)
    if not 0 <= i <= n or n == 0:
        raise IndexError(f"face index {i} out of range for a {n}-simplex")
    if i == 0:
        return simplex[1:]
    if i == n:
        return simplex[:-1]
    return simplex[:i - 1] + (multiply(simplex[i - 1], simplex[i], rs),) + simplex[i + 1:]


def equivariant_face(left, simplex, right, i, rs):
    """The i-th face of ``left·simplex·right`` in the two-sided nerve."""
    n = len(simplex)
    if i == 0 and n:
        return multiply(left, simplex[0], rs), simplex[1:], right
    if i == n and n:
        return left, simplex[:-1], multiply(simplex[-1], right, rs)
    return left, face(simplex, i, rs), right


def degeneracy(simplex, i):
    if not 0 <= i <= len(simplex):
        raise IndexError(f"degeneracy index {i} out of range for a {len(simplex)}-simplex")
    return simplex[:i] + ((),) + simplex[i:]


def boundary_faces(cell, variant, rs):
    """All n+1 signed faces of an n-cell, with coefficients absorbed as the
    variant dictates.  Degenerate faces are returned, flagged."""
    variant = Variant(variant)
    n = len(cell)
    out = []
    for i in range(n + 1):
        left, simplex, right = equivariant_face((), cell, (), i, rs)
        if not variant.absorbs_left:
            left = ()
        if not variant.absorbs_right:
            right = ()
        out.append(SignedFace(-1 if i % 2 else 1, left, simplex, right, i))
    return out


def enumerate_cells(rs, dim, total_length_bound):
    """All n-cells of BM whose entries have total length within the bound,
    ordered by total length and then entrywise shortlex."""
    if dim == 0:
        return [()]
    words = [w for w in irreducible_words(rs, total_length_bound) if w]
    key = rs.alphabet.shortlex_key
    by_len = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)
    out = []

    def extend(prefix, budget, slots):
        if slots == 0:
            out.append(prefix)
            return
        for length in range(1, budget - (slots - 1) + 1):
            for w in by_len.get(length, ()):
                extend(prefix + (w,), budget - length, slots - 1)

    extend((), total_length_bound, dim)
    out.sort(key=lambda c: (sum(map(len, c)), tuple(key(w) for w in c)))
    return out


def all_simplices(elements, dim):
    """Every dim-simplex over the given element list, degenerate ones included."""
    return list(itertools.product(elements, repeat=dim))
