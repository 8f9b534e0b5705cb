"""Morse complexes of the lifted collapsing scheme.

The boundary of an essential cell is pushed along the gradient flow until
only essential cells remain: a redundant face τ matched with σ = c(τ) at
index j is replaced by ``-(-1)^j Σ_{k≠j} (-1)^k d_k σ``, collapsible and
degenerate faces vanish.  Outer faces of the lifted cells carry monoid
coefficients, which are composed along the way, so the result is a free
resolution over ZM (one-sided) or ZM ⊗ ZM^op (two-sided).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .collapsing import _guard_breach, classify_brown
from .errors import DSquaredNonzero, FuelExhausted, GuardViolation
from .homology import ChainComplexZ, IntegerMatrix
from .monoid import irreducible_words, multiply
from .nerve import Variant, boundary_faces
from .rewriting import MINIMAL_AT_WHOLE, junction_reducibility, opposite, require_complete
from .ring import BiRingElement, MonoidRingElement

DEFAULT_FLOW_FUEL = 100_000

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))


def enumerate_essential(rs, dim):
    """Essential cells of Brown's scheme in one dimension.

    The first entry is a letter; every later entry makes a minimally
    reducible junction with its predecessor.  Such an entry is shorter than
    the longest left-hand side, because the rule occurrence must end on its
    last letter, which keeps the search finite.
    """
    if dim == 0:
        return [()]
    letters = [w for w in irreducible_words(rs, 1) if w]
    cands = [w for w in irreducible_words(rs, max(rs.max_lhs_length - 1, 0)) if w]
    cells = [(a,) for a in letters]
    for _ in range(dim - 1):
        cells = [c + (v,) for c in cells for v in cands
                 if junction_reducibility(c[-1], v, rs).kind == MINIMAL_AT_WHOLE]
    return cells


class _Budget:
    def __init__(self, fuel, what):
        self.fuel = fuel
        self.left = fuel
        self.what = what

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted(self.what, self.fuel)


def _accumulate(out, chain, coeff, left, right, rs):
    for (cell, l, r), c in chain.items():
        key = (cell, multiply(left, l, rs) if left else l, multiply(r, right, rs) if right else r)
        v = out.get(key, 0) + coeff * c
        if v:
            out[key] = v
        else:
            out.pop(key, None)


def _flow(cell, variant, rs, budget):
    """Flow of a BM cell (identity coefficients) onto essential cells, as a
    dict ``(essential cell, left, right) -> int``."""
    budget.tick()
    memo = rs._cache.setdefault(("flow", variant), {})
    hit = memo.get(cell)
    if hit is not None:
        return hit
    cls = classify_brown(cell, rs)
    if cls.essential:
        result = {(cell, (), ()): 1}
    elif cls.collapsible:
        result = {}
    else:
        if _guard_breach(cls, len(cell), variant) is not None:
            raise GuardViolation(cell, cls.index, variant)
        sigma, j = cls.partner, cls.index
        sign_j = -1 if j % 2 else 1
        result = {}
        for f in boundary_faces(sigma, variant, rs):
            if f.index == j or f.degenerate:
                continue
            sub = _flow(f.simplex, variant, rs, budget)
            _accumulate(result, sub, -sign_j * f.sign, f.left, f.right, rs)
    memo[cell] = result
    return result


def _boundary_terms(e, variant, rs, fuel):
    budget = _Budget(fuel, f"flow from {e}")
    out = {}
    for f in boundary_faces(e, variant, rs):
        if f.degenerate:
            continue
        _accumulate(out, _flow(f.simplex, variant, rs, budget), f.sign, f.left, f.right, rs)
    return out


def _mirror_cell(cell):
    return tuple(w[::-1] for w in reversed(cell))


def morse_boundary(e, variant, rs, fuel=DEFAULT_FLOW_FUEL):
    """Boundary of an essential cell as ``{essential cell: ring element}``.

    ``left`` and ``bi`` use Brown's scheme on ``rs`` directly.  ``right`` is
    the mirror image of the ``left`` boundary over the opposite monoid, so its
    essential cells are the mirrors of those of the opposite system.
    ``trivial`` returns integers.
    """
    require_complete(rs)
    variant = Variant(variant)
    if variant == Variant.RIGHT:
        op = opposite(rs)
        chain = morse_boundary(_mirror_cell(e), Variant.LEFT, op, fuel)
        return {
            _mirror_cell(c): MonoidRingElement({w[::-1]: k for w, k in r.terms.items()})
            for c, r in chain.items()
        }
    terms = _boundary_terms(e, variant, rs, fuel)
    out = {}
    for (cell, l, r), c in terms.items():
        if variant == Variant.TRIVIAL:
            out[cell] = out.get(cell, 0) + c
        elif variant == Variant.LEFT:
            out.setdefault(cell, MonoidRingElement())
            out[cell] = out[cell] + MonoidRingElement.of(l, c)
        else:
            out.setdefault(cell, BiRingElement())
            out[cell] = out[cell] + BiRingElement.of(l, r, c)
    return {c: v for c, v in out.items() if v}


@dataclass
class Resolution:
    """Free resolution of the trivial module (or of ZM as a bimodule).

    ``boundaries[n][i][j]`` is the coefficient of ``basis[n-1][i]`` in the
    boundary of ``basis[n][j]``; ``boundaries[0]`` is empty.  Right-module
    coefficients act on the right of the basis elements.
    """

    variant: Variant
    rs: object
    basis: list
    boundaries: list
    augmentation: dict = field(default_factory=dict)

    @property
    def max_dim(self):
        return len(self.basis) - 1

    @property
    def ranks(self):
        return [len(b) for b in self.basis]

    def zero(self):
        return BiRingElement() if self.variant == Variant.BI else MonoidRingElement()

    def compose(self, outer, inner):
        """Coefficient of the composite of two boundary steps: ``outer`` is the
        coefficient in the first step, ``inner`` in the second."""
        if self.variant == Variant.RIGHT:
            return inner.mul(outer, self.rs)
        return outer.mul(inner, self.rs)

    def d_squared_witness(self):
        """First ``(n, basis cell)`` whose boundary of boundary is nonzero."""
        for n in range(2, self.max_dim + 1):
            outer, inner = self.boundaries[n], self.boundaries[n - 1]
            for j, cell in enumerate(self.basis[n]):
                for k in range(len(self.basis[n - 2])):
                    total = self.zero()
                    for i in range(len(self.basis[n - 1])):
                        a, b = outer[i][j], inner[k][i]
                        if a and b:
                            total = total + self.compose(a, b)
                    if total:
                        return n, cell
        return None

    def format_boundary(self, n):
        rs = self.rs
        rows = []
        for j, cell in enumerate(self.basis[n]):
            terms = {}
            for i, target in enumerate(self.basis[n - 1]):
                entry = self.boundaries[n][i][j]
                if entry:
                    terms[_format_cell(target, rs)] = entry.format(rs)
            rows.append({"cell": _format_cell(cell, rs), "boundary": terms})
        return rows


def _format_cell(cell, rs):
    return "(" + ", ".join(rs.format(w) for w in cell) + ")"


def build_resolution(rs, max_dim, variant=Variant.LEFT, fuel=DEFAULT_FLOW_FUEL):
    require_complete(rs)
    variant = Variant(variant)
    if variant == Variant.TRIVIAL:
        raise ValueError("build a module resolution and trivialize it instead")
    if variant == Variant.RIGHT:
        left = build_resolution(opposite(rs), max_dim, Variant.LEFT, fuel)
        basis = [[_mirror_cell(c) for c in layer] for layer in left.basis]
        boundaries = [
            [[MonoidRingElement({w[::-1]: k for w, k in e.terms.items()}) for e in row]
             for row in mat]
            for mat in left.boundaries
        ]
        res = Resolution(variant, rs, basis, boundaries, {(): 1})
    else:
        basis = [enumerate_essential(rs, n) for n in range(max_dim + 1)]
        boundaries = [[]]
        for n in range(1, max_dim + 1):
            index = {c: i for i, c in enumerate(basis[n - 1])}
            zero = BiRingElement() if variant == Variant.BI else MonoidRingElement()
            mat = [[zero for _ in basis[n]] for _ in basis[n - 1]]
            for j, e in enumerate(basis[n]):
                for cell, coeff in morse_boundary(e, variant, rs, fuel).items():
                    mat[index[cell]][j] = coeff
            boundaries.append(mat)
        res = Resolution(variant, rs, basis, boundaries, {(): 1})
    witness = res.d_squared_witness()
    if witness is not None:
        raise DSquaredNonzero(*witness)
    return res


def trivialize(r):
    """Tensor with the trivial module: every monoid coefficient becomes 1."""
    ranks = r.ranks
    boundaries = {}
    for n in range(1, r.max_dim + 1):
        entries = {}
        for i, row in enumerate(r.boundaries[n]):
            for j, e in enumerate(row):
                v = e.augmentation()
                if v:
                    entries[(i, j)] = v
        boundaries[n] = IntegerMatrix(ranks[n - 1], ranks[n], entries)
    return ChainComplexZ(ranks, boundaries)
