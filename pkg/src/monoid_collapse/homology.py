"""Exact integer linear algebra and homology.

Matrices are sparse dictionaries of Python integers.  The Smith normal form
is computed by elementary row and column operations, always pivoting on an
entry of least absolute value (ties broken by the Markowitz fill-in
estimate), so no precision is ever lost.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .errors import BoundaryMismatch, NotFinite


@dataclass
class IntegerMatrix:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)  # (i, j) -> nonzero int

    def __post_init__(self):
        self.entries = {k: v for k, v in self.entries.items() if v}
        for i, j in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v}
        return cls(len(rows), ncols, entries)

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, {})

    def to_rows(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self):
        return IntegerMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self):
        return not self.entries


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple
    rank: int


def _diagonal_entries(m):
    """Absolute values of the pivots of a diagonalization of ``m``."""
    rows = {}
    cols = {}
    for (i, j), v in m.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)
    pivots = []

    def add_row(dst, src, q):
        # rows[dst] -= q * rows[src]
        rd = rows[dst]
        for j, v in rows[src].items():
            nv = rd.get(j, 0) - q * v
            if nv:
                if j not in rd:
                    cols[j].add(dst)
                rd[j] = nv
            elif j in rd:
                del rd[j]
                cols[j].discard(dst)

    def eliminate(i, j):
        """Clear row i and column j around a unit pivot."""
        p = rows[i][j]
        for k in list(cols[j]):
            if k != i:
                add_row(k, i, rows[k][j] * p)
                if not rows[k]:
                    del rows[k]
        for l in rows[i]:
            if l != j:
                cols[l].discard(i)
        pivots.append(1)
        del rows[i]
        del cols[j]

    # unit pivots first, one column at a time, shortest row wins
    found = True
    while found:
        found = False
        for j in list(cols):
            if j not in cols:
                continue
            units = [k for k in cols[j] if abs(rows[k][j]) == 1]
            if units:
                eliminate(min(units, key=lambda k: len(rows[k])), j)
                found = True
        for j in [j for j, c in cols.items() if not c]:
            del cols[j]

    while rows:
        best = None
        for i, row in rows.items():
            ri = len(row) - 1
            for j, v in row.items():
                key = (abs(v), ri * (len(cols[j]) - 1))
                if best is None or key < best[0]:
                    best = (key, i, j)
                    if key == (1, 0):
                        break
            if best[0] == (1, 0):
                break
        _, i, j = best
        p = rows[i][j]
        # clear column j with row operations
        for k in list(cols[j]):
            if k != i:
                add_row(k, i, rows[k][j] // p)
                if not rows[k]:
                    del rows[k]
        if len(cols[j]) > 1:
            continue
        # column j is now the pivot alone; column operations touch only row i
        row = rows[i]
        for l in list(row):
            if l != j:
                r = row[l] - (row[l] // p) * p
                if r:
                    row[l] = r
                else:
                    del row[l]
                    cols[l].discard(i)
        if len(row) > 1:
            continue
        pivots.append(abs(p))
        del rows[i]
        del cols[j]
    return pivots


def _divisibility_chain(values):
    ds = sorted(values)
    changed = True
    while changed:
        changed = False
        for a in range(len(ds)):
            for b in range(a + 1, len(ds)):
                x, y = ds[a], ds[b]
                g = gcd(x, y)
                l = x // g * y
                if (x, y) != (g, l):
                    ds[a], ds[b] = g, l
                    changed = True
        ds.sort()
    return ds


def smith_normal_form(m):
    """Invariant factors d1 | d2 | ... of ``m``, padded with zeros to
    ``min(rows, cols)`` entries."""
    if isinstance(m, (list, tuple)):
        m = IntegerMatrix.from_rows(m)
    pivots = _diagonal_entries(m)
    ones = sum(1 for p in pivots if p == 1)
    chain = [1] * ones + _divisibility_chain([p for p in pivots if p != 1])
    size = min(m.rows, m.cols)
    return SNFResult(tuple(chain + [0] * (size - len(chain))), len(chain))


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = ()

    @property
    def trivial(self):
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


@dataclass
class ChainComplexZ:
    """``boundaries[n]`` is the matrix of C_n -> C_{n-1} (rows index C_{n-1}).
    Degrees may start below zero via ``offset`` (augmented complexes)."""

    ranks: list
    boundaries: dict
    offset: int = 0
    _snf: dict = field(default_factory=dict, repr=False)

    @property
    def top(self):
        return self.offset + len(self.ranks) - 1

    def rank(self, n):
        k = n - self.offset
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def boundary(self, n):
        if n in self.boundaries:
            return self.boundaries[n]
        if n > self.top:
            raise ValueError(f"complex is truncated below degree {n}")
        return IntegerMatrix.zero(self.rank(n - 1), self.rank(n))

    def snf(self, n):
        if n not in self._snf:
            self._snf[n] = smith_normal_form(self.boundary(n))
        return self._snf[n]


def homology_of_complex(c, n):
    """H_n = ker d_n / im d_{n+1}, from Smith normal forms."""
    d_n, d_up = c.boundary(n), c.boundary(n + 1)
    if not (d_n @ d_up).is_zero():
        raise BoundaryMismatch(n + 1)
    kernel = c.rank(n) - c.snf(n).rank
    up = c.snf(n + 1)
    return HomologyGroup(kernel - up.rank, tuple(d for d in up.diagonal if d > 1))


def bar_complex_oracle(rs, max_dim):
    """Normalized bar complex of a finite monoid, built by brute force: one
    generator per tuple of non-identity elements."""
    from .monoid import finite_elements
    from .nerve import face, is_degenerate

    try:
        elements = finite_elements(rs)
    except NotFinite:
        raise NotFinite("the bar-complex oracle needs a certified finite monoid") from None
    nonid = [e for e in elements if e]
    cells = [list(itertools.product(nonid, repeat=n)) for n in range(max_dim + 1)]
    boundaries = {}
    for n in range(1, max_dim + 1):
        index = {c: i for i, c in enumerate(cells[n - 1])}
        entries = {}
        for j, c in enumerate(cells[n]):
            for i in range(n + 1):
                f = face(c, i, rs)
                if is_degenerate(f):
                    continue
                key = (index[f], j)
                entries[key] = entries.get(key, 0) + (-1 if i % 2 else 1)
        boundaries[n] = IntegerMatrix(len(cells[n - 1]), len(cells[n]), entries)
    return ChainComplexZ([len(c) for c in cells], boundaries)


@dataclass(frozen=True)
class Exactness:
    exact: bool
    failed_dim: int | None = None
    defect: HomologyGroup | None = None


def _expand(res, elements):
    """Integer matrices of the resolution's boundaries, one row/column per
    (monoid element(s), basis cell)."""
    from .monoid import multiply
    from .nerve import Variant

    rs = res.rs
    eidx = {e: k for k, e in enumerate(elements)}
    size = len(elements)
    if res.variant == Variant.BI:
        coeffs = [(x, y) for x in elements for y in elements]
    else:
        coeffs = [(x,) for x in elements]
    cidx = {c: k for k, c in enumerate(coeffs)}
    ncoef = len(coeffs)

    def target(coef, term):
        if res.variant == Variant.LEFT:
            return (multiply(coef[0], term, rs),)
        if res.variant == Variant.RIGHT:
            return (multiply(term, coef[0], rs),)
        a, b = term
        return (multiply(coef[0], a, rs), multiply(b, coef[1], rs))

    mats = {}
    for n in range(1, res.max_dim + 1):
        rk_src, rk_dst = len(res.basis[n]), len(res.basis[n - 1])
        entries = {}
        for i, row in enumerate(res.boundaries[n]):
            for j, e in enumerate(row):
                for term, c in e.terms.items():
                    for coef in coeffs:
                        key = (cidx[target(coef, term)] * rk_dst + i, cidx[coef] * rk_src + j)
                        entries[key] = entries.get(key, 0) + c
        mats[n] = IntegerMatrix(ncoef * rk_dst, ncoef * rk_src, entries)
    # augmentation onto Z (one-sided) or ZM (two-sided)
    aug = {}
    for coef in coeffs:
        if res.variant == Variant.BI:
            aug[(eidx[multiply(coef[0], coef[1], rs)], cidx[coef])] = 1
        else:
            aug[(0, cidx[coef])] = 1
    aug_rows = size if res.variant == Variant.BI else 1
    mats[0] = IntegerMatrix(aug_rows, ncoef * len(res.basis[0]), aug)
    ranks = [aug_rows] + [ncoef * len(b) for b in res.basis]
    return ChainComplexZ(ranks, mats, offset=-1)


def verify_exactness(res, up_to):
    """Check that the augmented resolution is exact in degrees -1..up_to by
    expanding each free module over Z along the monoid's elements."""
    from .monoid import finite_elements

    if res.max_dim < up_to + 1:
        raise ValueError(f"resolution must extend to degree {up_to + 1}")
    try:
        elements = finite_elements(res.rs)
    except NotFinite:
        raise NotFinite("exactness over ZM is only checked for finite monoids") from None
    complex_ = _expand(res, elements)
    for n in range(-1, up_to + 1):
        h = homology_of_complex(complex_, n)
        if not h.trivial:
            return Exactness(False, n, h)
    return Exactness(True)
