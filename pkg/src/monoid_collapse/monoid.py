"""The monoid presented by a complete rewriting system.

Elements are normal-form words.  Cayley digraphs are built over a bounded
enumeration of elements; anything that would leave the bound is dropped and
the graph is flagged as ``bounded``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

from .rewriting import normal_form, require_complete

# Elements are represented directly by their normal-form words.
MonoidElement = tuple


def multiply(x, y, rs):
    return normal_form(tuple(x) + tuple(y), rs)


def irreducible_words(rs, length_bound):
    """All irreducible words of length at most ``length_bound``, in shortlex order."""
    letters = sorted(range(len(rs.alphabet)), key=lambda x: rs.alphabet.shortlex_key((x,)))
    layer = [()]
    out = [()]
    for _ in range(length_bound):
        nxt = []
        for w in layer:
            for x in letters:
                v = w + (x,)
                # prefixes of irreducible words are irreducible
                if not rs.ends_with_lhs(v):
                    nxt.append(v)
        out.extend(nxt)
        layer = nxt
    return out


def enumerate_elements(rs, length_bound):
    """Return ``(elements, finite)`` with ``finite`` either ``"yes"`` or ``"unknown"``."""
    require_complete(rs)
    words = irreducible_words(rs, length_bound)
    if not words:
        return [], "yes"
    longest = [w for w in words if len(w) == length_bound] if length_bound else [()]
    extends = any(
        not rs.ends_with_lhs(w + (x,)) for w in longest for x in range(len(rs.alphabet))
    )
    if extends:
        return words, "unknown"
    present = set(words)
    closed = all(
        multiply(w, (x,), rs) in present for w in words for x in range(len(rs.alphabet))
    )
    return words, "yes" if closed else "unknown"


def finite_elements(rs, limit=64):
    """Elements of a finite monoid, growing the length bound until closure."""
    from .errors import NotFinite

    bound = max(rs.max_lhs_length, 1)
    while bound <= limit:
        elements, finite = enumerate_elements(rs, bound)
        if finite == "yes":
            return elements
        bound *= 2
    raise NotFinite(f"no finiteness certificate up to word length {limit}")


@dataclass
class CayleyDigraph:
    vertices: list
    arcs: list  # (source, target, label word)
    bounded: bool
    two_sided: bool = False

    def to_networkx(self):
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for s, t, a in self.arcs:
            g.add_edge(s, t, label=a)
        return g


def _generators(rs, A):
    if A is None:
        return [(x,) for x in range(len(rs.alphabet))]
    out = []
    for a in A:
        a = normal_form(a, rs)
        if a not in out:
            out.append(a)
    return out


def right_cayley_graph(rs, A=None, length_bound=4):
    """Arcs ``m -> m·a`` labelled by ``a`` for every generator ``a`` in ``A``."""
    elements, _ = enumerate_elements(rs, length_bound)
    present = set(elements)
    arcs = []
    bounded = False
    for m in elements:
        for a in _generators(rs, A):
            t = multiply(m, a, rs)
            if t in present:
                arcs.append((m, t, a))
            else:
                bounded = True
    return CayleyDigraph(elements, arcs, bounded)


def two_sided_cayley_graph(rs, A=None, length_bound=3):
    """Vertices are pairs ``(m_L, m_R)``; arcs run ``(m_L, a·m_R) -> (m_L·a, m_R)``."""
    elements, _ = enumerate_elements(rs, length_bound)
    present = set(elements)
    vertices = [(l, r) for l in elements for r in elements]
    arcs = []
    bounded = False
    for l in elements:
        for r in elements:
            for a in _generators(rs, A):
                src = (l, multiply(a, r, rs))
                dst = (multiply(l, a, rs), r)
                if src[1] in present and dst[0] in present:
                    arcs.append((src, dst, a))
                else:
                    bounded = True
    return CayleyDigraph(vertices, arcs, bounded, two_sided=True)


@dataclass
class OrbitPartition:
    classes: list  # list of frozensets

    def class_of(self, v):
        for c in self.classes:
            if v in c:
                return c
        raise KeyError(v)


def weak_orbits(g):
    comps = nx.weakly_connected_components(g.to_networkx())
    order = {v: i for i, v in enumerate(g.vertices)}
    classes = sorted((frozenset(c) for c in comps), key=lambda c: min(order[v] for v in c))
    return OrbitPartition(classes)


@dataclass(frozen=True)
class F1Certificate:
    verdict: str  # "connected" | "disconnected" | "inconclusive"
    witness: tuple | None = None
    evidence: str = ""


def _invariant_weight(rs, A):
    """A letter weighting preserved by every rule and vanishing on ``A``.

    Such a weighting is a monoid homomorphism to the integers that is constant
    on weak components of the right Cayley graph, so any letter of nonzero
    weight is a vertex not weakly connected to the identity.
    """
    import sympy

    n = len(rs.alphabet)
    rows = []
    for r in rs.rules:
        rows.append([r.lhs.count(x) - r.rhs.count(x) for x in range(n)])
    for a in A:
        rows.append([a.count(x) for x in range(n)])
    if not rows:
        rows = [[0] * n]
    for vec in sympy.Matrix(rows).nullspace():
        for x in range(n):
            if vec[x] != 0:
                return {y: Fraction(str(vec[y])) for y in range(n)}, x
    return None, None


def f1_certificate(rs, A=None, length_bound=4):
    require_complete(rs)
    gens = _generators(rs, A)
    g = right_cayley_graph(rs, gens, length_bound)
    _, finite = enumerate_elements(rs, length_bound)
    home = weak_orbits(g).class_of(())
    outside = [v for v in g.vertices if v not in home]
    if finite == "yes":
        if outside:
            return F1Certificate("disconnected", outside[0], "complete enumeration")
        return F1Certificate("connected", None, "complete enumeration")
    weight, letter = _invariant_weight(rs, gens)
    if weight is not None:
        return F1Certificate(
            "disconnected", normal_form((letter,), rs), "rule-invariant letter weight"
        )
    return F1Certificate("inconclusive", outside[0] if outside else None, "enumeration bound reached")
