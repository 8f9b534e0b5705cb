"""Brown's collapsing scheme on BM, its equivariant lifts, and verifiers.

A classifier is any function ``(cell, rs) -> CellClass``; :func:`classify_brown`
is the one built from a complete rewriting system.  The verifiers take the
classifier as a parameter so that deliberately broken schemes can be fed
through the same checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import networkx as nx

from .errors import FuelExhausted, GuardViolation
from .monoid import irreducible_words
from .nerve import (
    EquivariantCell,
    Variant,
    enumerate_cells,
    equivariant_face,
    face,
    is_degenerate,
)
from .rewriting import (
    IRREDUCIBLE,
    REDUCIBLE_AT_PREFIX,
    junction_reducibility,
    require_complete,
)

ESSENTIAL = "essential"
REDUNDANT = "redundant"
COLLAPSIBLE = "collapsible"


@dataclass(frozen=True)
class CellClass:
    verdict: str
    partner: object = None
    index: int | None = None

    @property
    def essential(self):
        return self.verdict == ESSENTIAL

    @property
    def redundant(self):
        return self.verdict == REDUNDANT

    @property
    def collapsible(self):
        return self.verdict == COLLAPSIBLE


_ESSENTIAL = CellClass(ESSENTIAL)


@dataclass(frozen=True)
class Truncation:
    max_dim: int
    total_length_bound: int

    def __post_init__(self):
        if self.max_dim < 1 or self.total_length_bound < 1:
            raise ValueError("truncation bounds must be positive")


def classify_brown(c, rs):
    """Scan a BM cell left to right and decide its role in Brown's matching.

    A first entry longer than one letter is split after its first letter.
    Otherwise the first junction that is not minimally reducible decides:
    an irreducible junction makes the cell collapsible onto the merged face,
    a junction reducible at a proper prefix ``v*`` of the right word makes it
    redundant, matched with the cell that splits off ``v*``.
    """
    memo = rs._cache.setdefault("brown", {})
    hit = memo.get(c)
    if hit is not None:
        return hit
    result = _classify_brown(c, rs)
    memo[c] = result
    return result


def _classify_brown(c, rs):
    n = len(c)
    if n == 0:
        return _ESSENTIAL
    if len(c[0]) > 1:
        return CellClass(REDUNDANT, (c[0][:1], c[0][1:]) + c[1:], 1)
    for i in range(1, n):
        u, v = c[i - 1], c[i]
        j = junction_reducibility(u, v, rs)
        if j.kind == IRREDUCIBLE:
            return CellClass(COLLAPSIBLE, c[:i - 1] + (u + v,) + c[i + 1:], i)
        if j.kind == REDUCIBLE_AT_PREFIX:
            k = len(j.prefix)
            return CellClass(REDUNDANT, c[:i] + (v[:k], v[k:]) + c[i + 1:], i + 1)
    return _ESSENTIAL


# --- lifting ---------------------------------------------------------------

def _guard_breach(cls, dim, variant):
    """Index at which a lift would absorb a coefficient, or None."""
    if cls.essential:
        return None
    top = dim + 1 if cls.redundant else dim
    if variant.absorbs_left and cls.index == 0:
        return cls.index
    if variant.absorbs_right and cls.index == top:
        return cls.index
    return None


def _lift(ec, cls):
    if cls.essential:
        return cls
    return CellClass(
        cls.verdict, EquivariantCell(ec.left, cls.partner, ec.right, ec.variant), cls.index
    )


def lift_classify(ec, rs, classifier=classify_brown):
    """Classify ``m·τ·s`` by the class of τ, carrying the coefficients over to
    the partner.  Raises :class:`GuardViolation` when the matched face would
    absorb a coefficient, because the lift would then not be a matching."""
    cls = classifier(ec.cell, rs)
    breach = _guard_breach(cls, ec.dim, Variant(ec.variant))
    if breach is not None:
        raise GuardViolation(ec.cell, breach, ec.variant)
    return _lift(ec, cls)


# --- matching digraphs -----------------------------------------------------

def _parts(vertex):
    if isinstance(vertex, EquivariantCell):
        return vertex.left, vertex.cell, vertex.right
    return (), vertex, ()


def _make(template, left, cell, right):
    if isinstance(template, EquivariantCell):
        v = template.variant
        return EquivariantCell(
            left if v.absorbs_left else (), cell, right if v.absorbs_right else (), v
        )
    return cell


def _classify_vertex(vertex, rs, classifier):
    left, cell, right = _parts(vertex)
    cls = classifier(cell, rs)
    if cls.essential:
        return cls
    return CellClass(cls.verdict, _make(vertex, left, cls.partner, right), cls.index)


def _vertex_face(vertex, j, rs):
    left, cell, right = _parts(vertex)
    if isinstance(vertex, EquivariantCell):
        l2, s2, r2 = equivariant_face(left, cell, right, j, rs)
        return _make(vertex, l2, s2, r2)
    return face(cell, j, rs)


def out_arcs(vertex, n, rs, classifier=classify_brown):
    """Arcs leaving ``vertex`` in the matching digraph between levels n, n+1.

    Returns ``(target, kind, face_index)`` triples with kind ``"up"`` or
    ``"down"``.  Works for BM cells and for equivariant cells alike.
    """
    _, cell, _ = _parts(vertex)
    cls = _classify_vertex(vertex, rs, classifier)
    if len(cell) == n and cls.redundant:
        return [(cls.partner, "up", cls.index)]
    if len(cell) == n + 1 and cls.collapsible:
        arcs = []
        for j in range(n + 2):
            target = _vertex_face(vertex, j, rs)
            if is_degenerate(_parts(target)[1]):
                continue
            tcls = _classify_vertex(target, rs, classifier)
            if not tcls.redundant:
                continue
            if tcls.partner == vertex and tcls.index == j:
                continue
            arcs.append((target, "down", j))
        return arcs
    return []


@dataclass
class MatchingDigraph:
    n: int
    lower: list
    upper: list
    up_arcs: list = field(default_factory=list)    # (redundant, collapsible)
    down_arcs: list = field(default_factory=list)  # (collapsible, redundant, face index)
    truncated: bool = False

    def to_networkx(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.lower, layer=self.n)
        g.add_nodes_from(self.upper, layer=self.n + 1)
        for s, t in self.up_arcs:
            g.add_edge(s, t, kind="up")
        for s, t, j in self.down_arcs:
            g.add_edge(s, t, kind="down", index=j)
        return g


def build_matching_digraph(rs, n, t, variant=Variant.TRIVIAL, classifier=classify_brown,
                           coefficients=None):
    """The bipartite digraph between n- and (n+1)-cells within a truncation.

    For equivariant variants the vertices are the BM cells decorated with
    every coefficient drawn from ``coefficients`` (default: elements of
    length at most 1)."""
    require_complete(rs)
    variant = Variant(variant)
    if t is None:
        return MatchingDigraph(n, [], [])
    lower_base = enumerate_cells(rs, n, t.total_length_bound)
    upper_base = enumerate_cells(rs, n + 1, t.total_length_bound)
    if variant == Variant.TRIVIAL:
        lower, upper = lower_base, upper_base
    else:
        coeffs = coefficients if coefficients is not None else irreducible_words(rs, 1)
        lefts = coeffs if variant.absorbs_left else [()]
        rights = coeffs if variant.absorbs_right else [()]

        def decorate(cells):
            return [EquivariantCell(m, c, s, variant) for c in cells for m in lefts for s in rights]

        lower, upper = decorate(lower_base), decorate(upper_base)
    g = MatchingDigraph(n, lower, upper)
    members = set(lower) | set(upper)
    for v in lower:
        for target, _, _ in out_arcs(v, n, rs, classifier):
            if target in members:
                g.up_arcs.append((v, target))
            else:
                g.truncated = True
    for v in upper:
        for target, _, j in out_arcs(v, n, rs, classifier):
            if target in members:
                g.down_arcs.append((v, target, j))
            else:
                g.truncated = True
    return g


def find_cycle(g):
    try:
        return nx.find_cycle(g.to_networkx())
    except nx.NetworkXNoCycle:
        return None


# --- heights ---------------------------------------------------------------

def _height(vertex, rs, classifier, fuel, memo):
    budget = [fuel]
    on_stack = set()

    def visit(v):
        if v in memo:
            return memo[v]
        budget[0] -= 1
        if budget[0] < 0:
            raise FuelExhausted(f"height of {v}", fuel)
        if v in on_stack:
            raise FuelExhausted(f"descending chain through {v} is infinite", fuel)
        on_stack.add(v)
        cls = _classify_vertex(v, rs, classifier)
        if not cls.redundant:
            raise ValueError(f"{v} is not redundant")
        best = 0
        for j in range(len(_parts(v)[1]) + 2):
            if j == cls.index:
                continue
            pred = _vertex_face(cls.partner, j, rs)
            if is_degenerate(_parts(pred)[1]):
                continue
            if _classify_vertex(pred, rs, classifier).redundant:
                best = max(best, 1 + visit(pred))
        on_stack.discard(v)
        memo[v] = best
        return best

    return visit(vertex)


def cell_height(c, rs, fuel=100_000, classifier=classify_brown):
    """Longest descending chain of immediate predecessors below a redundant BM cell."""
    memo = rs._cache.setdefault(("height", classifier), {})
    return _height(tuple(c), rs, classifier, fuel, memo)


def lifted_height(ec, rs, fuel=100_000, classifier=classify_brown):
    """Height of an equivariant cell, computed from the lifted predecessor
    relation (outer faces absorb coefficients) rather than from its base."""
    return _height(ec, rs, classifier, fuel, {})


# --- path lifting ----------------------------------------------------------

def random_base_path(tau, n, rs, length, rng, classifier=classify_brown):
    """A random directed walk of at most ``length`` arcs in the BM matching
    digraph starting at ``tau``."""
    path = [tau]
    for _ in range(length):
        arcs = out_arcs(path[-1], n, rs, classifier)
        if not arcs:
            break
        path.append(rng.choice(arcs)[0])
    return path


def lift_path(mu, path, n, rs, classifier=classify_brown):
    """Lift a BM walk starting at the projection of ``mu`` to a walk from ``mu``.

    From a redundant vertex the lift follows its up-arc; from a collapsible
    vertex it takes the same face index as the base walk does.
    """
    lifted = [mu]
    for k in range(1, len(path)):
        y = lifted[-1]
        cls = _classify_vertex(y, rs, classifier)
        if cls.redundant:
            lifted.append(cls.partner)
            continue
        base_prev, base_next = path[k - 1], path[k]
        for j in range(len(base_prev) + 1):
            if face(base_prev, j, rs) == base_next:
                z = _vertex_face(y, j, rs)
                if any(t == z for t, _, _ in out_arcs(y, n, rs, classifier)):
                    lifted.append(z)
                    break
        else:
            raise ValueError(f"no lift of arc {base_prev} -> {base_next} from {y}")
    return lifted


# --- verification ----------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    ok: bool
    checked: int
    witness: str | None = None

    def to_dict(self):
        return {"name": self.name, "ok": self.ok, "checked": self.checked,
                "witness": self.witness}


@dataclass
class SchemeReport:
    truncation: Truncation
    variant: Variant
    checks: list

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def check(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "ok": self.ok,
            "variant": self.variant.value,
            "truncation": {"max_dim": self.truncation.max_dim,
                           "total_length_bound": self.truncation.total_length_bound},
            "bounded_evidence": True,
            "checks": [c.to_dict() for c in self.checks],
        }


def format_cell(cell, rs):
    if isinstance(cell, EquivariantCell):
        core = format_cell(cell.cell, rs)
        left = rs.format(cell.left) + "·" if cell.left else ""
        right = "·" + rs.format(cell.right) if cell.right else ""
        return f"{left}{core}{right}"
    return "(" + ", ".join(rs.format(w) for w in cell) + ")"


class _Check:
    def __init__(self, name):
        self.name = name
        self.count = 0
        self.witness = None

    def fail(self, msg):
        if self.witness is None:
            self.witness = msg

    def result(self):
        return CheckResult(self.name, self.witness is None, self.count, self.witness)


def verify_scheme(rs, t, variant=Variant.BI, classifier=classify_brown, samples=50,
                  paths=25, path_length=6, seed=0):
    """Check the collapsing-scheme laws on a truncation and sample the
    equivariance axioms of the lifted scheme.  Everything here is bounded
    evidence, exhaustive only inside the truncation."""
    require_complete(rs)
    variant = Variant(variant)
    fmt = lambda c: format_cell(c, rs)  # noqa: E731
    L = t.total_length_bound
    cells = {n: enumerate_cells(rs, n, L) for n in range(t.max_dim + 2)}
    classes = {c: classifier(c, rs) for n in cells for c in cells[n]}

    involution = _Check("involution")
    for c, cls in classes.items():
        involution.count += 1
        if cls.essential:
            continue
        back = classifier(cls.partner, rs)
        want = COLLAPSIBLE if cls.redundant else REDUNDANT
        if back.verdict != want or back.partner != c or back.index != cls.index:
            involution.fail(f"{fmt(c)} is {cls.verdict} with partner {fmt(cls.partner)} "
                            f"at {cls.index}, but the partner is {back.verdict}")

    c1 = _Check("C1_bijection")
    for n in range(t.max_dim + 1):
        seen = {}
        for tau in cells[n]:
            cls = classes[tau]
            if not cls.redundant:
                continue
            c1.count += 1
            sigma = cls.partner
            if len(sigma) != n + 1 or not classifier(sigma, rs).collapsible:
                c1.fail(f"partner {fmt(sigma)} of {fmt(tau)} is not a collapsible {n + 1}-cell")
                continue
            if not 0 <= cls.index <= n + 1 or face(sigma, cls.index, rs) != tau:
                c1.fail(f"d_{cls.index}{fmt(sigma)} != {fmt(tau)}")
            if sigma in seen:
                c1.fail(f"{fmt(seen[sigma])} and {fmt(tau)} share partner {fmt(sigma)}")
            seen[sigma] = tau
        for sigma in cells[n + 1]:
            if classes[sigma].collapsible and sigma not in seen:
                c1.fail(f"collapsible {fmt(sigma)} is matched with no redundant cell")

    guard = _Check("guarded")
    need_left = variant in (Variant.LEFT, Variant.BI, Variant.TRIVIAL)
    need_right = variant in (Variant.RIGHT, Variant.BI, Variant.TRIVIAL)
    for n in range(t.max_dim + 1):
        for tau in cells[n]:
            cls = classes[tau]
            if not cls.redundant:
                continue
            guard.count += 1
            if (need_left and cls.index == 0) or (need_right and cls.index == n + 1):
                guard.fail(f"redundant {fmt(tau)} has collapse index {cls.index}")

    c2 = _Check("C2_acyclic")
    for n in range(t.max_dim + 1):
        g = build_matching_digraph(rs, n, t, Variant.TRIVIAL, classifier)
        c2.count += len(g.lower) + len(g.upper)
        cycle = find_cycle(g)
        if cycle:
            c2.fail(" -> ".join(fmt(u) for u, *_ in cycle))
    if c2.witness is None:
        try:
            for n in range(t.max_dim + 1):
                for tau in cells[n]:
                    if classes[tau].redundant:
                        cell_height(tau, rs, classifier=classifier)
        except FuelExhausted as exc:
            c2.fail(str(exc))

    rng = random.Random(seed)
    coeffs = [w for w in irreducible_words(rs, 3)]
    redundant = [c for n in range(1, t.max_dim + 1) for c in cells[n] if classes[c].redundant]
    every = [c for n in range(1, t.max_dim + 1) for c in cells[n]]

    lifted_variant = variant if variant != Variant.TRIVIAL else Variant.BI

    def decorate(cell):
        m = rng.choice(coeffs) if lifted_variant.absorbs_left else ()
        s = rng.choice(coeffs) if lifted_variant.absorbs_right else ()
        return EquivariantCell(m, cell, s, lifted_variant)

    a1 = _Check("A1_simplicial_action")
    a2 = _Check("A2_class_invariance")
    a3 = _Check("A3_matched_pairs")
    a45 = _Check("A4_A5_free_basis")
    c1_lift = _Check("C1_lifted")
    a6 = _Check("A6_height")
    lifting = _Check("path_lifting")
    if every:
        for _ in range(samples):
            base = rng.choice(every)
            ec = decorate(base)
            m, s = rng.choice(coeffs), rng.choice(coeffs)
            moved = ec.act(m, s, rs)
            a1.count += 1
            for j in range(ec.dim + 1):
                if _vertex_face(moved, j, rs) != _act(_vertex_face(ec, j, rs), m, s, rs):
                    a1.fail(f"d_{j} does not commute with the action on {fmt(ec)}")
            a2.count += 1
            if _classify_vertex(moved, rs, classifier).verdict != classes[base].verdict:
                a2.fail(f"{fmt(moved)} and {fmt(base)} differ in class")
    if redundant:
        for _ in range(samples):
            base = rng.choice(redundant)
            ec = decorate(base)
            m, s = rng.choice(coeffs), rng.choice(coeffs)
            cls = _classify_vertex(ec, rs, classifier)
            moved_cls = _classify_vertex(ec.act(m, s, rs), rs, classifier)
            a3.count += 1
            if moved_cls.partner != _act(cls.partner, m, s, rs):
                a3.fail(f"partner of {fmt(ec.act(m, s, rs))} is not the moved partner of {fmt(ec)}")
            a45.count += 1
            basis = EquivariantCell((), base, (), lifted_variant)
            basis_partner = _classify_vertex(basis, rs, classifier).partner
            if (basis_partner.left, basis_partner.right) != ((), ()) or \
                    _act(basis_partner, ec.left, ec.right, rs) != cls.partner:
                a45.fail(f"matched pair of {fmt(ec)} is not a translate of a basis pair")
            c1_lift.count += 1
            if _vertex_face(cls.partner, cls.index, rs) != ec:
                c1_lift.fail(f"d_{cls.index}{fmt(cls.partner)} != {fmt(ec)}")
            a6.count += 1
            try:
                h_lift = lifted_height(ec, rs, classifier=classifier)
                h_base = cell_height(base, rs, classifier=classifier)
            except FuelExhausted as exc:
                a6.fail(str(exc))
            else:
                if h_lift != h_base:
                    a6.fail(f"height {h_lift} of {fmt(ec)} differs from {h_base} of {fmt(base)}")
        for _ in range(paths):
            base = rng.choice(redundant)
            n = len(base)
            mu = decorate(base)
            path = random_base_path(base, n, rs, rng.randint(1, path_length), rng, classifier)
            lifting.count += 1
            try:
                lifted = lift_path(mu, path, n, rs, classifier)
            except ValueError as exc:
                lifting.fail(str(exc))
                continue
            if [_parts(v)[1] for v in lifted] != path:
                lifting.fail(f"lift of the walk from {fmt(base)} projects elsewhere")
    checks = [involution, c1, c2, guard, a1, a2, a3, a45, c1_lift, a6, lifting]
    return SchemeReport(t, variant, [c.result() for c in checks])


def _act(vertex, m, s, rs):
    if isinstance(vertex, EquivariantCell):
        return vertex.act(m, s, rs)
    return vertex
