"""Graphviz DOT export for Cayley digraphs and matching digraphs."""

from __future__ import annotations

from .collapsing import format_cell


def _quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _vertex_name(v, rs, two_sided):
    if two_sided:
        return f"({rs.format(v[0])}, {rs.format(v[1])})"
    return rs.format(v)


def cayley_to_dot(g, rs):
    """One node per element (or pair of elements), one arc per generator
    action, labelled by the generator.  Loops are kept."""
    name = "two_sided_cayley" if g.two_sided else "right_cayley"
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in g.vertices:
        label = _vertex_name(v, rs, g.two_sided)
        lines.append(f"  {_quote(label)};")
    for s, t, a in g.arcs:
        src = _quote(_vertex_name(s, rs, g.two_sided))
        dst = _quote(_vertex_name(t, rs, g.two_sided))
        lines.append(f"  {src} -> {dst} [label={_quote(rs.format(a))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def matching_to_dot(g, rs):
    """Two layers (n-cells, (n+1)-cells) in separate ranks.  Up-arcs, from a
    redundant cell to its collapsible partner, are bold; down-arcs are plain
    and labelled with the face index."""
    lines = [f"digraph matching_{g.n} {{", "  rankdir=BT;"]
    for layer, cells, shape in ((g.n, g.lower, "ellipse"), (g.n + 1, g.upper, "box")):
        lines.append(f"  subgraph layer_{layer} {{")
        lines.append("    rank=same;")
        for c in cells:
            lines.append(f"    {_quote(format_cell(c, rs))} [shape={shape}, layer={layer}];")
        lines.append("  }")
    for s, t in g.up_arcs:
        lines.append(f"  {_quote(format_cell(s, rs))} -> {_quote(format_cell(t, rs))}"
                     " [kind=up, style=bold, color=red];")
    for s, t, j in g.down_arcs:
        lines.append(f"  {_quote(format_cell(s, rs))} -> {_quote(format_cell(t, rs))}"
                     f" [kind=down, label=\"d{j}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
