"""
DOT and SVG drawings of profiles.

Lines are horizontal, one per sheet, top to bottom in label order; columns
run left to right; arcs are vertical arrows and loops small circles.  The
edge through infinity of each line is drawn as two dashed stubs leaving
the picture on the right and re-entering on the left.  Output depends only
on the input, so equal inputs give byte-identical text.
"""
from __future__ import annotations

from .covering import ExactCovering
from .model import Arc, EdgeSeg, ProfileGraph, Vertex, from_constellation

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")
DX, DY, MARGIN = 100, 60, 60
PERIODS_SHOWN = 3


def _window(profile: ProfileGraph):
    """Lines, arcs and edges to draw, plus whether the picture is a periodic window."""
    if not profile.is_implicit:
        return list(profile.lines), sorted(set(profile.arcs)), sorted(set(profile.edges)), False
    c = profile.constellation
    p = c.sheet_set.size
    lines = list(range(-p, (PERIODS_SHOWN - 1) * p))
    arcs = [Arc.at(i, j, c[i](j)) for i in range(1, c.q + 1) for j in lines]
    edges = [EdgeSeg(j, i) for j in lines for i in range(1, c.q + 1)]
    return lines, arcs, edges, True


def _colors(covering: ExactCovering | None) -> dict:
    if covering is None:
        return {}
    colors = {}
    for k, path in enumerate(covering):
        for item in path.arcs + path.edges:
            colors[item] = PALETTE[k % len(PALETTE)]
    return colors


def _overlay_color(item, colors, period):
    if item in colors or period is None:
        return colors.get(item)
    # periodic overlay: paths of residues 0..p-1 repeat every period
    if isinstance(item, EdgeSeg):
        shift = item.line - item.line % period
        key = EdgeSeg(item.line - shift, item.from_column)
    else:
        shift = item.from_line - item.from_line % period
        key = Arc.at(item.column, item.from_line - shift, item.to_line - shift)
    return colors.get(key)


def render_dot(profile: ProfileGraph, covering: ExactCovering | None = None) -> str:
    lines, arcs, edges, periodic = _window(profile)
    q = profile.q
    period = profile.sheet_set.size if periodic else None
    colors = _colors(covering)
    row = {j: k for k, j in enumerate(lines)}

    def node(v: Vertex) -> str:
        return f'"{v.column},{v.line}"'

    out = ["digraph profile {",
           '  layout=neato; splines=true;',
           '  node [shape=point, width=0.08];']
    if periodic:
        out.append(f"  // periodic window: lines {lines[0]}..{lines[-1]}, period {period}")
        out.append('  "top" [shape=plaintext, label="...", pos="0,60!"];')
        out.append(f'  "bottom" [shape=plaintext, label="...", pos="0,{-DY * len(lines)}!"];')
    for j in lines:
        out.append(f"  subgraph line_{j} {{".replace("line_-", "line_m"))
        out.append(f'    "label,{j}" [shape=plaintext, label="{j}", pos="0,{-DY * row[j]}!"];')
        for i in range(1, q + 1):
            out.append(f'    {node(Vertex(i, j))} [pos="{DX * i},{-DY * row[j]}!"];')
        out.append("  }")
    for e in edges:
        a, b = e.endpoints(q)
        color = _overlay_color(e, colors, period)
        attrs = ['class="edge"', "dir=none"]
        if e.is_infinity_edge(q):
            attrs = ['class="edge infinity"', "dir=none", "style=dashed"]
        if color:
            attrs += [f'color="{color}"', "penwidth=2"]
        out.append(f"  {node(a)} -> {node(b)} [{', '.join(attrs)}];")
    for a in arcs:
        color = _overlay_color(a, colors, period)
        attrs = ['class="arc loop"' if a.is_loop else 'class="arc"']
        if a.to_line not in row:
            stub = f'"stub,{a.column},{a.from_line}"'
            out.append(f'  {stub} [shape=plaintext, label="to {a.to_line}"];')
            target = stub
        else:
            target = node(a.head)
        if color:
            attrs += [f'color="{color}"', "penwidth=2"]
        out.append(f"  {node(a.tail)} -> {target} [{', '.join(attrs)}];")
    if covering is not None:
        for k, path in enumerate(covering):
            out.append(f"  // path {k + 1} from line {path.start}: {PALETTE[k % len(PALETTE)]}")
    out.append("}")
    return "\n".join(out) + "\n"


def render_svg(profile: ProfileGraph, covering: ExactCovering | None = None) -> str:
    lines, arcs, edges, periodic = _window(profile)
    q = profile.q
    period = profile.sheet_set.size if periodic else None
    colors = _colors(covering)
    row = {j: k for k, j in enumerate(lines)}
    top = MARGIN + (20 if periodic else 0)
    width = DX * (q + 1) + MARGIN
    height = top + DY * (len(lines) - 1) + MARGIN + (20 if periodic else 0)

    def xy(v: Vertex) -> tuple[int, int]:
        return DX * v.column, top + DY * row[v.line]

    used_colors = sorted(set(colors.values()))
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           "<defs>"]
    for k, color in enumerate(["#000000"] + used_colors):
        out.append(f'<marker id="arrow{k}" viewBox="0 0 10 10" refX="10" refY="5" '
                   f'markerWidth="6" markerHeight="6" orient="auto">'
                   f'<path d="M0,0 L10,5 L0,10 z" fill="{color}"/></marker>')
    out.append("</defs>")
    marker = {c: f"arrow{k + 1}" for k, c in enumerate(used_colors)}

    for i in range(1, q + 1):
        out.append(f'<text class="column" x="{DX * i}" y="{top - 30}" '
                   f'text-anchor="middle" font-size="12">a{i}</text>')
    if periodic:
        out.append(f'<text class="ellipsis" x="20" y="{top - 20}" font-size="14">...</text>')
        out.append(f'<text class="ellipsis" x="20" y="{height - 10}" font-size="14">...</text>')
    for j in lines:
        y = top + DY * row[j]
        out.append(f'<g class="line" id="line{j}">')
        out.append(f'<text x="10" y="{y + 4}" font-size="12">{j}</text>')
        for e in (e for e in edges if e.line == j):
            color = _overlay_color(e, colors, period) or "#000000"
            width_attr = 1 if color == "#000000" else 3
            x0, _ = xy(Vertex(e.from_column, j))
            if e.is_infinity_edge(q):
                x1 = DX * 1
                out.append(f'<line class="edge infinity" x1="{x0}" y1="{y}" x2="{width - 20}" y2="{y}" '
                           f'stroke="{color}" stroke-width="{width_attr}" stroke-dasharray="4 3"/>')
                out.append(f'<line class="edge infinity" x1="30" y1="{y}" x2="{x1}" y2="{y}" '
                           f'stroke="{color}" stroke-width="{width_attr}" stroke-dasharray="4 3"/>')
            else:
                x1 = DX * (e.from_column + 1)
                out.append(f'<line class="edge" x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" '
                           f'stroke="{color}" stroke-width="{width_attr}"/>')
        for i in range(1, q + 1):
            x, _ = xy(Vertex(i, j))
            out.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="3" fill="#000000"/>')
        out.append("</g>")

    for a in arcs:
        color = _overlay_color(a, colors, period) or "#000000"
        x, y0 = xy(a.tail)
        if a.is_loop:
            out.append(f'<circle class="arc loop" cx="{x + 8}" cy="{y0 - 8}" r="7" '
                       f'fill="none" stroke="{color}"/>')
            continue
        m = marker.get(color, "arrow0")
        # downward arcs left of the column, upward arcs right of it
        if a.to_line in row:
            _, y1 = xy(a.head)
            dx = -5 if y1 > y0 else 5
            y1 += -4 if y1 > y0 else 4
            out.append(f'<line class="arc" x1="{x + dx}" y1="{y0}" x2="{x + dx}" y2="{y1}" '
                       f'stroke="{color}" marker-end="url(#{m})"/>')
        else:
            down = a.to_line > a.from_line
            y1 = y0 + (25 if down else -25)
            dx = -5 if down else 5
            out.append(f'<line class="arc stub" x1="{x + dx}" y1="{y0}" x2="{x + dx}" y2="{y1}" '
                       f'stroke="{color}" marker-end="url(#{m})"/>')
            out.append(f'<text class="stub" x="{x + dx + 4}" y="{y1}" font-size="9">{a.to_line}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_diagram(profile, style: str = "dot", covering: ExactCovering | None = None) -> str:
    """Draw a profile (or constellation) as ``style`` ``"dot"`` or ``"svg"``."""
    if not isinstance(profile, ProfileGraph):
        profile = from_constellation(profile)
    if style == "dot":
        return render_dot(profile, covering)
    if style == "svg":
        return render_svg(profile, covering)
    raise ValueError(f"unknown style {style!r}")
