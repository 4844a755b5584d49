"""Diagnostic SVG drawings.

Layout is barycentric: outer-face vertices sit on a regular polygon and
every other vertex is the average of its neighbours (one sparse-ish
linear solve).  Not pretty for graphs that are not 3-connected, but
deterministic.
"""

from __future__ import annotations

import html
import math
from typing import Optional

import numpy as np

from .embedding import JordanCurve, PlaneGraph, SpanningTree
from .engine import GameState

__all__ = ["tutte_layout", "render_svg"]

SIZE = 480
MARGIN = 24

STYLE = """
  .edge { stroke: #888; stroke-width: 1; }
  .tree { stroke: #333; stroke-width: 1.5; }
  .curve { stroke: #000; stroke-width: 3.5; }
  .arc { stroke: #000; stroke-width: 2; stroke-dasharray: 6,4; fill: none; }
  .node { fill: #fff; stroke: #000; stroke-width: 1; }
  .burned { fill: #d62728; stroke: #000; stroke-width: 1; }
  .protected { fill: #1f77b4; stroke: #000; stroke-width: 1; }
  .label { font: 9px sans-serif; text-anchor: middle; dominant-baseline: central; }
"""


def tutte_layout(g: PlaneGraph) -> np.ndarray:
    n = g.n
    pos = np.zeros((n, 2))
    if n == 1:
        return pos
    walk = g.faces.walks[g.faces.face_of(*g.outer)]
    ring = list(dict.fromkeys(a for a, _ in walk))
    k = len(ring)
    for idx, v in enumerate(ring):
        ang = math.pi / 2 - 2 * math.pi * idx / k
        pos[v] = (math.cos(ang), math.sin(ang))
    fixed = set(ring)
    free = [v for v in range(n) if v not in fixed]
    if free:
        col = {v: i for i, v in enumerate(free)}
        a = np.zeros((len(free), len(free)))
        b = np.zeros((len(free), 2))
        for v in free:
            i = col[v]
            a[i, i] = g.degree(v)
            for w in g.adjacency[v]:
                if w in col:
                    a[i, col[w]] -= 1
                else:
                    b[i] += pos[w]
        pos[free] = np.linalg.solve(a, b)
    return pos


def _xy(p):
    scale = (SIZE - 2 * MARGIN) / 2
    return MARGIN + scale * (1 + p[0]), MARGIN + scale * (1 - p[1])


def render_svg(
    g: PlaneGraph,
    tree: Optional[SpanningTree] = None,
    curve: Optional[JordanCurve] = None,
    state: Optional[GameState] = None,
    burned=None,
    protected=None,
) -> str:
    """SVG text: tree edges solid, curve bold, the closing arc dashed."""
    pos = tutte_layout(g)
    if state is not None:
        burned, protected = state.burned, state.protected
    burned = set(burned or ())
    protected = set(protected or ())
    curve_edges = set()
    arc = None
    if curve is not None:
        cyc = curve.cycle
        for i in range(len(cyc)):
            a, b = cyc[i], cyc[(i + 1) % len(cyc)]
            curve_edges.add(frozenset((a, b)))
        arc = (curve.arc.u, curve.arc.v)
        curve_edges.discard(frozenset(arc))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<style>{STYLE}</style>",
    ]
    for u, v in g.edges():
        if frozenset((u, v)) in curve_edges:
            cls = "curve"
        elif tree is not None and tree.is_tree_edge(u, v):
            cls = "tree"
        else:
            cls = "edge"
        (x1, y1), (x2, y2) = _xy(pos[u]), _xy(pos[v])
        out.append(f'<line class="{cls}" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    if arc is not None:
        (x1, y1), (x2, y2) = _xy(pos[arc[0]]), _xy(pos[arc[1]])
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        # a new arc is bowed so it stays visible over straight edges
        bow = 0.0 if curve.arc.existing else 0.15
        cx, cy = mx + bow * (y2 - y1), my - bow * (x2 - x1)
        out.append(f'<path class="arc" d="M {x1:.2f} {y1:.2f} Q {cx:.2f} {cy:.2f} {x2:.2f} {y2:.2f}"/>')
    for v in range(g.n):
        x, y = _xy(pos[v])
        cls = "burned" if v in burned else "protected" if v in protected else "node"
        out.append(f'<circle class="{cls}" cx="{x:.2f}" cy="{y:.2f}" r="7"/>')
        label = html.escape(g.labels[v]) if g.labels else str(v)
        out.append(f'<text class="label" x="{x:.2f}" y="{y:.2f}">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
