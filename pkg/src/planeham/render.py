"""SVG drawings of plane graphs.

3-connected simple graphs get a barycentric layout with the outer face pinned
to a regular polygon.  Anything else falls back to concentric BFS layers,
which keeps output deterministic but may cross edges.
"""

from __future__ import annotations

import math
from typing import Iterable
from xml.sax.saxutils import escape

import numpy as np

from .planar_core import PlaneGraph, vertex_connectivity

SIZE = 600.0
MARGIN = 40.0


def _polygon(k: int, radius: float, phase: float = math.pi / 2) -> list[tuple[float, float]]:
    return [(radius * math.cos(phase + 2 * math.pi * i / k), radius * math.sin(phase + 2 * math.pi * i / k)) for i in range(k)]


def tutte_layout(g: PlaneGraph) -> np.ndarray:
    n = g.num_vertices
    outer = list(dict.fromkeys(g.outer.vertices))
    pos = np.zeros((n, 2))
    pinned = set(outer)
    for v, xy in zip(outer, _polygon(len(outer), 1.0)):
        pos[v] = xy
    inner = [v for v in range(n) if v not in pinned]
    if inner:
        idx = {v: i for i, v in enumerate(inner)}
        A = np.zeros((len(inner), len(inner)))
        b = np.zeros((len(inner), 2))
        for v in inner:
            i = idx[v]
            for w in g.neighbors(v):
                A[i, i] += 1
                if w in idx:
                    A[i, idx[w]] -= 1
                else:
                    b[i] += pos[w]
        pos[inner] = np.linalg.solve(A, b)
    return pos


def layered_layout(g: PlaneGraph) -> np.ndarray:
    n = g.num_vertices
    depth = {v: 0 for v in g.outer.vertices}
    frontier = list(dict.fromkeys(g.outer.vertices))
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.neighbors(v):
                if w not in depth:
                    depth[w] = depth[v] + 1
                    nxt.append(w)
        frontier = nxt
    layers: dict[int, list[int]] = {}
    for v in range(n):
        layers.setdefault(depth.get(v, max(depth.values(), default=0) + 1), []).append(v)
    top = max(layers)
    pos = np.zeros((n, 2))
    for k, vs in layers.items():
        radius = 1.0 - k / (top + 1)
        if k == 0:
            vs = list(dict.fromkeys(g.outer.vertices))
        for v, xy in zip(vs, _polygon(len(vs), max(radius, 0.05), math.pi / 2 + 0.3 * k)):
            pos[v] = xy
    return pos


def layout(g: PlaneGraph) -> tuple[np.ndarray, str]:
    if g.is_simple() and g.num_vertices >= 4 and vertex_connectivity(g) >= 3:
        return tutte_layout(g), "tutte"
    return layered_layout(g), "layered"


def render_svg(
    g: PlaneGraph,
    highlight_edges: Iterable[int] = (),
    highlight_faces: Iterable[int] = (),
) -> str:
    pos, method = layout(g)
    scale = (SIZE - 2 * MARGIN) / 2
    pts = [(MARGIN + scale * (1 + x), MARGIN + scale * (1 - y)) for x, y in pos]
    hl_e, hl_f = set(highlight_edges), set(highlight_faces)

    def fmt(p):
        return f"{p[0]:.3f},{p[1]:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE:.0f}" height="{SIZE:.0f}" '
        f'viewBox="0 0 {SIZE:.0f} {SIZE:.0f}" data-layout="{method}">',
        '<g class="faces">',
    ]
    for f in g.faces:
        cls = "face outer" if f.is_outer else "face"
        fill = "none"
        if f.id in hl_f:
            cls += " highlight"
            fill = "#f6d38a"
        out.append(
            f'<polygon class="{cls}" data-face="{f.id}" fill="{fill}" stroke="none" '
            f'points="{" ".join(fmt(pts[v]) for v in f.vertices)}"/>'
        )
    out.append("</g>")
    out.append('<g class="edges">')
    for e in range(g.num_edges):
        u, v = g.ends(e)
        style = 'stroke="#c0392b" stroke-width="3.5"' if e in hl_e else 'stroke="#555" stroke-width="1.2"'
        cls = "edge highlight" if e in hl_e else "edge"
        out.append(
            f'<line class="{cls}" data-edge="{e}" x1="{pts[u][0]:.3f}" y1="{pts[u][1]:.3f}" '
            f'x2="{pts[v][0]:.3f}" y2="{pts[v][1]:.3f}" {style}/>'
        )
    out.append("</g>")
    out.append('<g class="vertices">')
    for v in range(g.num_vertices):
        x, y = pts[v]
        out.append(f'<circle class="vertex" data-vertex="{v}" cx="{x:.3f}" cy="{y:.3f}" r="4" fill="#222"/>')
        out.append(f'<text x="{x + 5:.3f}" y="{y - 5:.3f}" font-size="10">{escape(g.label(v))}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
