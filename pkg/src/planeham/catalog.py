"""Named fixtures: small polyhedra and the two worked examples.

Every entry is built from vertex coordinates of a straight-line drawing, so
the rotation at each vertex is the angular order of its neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .planar_core import PlaneGraph, build_plane_graph


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: PlaneGraph
    notes: str = ""
    extras: dict = field(default_factory=dict)


def from_coordinates(
    coords: dict[str, tuple[float, float]],
    edges: Sequence[tuple[str, str]],
    outer: Sequence[str] | None = None,
) -> PlaneGraph:
    """Plane graph of a straight-line drawing; rotations sorted by angle."""
    nbrs: dict[str, list[str]] = {v: [] for v in coords}
    seen = set()
    for u, v in edges:
        key = frozenset((u, v))
        if u == v or key in seen:
            raise ValueError(f"edge {u}{v} is a loop or repeated; straight-line drawings are simple")
        seen.add(key)
        nbrs[u].append(v)
        nbrs[v].append(u)

    def angle(u, w):
        (x0, y0), (x1, y1) = coords[u], coords[w]
        return math.atan2(y1 - y0, x1 - x0)

    rot = {v: sorted(ns, key=lambda w: angle(v, w)) for v, ns in nbrs.items()}
    return build_plane_graph(rot, outer=outer)


def _cycle_edges(names: Sequence[str]) -> list[tuple[str, str]]:
    return [(names[i], names[(i + 1) % len(names)]) for i in range(len(names))]


def prism(n: int) -> PlaneGraph:
    """Outer n-gon a1..an, inner n-gon b1..bn, rungs a_i b_i."""
    coords = {}
    for i in range(n):
        t = 2 * math.pi * i / n
        coords[f"a{i + 1}"] = (2 * math.cos(t), 2 * math.sin(t))
    for i in range(n):
        t = 2 * math.pi * i / n
        coords[f"b{i + 1}"] = (math.cos(t), math.sin(t))
    a = [f"a{i + 1}" for i in range(n)]
    b = [f"b{i + 1}" for i in range(n)]
    edges = _cycle_edges(a) + _cycle_edges(b) + list(zip(a, b))
    return from_coordinates(coords, edges, outer=a)


def k4() -> PlaneGraph:
    coords = {"a": (0.0, 2.0), "b": (-1.8, -1.0), "c": (1.8, -1.0), "d": (0.0, 0.0)}
    edges = [("a", "b"), ("b", "c"), ("c", "a"), ("d", "a"), ("d", "b"), ("d", "c")]
    return from_coordinates(coords, edges, outer=["a", "b", "c"])


def octahedron() -> PlaneGraph:
    coords = {}
    for i, deg in enumerate((90, 210, 330)):
        coords[f"o{i + 1}"] = (3 * math.cos(math.radians(deg)), 3 * math.sin(math.radians(deg)))
    for i, deg in enumerate((30, 150, 270)):
        coords[f"i{i + 1}"] = (math.cos(math.radians(deg)), math.sin(math.radians(deg)))
    o = ["o1", "o2", "o3"]
    inner = ["i1", "i2", "i3"]
    # inner vertex at 30 deg sees outer 90 and 330, and so on around
    spokes = [("i1", "o1"), ("i1", "o3"), ("i2", "o1"), ("i2", "o2"), ("i3", "o2"), ("i3", "o3")]
    return from_coordinates(coords, _cycle_edges(o) + _cycle_edges(inner) + spokes, outer=o)


def truncated_octahedron() -> PlaneGraph:
    from .transforms import truncate

    return truncate(octahedron())


# The 28-vertex cubic graph G0, drawn with its Hamiltonian cycle
# v0 v1 ... v27 as the outer rim plus fourteen chords.
FIGURE1_COORDS = {
    "v0": (0, -0.2), "v1": (-5, 5), "v2": (20, 41.9), "v3": (22.1, 39), "v4": (12.5, 25),
    "v5": (8.5, 19), "v6": (-1, 5), "v7": (1, 3), "v8": (20, 3), "v9": (22.1, 5.9),
    "v10": (18.7, 9.9), "v11": (20, 14.5), "v12": (15, 14.8), "v13": (11.6, 18.9),
    "v14": (13.6, 21.9), "v15": (33.4, 21.9), "v16": (34.4, 20.4), "v17": (35.3, 19),
    "v18": (24.9, 5.9), "v19": (27, 3), "v20": (46, 3), "v21": (48, 5), "v22": (38.5, 19),
    "v23": (34.5, 25), "v24": (24.9, 39), "v25": (27, 41.9), "v26": (52, 5), "v27": (47, 0),
}
FIGURE1_CHORDS = [
    ("v25", "v2"), ("v7", "v0"), ("v6", "v1"), ("v20", "v27"), ("v21", "v26"), ("v8", "v19"),
    ("v18", "v9"), ("v3", "v24"), ("v22", "v17"), ("v15", "v23"), ("v5", "v13"), ("v4", "v14"),
    ("v11", "v16"), ("v10", "v12"),
]
FIGURE1_C0 = [f"v{i}" for i in range(28)]
FIGURE1_OUTER = ["v0", "v1", "v2", "v25", "v26", "v27"]
FIGURE1_Q0 = [
    ["v0", "v1", "v6", "v7"],
    ["v2", "v3", "v24", "v25"],
    ["v4", "v5", "v13", "v14"],
    ["v8", "v9", "v18", "v19"],
    ["v10", "v11", "v12"],
    ["v15", "v16", "v17", "v22", "v23"],
    ["v20", "v21", "v26", "v27"],
]


def figure1_g0() -> PlaneGraph:
    edges = _cycle_edges(FIGURE1_C0) + FIGURE1_CHORDS
    return from_coordinates(FIGURE1_COORDS, edges, outer=FIGURE1_OUTER)


# H0 as drawn next to G0; u_i is the contracted Q0 cycle listed i-th above
FIGURE1_H0_COORDS = {
    "u1": (0, 0), "u2": (20, 34.6), "u3": (16, 13.6), "u4": (20, 7.05),
    "u5": (18, 10.325), "u6": (24, 13.6), "u7": (40, 0),
}
FIGURE1_H0_TRAIL = ["u1", "u2", "u3", "u1", "u4", "u5", "u3", "u6", "u4", "u7", "u6", "u2", "u7", "u1"]


def figure1_h0() -> PlaneGraph:
    t = FIGURE1_H0_TRAIL
    edges = [(t[i], t[i + 1]) for i in range(len(t) - 1)] + [("u5", "u6")]
    return from_coordinates(FIGURE1_H0_COORDS, edges, outer=["u1", "u2", "u7"])


FIGURE2_COORDS = {
    "v0": (20, 11.4), "v1": (0, 0), "v2": (20, 34.6), "v3": (40, 0), "v4": (20, 7.05),
    "v5": (16, 13.6), "v6": (24, 13.6), "v7": (12, 6.8), "v8": (13, 15.5), "v9": (20, 21),
    "v10": (27, 15.5), "v11": (28, 6.8), "v12": (20, 3.52),
}
FIGURE2_EDGES = [
    ("v1", "v3"), ("v1", "v2"), ("v1", "v4"), ("v1", "v5"), ("v1", "v12"), ("v12", "v3"),
    ("v12", "v4"), ("v1", "v7"), ("v7", "v4"), ("v7", "v5"), ("v1", "v8"), ("v8", "v5"),
    ("v8", "v2"), ("v3", "v2"), ("v3", "v4"), ("v3", "v6"), ("v3", "v11"), ("v11", "v4"),
    ("v11", "v6"), ("v3", "v10"), ("v10", "v6"), ("v10", "v2"), ("v2", "v5"), ("v2", "v6"),
    ("v2", "v9"), ("v9", "v6"), ("v9", "v5"), ("v4", "v5"), ("v4", "v6"), ("v5", "v6"),
    ("v0", "v4"), ("v0", "v6"), ("v0", "v5"),
]


def figure2_h() -> PlaneGraph:
    return from_coordinates(FIGURE2_COORDS, FIGURE2_EDGES, outer=["v1", "v2", "v3"])


_BUILDERS: dict[str, tuple[Callable[[], PlaneGraph], str]] = {
    "k4": (k4, "tetrahedron, outer face a b c"),
    "cube": (lambda: prism(4), "4-prism: outer a1..a4, inner b1..b4"),
    "octahedron": (octahedron, "outer triangle o1 o2 o3, inner triangle i1 i2 i3"),
    "triangular_prism": (lambda: prism(3), "3-prism: outer a1..a3, inner b1..b3"),
    "pentagonal_prism": (lambda: prism(5), "5-prism: outer a1..a5, inner b1..b5"),
    "hexagonal_prism": (lambda: prism(6), "6-prism: outer a1..a6, inner b1..b6"),
    "truncated_octahedron": (truncated_octahedron, "truncation of the catalog octahedron"),
    "figure1_g0": (
        figure1_g0,
        "28-vertex cubic G0; outer face v0 v1 v2 v25 v26 v27 as drawn (outside C0)",
    ),
    "figure1_h0": (figure1_h0, "H0 = G0/Q0, outer face u1 u2 u7"),
    "figure2_h": (figure2_h, "13-vertex triangulation H, outer face v1 v2 v3"),
}

NAMES = tuple(_BUILDERS)


def catalog(name: str) -> CatalogEntry:
    if name not in _BUILDERS:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(NAMES)}")
    build, notes = _BUILDERS[name]
    extras = {}
    if name == "figure1_g0":
        extras = {"q0": FIGURE1_Q0, "c0": FIGURE1_C0}
    return CatalogEntry(name, build(), notes, extras)


# ---------------------------------------------------------------------------
# triangulations by vertex splitting

K4_NEIGHBOURS = ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))


def split_vertex(nbrs: Sequence[Sequence[int]], v: int, i: int, j: int) -> list[list[int]]:
    """Split ``v`` of a triangulation; the new vertex takes the wedge ``ring[i..j]``.

    Inverse of contracting an edge.  Needs ``0 <= i < j < deg(v)`` and leaves
    both ends with degree at least 3.
    """
    ring = list(nbrs[v])
    d = len(ring)
    if not 0 <= i < j < d:
        raise ValueError(f"need 0 <= i < j < {d}, got {i}, {j}")
    n = len(nbrs)
    new = [list(r) for r in nbrs]
    new.append(ring[i : j + 1] + [v])
    new[v] = ring[j:] + ring[: i + 1] + [n]
    for k in range(i + 1, j):
        w = ring[k]
        new[w] = [n if x == v else x for x in new[w]]
    a, b = ring[i], ring[j]
    new[a].insert(new[a].index(v), n)
    new[b].insert(new[b].index(v) + 1, n)
    return new
