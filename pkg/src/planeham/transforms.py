"""Truncation, leapfrog, radial graphs, facial 2-factors and their contraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import HypothesisViolation
from .planar_core import PlaneGraph, RotationEditor, dual, is_isomorphic


# ---------------------------------------------------------------------------
# truncation and leapfrog


@dataclass(frozen=True)
class TruncationIndex:
    """Bookkeeping for ``truncate``: vertex ``d`` of the result sits on primal dart ``d``."""

    num_legacy: int
    cycle_edges: tuple[tuple[int, ...], ...]  # per primal vertex, its cycle edge ids in rotation order

    def cycle_face(self, tr: PlaneGraph, v: int) -> int:
        """Face of the truncation bounded by the cycle replacing primal vertex ``v``."""
        return tr.face_of(2 * self.cycle_edges[v][0])

    def legacy_face(self, tr: PlaneGraph, d: int) -> int:
        """Face of the truncation corresponding to the primal face left of dart ``d``."""
        return tr.face_of(d)


def truncate_with_index(g: PlaneGraph, min_degree: int = 3) -> tuple[PlaneGraph, TruncationIndex]:
    for v in range(g.num_vertices):
        if g.degree(v) < min_degree:
            raise HypothesisViolation(
                f"truncation needs minimum degree {min_degree}; vertex {g.label(v)} has degree {g.degree(v)}"
            )
    ne = g.num_edges
    rotations: list[list[int]] = [[d] for d in range(g.num_darts)]
    cycles = []
    c = ne
    for v in range(g.num_vertices):
        rot = g.rotations[v]
        k = len(rot)
        ids = []
        for i in range(k):
            a, b = rot[i], rot[(i + 1) % k]
            rotations[a].append(2 * c)  # forward, towards the ccw-next dart
            ids.append(c)
            c += 1
        for i in range(k):
            a = rot[i]
            prev_edge = ids[i - 1]
            rotations[a].append(2 * prev_edge + 1)
        cycles.append(tuple(ids))
    labels = [f"{g.label(g.origin(d))}>{g.label(g.head(d))}#{d}" for d in range(g.num_darts)]
    tr = PlaneGraph(rotations, labels=labels, outer_dart=min(g.outer.darts))
    return tr, TruncationIndex(ne, tuple(cycles))


def truncate(g: PlaneGraph, min_degree: int = 3) -> PlaneGraph:
    """Replace every vertex by a cycle through the ends of its edges."""
    return truncate_with_index(g, min_degree)[0]


@dataclass(frozen=True)
class FacialTwoFactor:
    cycles: tuple[int, ...]
    vertex_cover_map: dict = field(compare=False, repr=False, default_factory=dict)

    @classmethod
    def from_faces(cls, g: PlaneGraph, faces: Iterable[int]) -> "FacialTwoFactor":
        faces = tuple(sorted(set(faces)))
        cover: dict[int, int] = {}
        for f in faces:
            if not 0 <= f < g.num_faces:
                raise HypothesisViolation(f"face {f} does not exist")
            verts = g.faces[f].vertices
            if len(set(verts)) != len(verts):
                raise HypothesisViolation(f"face {f} is not bounded by a cycle")
            for v in verts:
                if v in cover:
                    raise HypothesisViolation(
                        f"faces {cover[v]} and {f} share vertex {g.label(v)}"
                    )
                cover[v] = f
        missing = [g.label(v) for v in range(g.num_vertices) if v not in cover]
        if missing:
            raise HypothesisViolation(f"vertices {missing} not covered by the 2-factor")
        return cls(faces, cover)

    @classmethod
    def from_vertex_cycles(cls, g: PlaneGraph, cycles: Sequence[Sequence[str]]) -> "FacialTwoFactor":
        return cls.from_faces(g, [g.find_face([g.vertex(x) for x in c]) for c in cycles])

    def q_edges(self, g: PlaneGraph) -> set[int]:
        return {e for f in self.cycles for e in g.faces[f].edges}

    def __len__(self) -> int:
        return len(self.cycles)


def leapfrog_with_index(g: PlaneGraph):
    if g.num_edges < 2:
        raise HypothesisViolation("leapfrog needs at least two edges")
    d = dual(g)
    lf, idx = truncate_with_index(d, min_degree=2)
    # dual vertex f is face f of g; its truncation cycle is the Q-face for f
    q = FacialTwoFactor.from_faces(lf, [idx.cycle_face(lf, f) for f in range(d.num_vertices)])
    return lf, q, idx


def leapfrog(g: PlaneGraph) -> tuple[PlaneGraph, FacialTwoFactor]:
    """``truncate(dual(g))`` plus the facial 2-factor of cycles replacing faces of ``g``."""
    lf, q, _ = leapfrog_with_index(g)
    return lf, q


def hexagon_of_vertex(g: PlaneGraph, lf: PlaneGraph, v: int) -> int:
    """Face of ``leapfrog(g)`` corresponding to primal vertex ``v`` (the hexagon when cubic).

    Dual darts reuse primal ids and the truncation vertex on dual dart ``d`` is
    vertex ``d``; the face left of legacy dart ``d`` corresponds to the dual
    face left of ``d``, which is the dual face made of the darts leaving ``v``.
    """
    return lf.face_of(g.rotations[v][0])


# ---------------------------------------------------------------------------
# radial graphs


def radial_graph(h: PlaneGraph, restrict_to: tuple[Iterable[int], Iterable[int]] | None = None) -> nx.Graph:
    """Vertex-face incidence graph; nodes are ``("v", x)`` and ``("f", f)``."""
    R = nx.Graph()
    R.add_nodes_from(("v", v) for v in range(h.num_vertices))
    R.add_nodes_from(("f", f.id) for f in h.faces)
    for f in h.faces:
        for v in f.vertices:
            R.add_edge(("v", v), ("f", f.id))
    if restrict_to is None:
        return R
    U, T = (set(x) for x in restrict_to)
    bad_u = [u for u in U if not 0 <= u < h.num_vertices]
    bad_t = [t for t in T if not 0 <= t < h.num_faces or t == h.outer_face]
    if bad_u or bad_t:
        raise HypothesisViolation(f"restriction not in graph: vertices {bad_u}, bounded faces {bad_t}")
    return R.subgraph([("v", u) for u in U] + [("f", t) for t in T]).copy()


# ---------------------------------------------------------------------------
# facial 2-factors


def enumerate_facial_two_factors(g: PlaneGraph, limit: int | None = None) -> list[FacialTwoFactor]:
    """All facial 2-factors, by exact cover of vertices with cycle-bounded faces."""
    if not g.is_cubic():
        raise HypothesisViolation("facial 2-factors are enumerated for cubic graphs")
    options = [f for f in g.faces if len(set(f.vertices)) == f.length]
    at_vertex: list[list[int]] = [[] for _ in range(g.num_vertices)]
    for f in options:
        for v in f.vertices:
            at_vertex[v].append(f.id)
    covered = [False] * g.num_vertices
    chosen: list[int] = []
    found: list[tuple[int, ...]] = []

    def fits(f):
        return not any(covered[v] for v in g.faces[f].vertices)

    def search():
        if limit is not None and len(found) >= limit:
            return
        best = None
        for v in range(g.num_vertices):
            if covered[v]:
                continue
            cand = [f for f in at_vertex[v] if fits(f)]
            if best is None or len(cand) < len(best[1]):
                best = (v, cand)
                if not cand:
                    return
        if best is None:
            found.append(tuple(sorted(chosen)))
            return
        for f in best[1]:
            for v in g.faces[f].vertices:
                covered[v] = True
            chosen.append(f)
            search()
            chosen.pop()
            for v in g.faces[f].vertices:
                covered[v] = False

    search()
    return [FacialTwoFactor.from_faces(g, fs) for fs in sorted(found)]


# ---------------------------------------------------------------------------
# contraction G/Q


@dataclass(frozen=True)
class ContractionMap:
    forward: tuple[int, ...]  # g-vertex -> H-vertex
    edge_map: tuple[int, ...]  # H-edge -> g-edge
    face_map: dict  # H-face -> g-face
    q: FacialTwoFactor
    q_of_vertex: tuple[int, ...]  # H-vertex -> Q face of g
    deleted_loops: tuple[int, ...] = ()
    rerooted_from: int | None = None
    g_outer_face: int = -1

    def g_dart(self, hd: int) -> int:
        return 2 * self.edge_map[hd >> 1] + (hd & 1)

    def h_dart(self, gd: int) -> int | None:
        e = self._edge_back.get(gd >> 1)
        return None if e is None else 2 * e + (gd & 1)

    @property
    def _edge_back(self) -> dict[int, int]:
        return {ge: he for he, ge in enumerate(self.edge_map)}

    @property
    def face_back(self) -> dict[int, int]:
        return {gf: hf for hf, gf in self.face_map.items()}


def contract_factor(g: PlaneGraph, q: FacialTwoFactor) -> tuple[PlaneGraph, ContractionMap]:
    """Contract every Q-face of a cubic plane graph to a single vertex.

    Edges joining a Q-cycle to itself become loops and are deleted; they are
    listed in ``deleted_loops``.  If the outer face of ``g`` is a Q-face the
    graph is first re-rooted at its smallest Qᶜ-face, recorded in
    ``rerooted_from``.
    """
    if not g.is_cubic():
        raise HypothesisViolation("contraction is defined for cubic graphs")
    q = FacialTwoFactor.from_faces(g, q.cycles)
    if len(q) < 2:
        raise HypothesisViolation(
            "a facial 2-factor with a single cycle contracts to a single vertex; unsupported input"
        )
    rerooted = None
    if g.outer_face in q.cycles:
        rerooted = g.outer_face
        g = g.with_outer(min(f.id for f in g.faces if f.id not in q.cycles))
    q_edges = q.q_edges(g)
    ed = RotationEditor(g)
    for f in q.cycles:
        # contract all but one edge of the cycle; the last becomes a loop
        for e in g.faces[f].edges[:-1]:
            ed.contract_edge(e)
    loops = ed.delete_loops()
    chords = tuple(e for e in loops if e not in q_edges)
    h, rec = ed.freeze(outer_hint=[d for d in g.outer.darts if (d >> 1) not in q_edges])
    h = h.relabeled([f"Q[{'.'.join(g.label(x) for x in grp)}]" for grp in rec.vertex_groups])
    forward = [0] * g.num_vertices
    q_of_vertex = []
    for i, grp in enumerate(rec.vertex_groups):
        for x in grp:
            forward[x] = i
        q_of_vertex.append(q.vertex_cover_map[grp[0]])
    face_map = {}
    for f in h.faces:
        gf = g.face_of(rec.dart_origin(f.darts[0]))
        face_map[f.id] = gf
    if not chords:
        assert sorted(face_map.values()) == sorted(
            f.id for f in g.faces if f.id not in q.cycles
        ), "face map is not a bijection onto Q-complement faces"
    cmap = ContractionMap(
        tuple(forward),
        rec.edge_origin,
        face_map,
        q,
        tuple(q_of_vertex),
        chords,
        rerooted,
        g.outer_face,
    )
    return h, cmap


def recognize_leapfrog(g: PlaneGraph) -> tuple[PlaneGraph, FacialTwoFactor] | None:
    """First facial 2-factor whose complement faces are all hexagons and that rebuilds ``g``."""
    if not g.is_cubic():
        raise HypothesisViolation("leapfrog recognition is defined for cubic graphs")
    for q in enumerate_facial_two_factors(g):
        if any(f.length != 6 for f in g.faces if f.id not in q.cycles):
            continue
        try:
            h, _ = contract_factor(g, q)
        except HypothesisViolation:
            continue
        g0 = dual(h)
        if g0.num_edges >= 2 and is_isomorphic(leapfrog(g0)[0], g):
            return g0, q
    return None
