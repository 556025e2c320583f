"""Connected plane multigraphs stored as rotation systems.

A graph with ``E`` edges owns darts ``0 .. 2E-1``.  Dart ``2e`` runs from the
first endpoint of edge ``e`` to the second, dart ``2e + 1`` runs back, so the
twin of ``d`` is ``d ^ 1``.  Every vertex lists its darts in counterclockwise
order.  The face on the left of a dart is traced with
``d -> rot_prev(twin(d))``; bounded faces come out counterclockwise.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

import networkx as nx

from .errors import (
    DisconnectedGraph,
    HypothesisViolation,
    IneligibleGraph,
    InconsistentRotation,
    NonPlanarRotation,
)

MAX_PAIRING_TRIALS = 100_000


def twin(d: int) -> int:
    return d ^ 1


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[int, ...]
    vertices: tuple[int, ...]
    is_outer: bool = False

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.darts)


class PlaneGraph:
    """Connected plane multigraph with a designated outer face.

    ``rotations[v]`` is the counterclockwise dart sequence at ``v``.  Instances
    are treated as immutable; every transform returns a new graph.
    """

    def __init__(
        self,
        rotations: Sequence[Sequence[int]],
        outer_face: int | None = None,
        labels: Sequence[str] | None = None,
        outer_dart: int | None = None,
    ):
        self.rotations = tuple(tuple(r) for r in rotations)
        n = len(self.rotations)
        if n == 0:
            raise DisconnectedGraph("graph has no vertices")
        total = sum(len(r) for r in self.rotations)
        if total == 0 or total % 2:
            raise InconsistentRotation(f"dart count {total} is not a positive even number")
        origin = [-1] * total
        pos = [-1] * total
        for v, rot in enumerate(self.rotations):
            if not rot:
                raise DisconnectedGraph(f"vertex {v} is isolated")
            for i, d in enumerate(rot):
                if not 0 <= d < total:
                    raise InconsistentRotation(f"dart {d} at vertex {v} out of range")
                if origin[d] != -1:
                    raise InconsistentRotation(f"dart {d} appears twice (vertices {origin[d]} and {v})")
                origin[d] = v
                pos[d] = i
        self._origin = origin
        self._pos = pos
        self.num_vertices = n
        self.num_edges = total // 2
        self.labels = tuple(labels) if labels is not None else tuple(str(v) for v in range(n))
        if len(self.labels) != n:
            raise InconsistentRotation("label count does not match vertex count")

        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            for d in self.rotations[v]:
                w = origin[d ^ 1]
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        if not all(seen):
            raise DisconnectedGraph(f"vertex {seen.index(False)} unreachable from vertex 0")

        face_of = [-1] * total
        traced: list[tuple[int, ...]] = []
        for start in range(total):
            if face_of[start] != -1:
                continue
            fid = len(traced)
            darts = []
            d = start
            while face_of[d] == -1:
                face_of[d] = fid
                darts.append(d)
                d = self.face_succ(d)
            traced.append(tuple(darts))
        self._face_of = face_of
        euler = n - self.num_edges + len(traced)
        if euler != 2:
            raise NonPlanarRotation(
                f"V - E + F = {n} - {self.num_edges} + {len(traced)} = {euler}, expected 2"
            )

        if outer_dart is not None:
            outer_face = face_of[outer_dart]
        elif outer_face is None:
            outer_face = max(range(len(traced)), key=lambda f: (len(traced[f]), -f))
        if not 0 <= outer_face < len(traced):
            raise HypothesisViolation(f"outer face {outer_face} does not exist")
        self.outer_face = outer_face
        self.faces = tuple(
            Face(f, darts, tuple(origin[d] for d in darts), f == outer_face)
            for f, darts in enumerate(traced)
        )

    # -- dart navigation -------------------------------------------------
    def origin(self, d: int) -> int:
        return self._origin[d]

    def head(self, d: int) -> int:
        return self._origin[d ^ 1]

    def rot_next(self, d: int) -> int:
        rot = self.rotations[self._origin[d]]
        return rot[(self._pos[d] + 1) % len(rot)]

    def rot_prev(self, d: int) -> int:
        rot = self.rotations[self._origin[d]]
        return rot[self._pos[d] - 1]

    def face_succ(self, d: int) -> int:
        return self.rot_prev(d ^ 1)

    def face_of(self, d: int) -> int:
        """Face on the left of dart ``d``."""
        return self._face_of[d]

    def position(self, d: int) -> tuple[int, int]:
        return self._origin[d], self._pos[d]

    # -- basic queries ---------------------------------------------------
    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def num_darts(self) -> int:
        return 2 * self.num_edges

    @property
    def outer(self) -> Face:
        return self.faces[self.outer_face]

    def ends(self, e: int) -> tuple[int, int]:
        return self._origin[2 * e], self._origin[2 * e + 1]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> list[int]:
        return [self.head(d) for d in self.rotations[v]]

    def neighbor_lists(self) -> list[list[int]]:
        return [self.neighbors(v) for v in range(self.num_vertices)]

    def edges_between(self, u: int, v: int) -> list[int]:
        return sorted({d >> 1 for d in self.rotations[u] if self.head(d) == v})

    def vertex_faces(self, v: int) -> list[int]:
        return [self._face_of[d] for d in self.rotations[v]]

    def label(self, v: int) -> str:
        return self.labels[v]

    def vertex(self, label: str) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: v for v, lab in enumerate(self.labels)}

    def edge_name(self, e: int) -> str:
        u, v = self.ends(e)
        return f"{self.labels[u]}{self.labels[v]}"

    def is_cubic(self) -> bool:
        return all(len(r) == 3 for r in self.rotations)

    def has_loops(self) -> bool:
        return any(u == v for u, v in map(self.ends, range(self.num_edges)))

    def is_simple(self) -> bool:
        seen = set()
        for e in range(self.num_edges):
            u, v = self.ends(e)
            key = (min(u, v), max(u, v))
            if u == v or key in seen:
                return False
            seen.add(key)
        return True

    def is_bipartite(self) -> bool:
        return nx.is_bipartite(self.to_networkx(multigraph=True))

    def with_outer(self, face_id: int) -> "PlaneGraph":
        return PlaneGraph(self.rotations, outer_face=face_id, labels=self.labels)

    def relabeled(self, labels: Sequence[str]) -> "PlaneGraph":
        return PlaneGraph(self.rotations, outer_face=self.outer_face, labels=labels)

    def to_networkx(self, multigraph: bool = False) -> nx.Graph:
        G = nx.MultiGraph() if multigraph else nx.Graph()
        G.add_nodes_from(range(self.num_vertices))
        for e in range(self.num_edges):
            u, v = self.ends(e)
            if multigraph:
                G.add_edge(u, v, key=e)
            elif u != v:
                G.add_edge(u, v)
        return G

    @cached_property
    def face_adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per face, the ``(edge, face across that edge)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in self.faces]
        for f in self.faces:
            for d in f.darts:
                adj[f.id].append((d >> 1, self._face_of[d ^ 1]))
        return tuple(tuple(a) for a in adj)

    def find_face(self, vertex_cycle: Sequence[int]) -> int:
        """Id of the first face whose boundary reads ``vertex_cycle`` cyclically (either direction)."""
        target = list(vertex_cycle)
        k = len(target)
        for f in self.faces:
            if f.length != k:
                continue
            seq = list(f.vertices)
            for cand in (seq, seq[::-1]):
                for s in range(k):
                    if cand[s:] + cand[:s] == target:
                        return f.id
        raise HypothesisViolation(f"no face with boundary {vertex_cycle}")

    def __repr__(self) -> str:
        return f"PlaneGraph(V={self.num_vertices}, E={self.num_edges}, F={self.num_faces})"


# ---------------------------------------------------------------------------
# construction from neighbour lists


def _group_positions(nbrs: Sequence[Sequence[int]], tags=None):
    groups: dict[tuple, tuple[list, list]] = {}
    for u, lst in enumerate(nbrs):
        for i, v in enumerate(lst):
            if not 0 <= v < len(nbrs):
                raise InconsistentRotation(f"vertex {u} lists unknown neighbour {v}")
            if v == u:
                raise InconsistentRotation(f"loop at vertex {u}: loops are not accepted as input")
            tag = tags[u][i] if tags is not None else None
            key = (min(u, v), max(u, v), tag)
            side = 0 if u < v else 1
            groups.setdefault(key, ([], []))[side].append((u, i))
    for (u, v, tag), (a, b) in groups.items():
        if len(a) != len(b):
            extra = f" (tag {tag})" if tag is not None else ""
            raise InconsistentRotation(
                f"edge {u}-{v}{extra}: listed {len(a)} times at {u} but {len(b)} times at {v}"
            )
    return groups


def _count_faces(rot: list[list[int]], origin: list[int], pos: list[int]) -> int:
    seen = [False] * len(origin)
    count = 0
    for s in range(len(origin)):
        if seen[s]:
            continue
        count += 1
        d = s
        while not seen[d]:
            seen[d] = True
            t = d ^ 1
            r = rot[origin[t]]
            d = r[pos[t] - 1]
    return count


def _darts_from_partner(nbrs, partner):
    edge_at: dict[tuple[int, int], int] = {}
    rot: list[list[int]] = []
    ne = 0
    for u, lst in enumerate(nbrs):
        row = []
        for i in range(len(lst)):
            p = (u, i)
            if p not in edge_at:
                edge_at[p] = 2 * ne
                edge_at[partner[p]] = 2 * ne + 1
                ne += 1
            row.append(edge_at[p])
        rot.append(row)
    return rot


def rotation_from_neighbors(nbrs: Sequence[Sequence[int]], tags=None) -> list[list[int]]:
    """Pair neighbour-list occurrences into darts.

    Parallel edges are ambiguous: the ``k``-th occurrence of ``v`` at ``u`` can
    meet any occurrence of ``u`` at ``v``.  Unless ``tags`` disambiguate, the
    cyclically reversed pairings are tried in a fixed order and the first one
    satisfying Euler's formula wins.
    """
    groups = _group_positions(nbrs, tags)
    fixed: dict = {}
    choices = []
    for key in sorted(groups, key=lambda k: (k[0], k[1], str(k[2]))):
        a, b = groups[key]
        if len(a) == 1 or tags is not None and key[2] is not None and len(a) == 1:
            fixed[a[0]] = b[0]
            fixed[b[0]] = a[0]
        else:
            choices.append((a, b))
    n = len(nbrs)
    ne = sum(len(x) for x in nbrs) // 2
    best = None
    for trial, shifts in enumerate(itertools.product(*(range(len(a)) for a, _ in choices))):
        if trial >= MAX_PAIRING_TRIALS:
            break
        partner = dict(fixed)
        for (a, b), s in zip(choices, shifts):
            k = len(a)
            for i in range(k):
                partner[a[i]] = b[(s - i) % k]
                partner[b[(s - i) % k]] = a[i]
        rot = _darts_from_partner(nbrs, partner)
        origin = [0] * (2 * ne)
        pos = [0] * (2 * ne)
        for v, r in enumerate(rot):
            for i, d in enumerate(r):
                origin[d], pos[d] = v, i
        if n - ne + _count_faces(rot, origin, pos) == 2:
            return rot
        if best is None:
            best = rot
    if best is None:
        raise InconsistentRotation("no neighbour lists given")
    return best  # the constructor reports the Euler violation


def build_plane_graph(
    rotations: Mapping[Hashable, Sequence[Hashable]] | Sequence[Sequence[int]],
    outer: Sequence[Hashable] | None = None,
    labels: Sequence[str] | None = None,
) -> PlaneGraph:
    """Validated plane graph from counterclockwise neighbour lists.

    ``rotations`` is either a mapping from vertex keys to neighbour keys or a
    list indexed by ``0..n-1``.  ``outer`` optionally names the outer face by
    its boundary vertex cycle; otherwise the longest face (lowest id on ties)
    is outer.
    """
    if isinstance(rotations, Mapping):
        keys = list(rotations)
        index = {k: i for i, k in enumerate(keys)}
        try:
            nbrs = [[index[w] for w in rotations[k]] for k in keys]
        except KeyError as exc:
            raise InconsistentRotation(f"unknown neighbour {exc.args[0]!r}") from None
        if labels is None:
            labels = [str(k) for k in keys]
    else:
        keys = list(range(len(rotations)))
        index = {k: k for k in keys}
        nbrs = [list(r) for r in rotations]
    g = PlaneGraph(rotation_from_neighbors(nbrs), labels=labels)
    if outer is not None:
        g = g.with_outer(g.find_face([index[k] for k in outer]))
    return g


def trace_faces(g: PlaneGraph) -> tuple[Face, ...]:
    return g.faces


# ---------------------------------------------------------------------------
# duality


def dual(g: PlaneGraph, outer_vertex: int | None = None) -> PlaneGraph:
    """Plane dual sharing dart ids with ``g``.

    Dual vertex ``f`` is face ``f`` of ``g``; dual dart ``d`` starts at the face
    on the right of primal dart ``d``.  The dual face holding the darts that
    leave primal vertex ``w`` corresponds to ``w``.  The outer face of the dual
    is the face of ``outer_vertex``, by default the origin of the smallest dart
    on the primal outer face.
    """
    rotations = [[d ^ 1 for d in f.darts] for f in g.faces]
    if outer_vertex is None:
        outer_vertex = g.origin(min(g.outer.darts))
    return PlaneGraph(
        rotations,
        outer_dart=g.rotations[outer_vertex][0],
        labels=[f"f{f.id}" for f in g.faces],
    )


def dual_face_vertex(g: PlaneGraph, d: PlaneGraph) -> dict[int, int]:
    """Map faces of ``d = dual(g)`` to the primal vertices they surround."""
    return {f.id: g.origin(f.darts[0]) for f in d.faces}


# ---------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class RegionPartition:
    cycle: tuple[int, ...]
    cycle_vertices: frozenset[int]
    interior_vertices: frozenset[int]
    exterior_vertices: frozenset[int]
    interior_faces: frozenset[int]
    exterior_faces: frozenset[int]

    @property
    def is_separating(self) -> bool:
        return bool(self.interior_vertices) and bool(self.exterior_vertices)


def cycle_vertices(g: PlaneGraph, cycle: Sequence[int]) -> list[int]:
    """Vertex sequence of a cycle given by edge ids; raises if it is not a cycle."""
    edges = list(cycle)
    if not edges or len(set(edges)) != len(edges):
        raise HypothesisViolation(f"edge sequence {edges} is empty or repeats an edge")
    for e in edges:
        if not 0 <= e < g.num_edges:
            raise HypothesisViolation(f"edge {e} not in graph")
    deg: dict[int, int] = {}
    for e in edges:
        u, v = g.ends(e)
        if u == v:
            raise HypothesisViolation(f"edge {e} is a loop")
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(k != 2 for k in deg.values()) or len(deg) != len(edges):
        raise HypothesisViolation(f"edges {edges} do not form a cycle")
    # walk it to confirm a single cycle
    remaining = set(edges)
    e = edges[0]
    start, cur = g.ends(e)
    order = [start]
    remaining.discard(e)
    while cur != start:
        order.append(cur)
        nxt = next((x for x in remaining if cur in g.ends(x)), None)
        if nxt is None:
            raise HypothesisViolation(f"edges {edges} do not form a single cycle")
        remaining.discard(nxt)
        a, b = g.ends(nxt)
        cur = b if a == cur else a
    if remaining:
        raise HypothesisViolation(f"edges {edges} form more than one cycle")
    return order


def region_partition(g: PlaneGraph, cycle: Sequence[int]) -> RegionPartition:
    """Split vertices and faces into the two sides of a cycle.

    Faces reachable from the outer face without crossing a cycle edge are
    exterior; the rest are interior.
    """
    verts = cycle_vertices(g, cycle)
    blocked = set(cycle)
    ext = {g.outer_face}
    queue = deque([g.outer_face])
    adj = g.face_adjacency
    while queue:
        f = queue.popleft()
        for e, h in adj[f]:
            if e not in blocked and h not in ext:
                ext.add(h)
                queue.append(h)
    int_faces = frozenset(f.id for f in g.faces if f.id not in ext)
    on_cycle = frozenset(verts)
    inside, outside = set(), set()
    for v in range(g.num_vertices):
        if v in on_cycle:
            continue
        (inside if g.face_of(g.rotations[v][0]) in int_faces else outside).add(v)
    return RegionPartition(
        tuple(cycle), on_cycle, frozenset(inside), frozenset(outside), int_faces, frozenset(ext)
    )


# ---------------------------------------------------------------------------
# connectivity


def _cyclic_components(n, ends, removed) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, (u, v) in enumerate(ends):
        if e in removed:
            continue
        parent[find(u)] = find(v)
    nv: dict[int, int] = {}
    ne: dict[int, int] = {}
    for v in range(n):
        r = find(v)
        nv[r] = nv.get(r, 0) + 1
    for e, (u, v) in enumerate(ends):
        if e not in removed:
            r = find(u)
            ne[r] = ne.get(r, 0) + 1
    return sum(1 for r in nv if ne.get(r, 0) >= nv[r])


def is_cyclic_cut(g: PlaneGraph, edges: Iterable[int]) -> bool:
    """True when deleting ``edges`` leaves at least two components that contain cycles."""
    ends = [g.ends(e) for e in range(g.num_edges)]
    return _cyclic_components(g.num_vertices, ends, set(edges)) >= 2


def cyclic_edge_connectivity(g: PlaneGraph, max_cut: int = 5) -> int:
    """Smallest cyclic edge cut of a cubic graph, by exhaustive search.

    Only graphs with two vertex-disjoint cycles are accepted.  Planar cubic
    graphs have such a cut of size at most 5, so the search stops there and an
    empty search means the graph is ineligible.
    """
    if not g.is_cubic():
        raise HypothesisViolation("cyclic edge-connectivity is defined here for cubic graphs only")
    if g.num_vertices < 6:
        raise IneligibleGraph(
            f"{g.num_vertices} vertices: no two disjoint cycles; "
            "the 'non-trivial components' reading is left open, see README"
        )
    ends = [g.ends(e) for e in range(g.num_edges)]
    for k in range(1, max_cut + 1):
        for cut in itertools.combinations(range(g.num_edges), k):
            if _cyclic_components(g.num_vertices, ends, set(cut)) >= 2:
                return k
    raise IneligibleGraph(
        f"no cyclic edge cut of size <= {max_cut}; the graph has no two disjoint cycles "
        "(or is not planar)"
    )


def vertex_connectivity(g: PlaneGraph | nx.Graph) -> int:
    G = g.to_networkx() if isinstance(g, PlaneGraph) else nx.Graph(g)
    G.remove_edges_from(list(nx.selfloop_edges(G)))
    n = G.number_of_nodes()
    if n < 2:
        raise HypothesisViolation("vertex connectivity needs at least two vertices")
    if G.number_of_edges() == n * (n - 1) // 2:
        return n - 1
    return nx.node_connectivity(G)


# ---------------------------------------------------------------------------
# face colourings


def face_coloring(g: PlaneGraph, mode: str = "two_color") -> dict[int, int]:
    """Proper face colouring: faces sharing an edge get different colours.

    ``two_color`` needs every degree even and gives the outer face colour 1.
    ``three_color`` needs a bipartite cubic graph; colour classes are numbered
    by the smallest face id they contain.
    """
    adj = g.face_adjacency
    if mode == "two_color":
        if any(g.degree(v) % 2 for v in range(g.num_vertices)):
            raise HypothesisViolation("two_color needs all vertex degrees even")
        color = {g.outer_face: 1}
        queue = deque([g.outer_face])
        while queue:
            f = queue.popleft()
            for _, h in adj[f]:
                if h == f:
                    raise HypothesisViolation(f"face {f} meets itself across an edge")
                if h not in color:
                    color[h] = 3 - color[f]
                    queue.append(h)
                elif color[h] == color[f]:
                    raise HypothesisViolation(f"faces {f} and {h} cannot be 2-coloured")
        return color
    if mode == "three_color":
        if not g.is_cubic() or not g.is_bipartite():
            raise HypothesisViolation("three_color needs a bipartite cubic graph")
        nbrs = [sorted({h for _, h in adj[f.id]}) for f in g.faces]
        if any(f.id in nbrs[f.id] for f in g.faces):
            raise HypothesisViolation("a face meets itself across a bridge")
        order = list(range(g.num_faces))
        color: dict[int, int] = {}

        def solve(i: int) -> bool:
            if i == len(order):
                return True
            f = order[i]
            for c in (1, 2, 3):
                if all(color.get(h) != c for h in nbrs[f]):
                    color[f] = c
                    if solve(i + 1):
                        return True
                    del color[f]
            return False

        # BFS order keeps the propagation forced for the unique colouring
        order = []
        seen = {0}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            order.append(f)
            for h in nbrs[f]:
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        if not solve(0):
            raise HypothesisViolation("no proper 3-face-colouring")
        first: dict[int, int] = {}
        for f in sorted(color):
            first.setdefault(color[f], f)
        rank = {c: i + 1 for i, c in enumerate(sorted(first, key=first.get))}
        return {f: rank[c] for f, c in color.items()}
    raise HypothesisViolation(f"unknown colouring mode {mode!r}")


# ---------------------------------------------------------------------------
# canonical forms


def _root_darts(g: PlaneGraph, outer_flags) -> list[int]:
    def key(d):
        return (g.degree(g.origin(d)), g.degree(g.head(d)), outer_flags[d])

    best = max(key(d) for d in range(g.num_darts))
    return [d for d in range(g.num_darts) if key(d) == best]


def canonical_code(g: PlaneGraph, respect_outer: bool = True, allow_mirror: bool = True) -> tuple:
    """Isomorphism invariant of the oriented map, minimised over roots and reflections."""
    on_outer = [0] * g.num_darts
    if respect_outer:
        for d in g.outer.darts:
            on_outer[d] = 1
    codes = []
    for mirror in (False, True) if allow_mirror else (False,):
        step = g.rot_prev if mirror else g.rot_next
        flags = [on_outer[d ^ 1] for d in range(g.num_darts)] if mirror else on_outer
        for root in _root_darts(g, flags):
            label = {root: 0}
            order = [root]
            i = 0
            while i < len(order):
                d = order[i]
                i += 1
                for e in (step(d), d ^ 1):
                    if e not in label:
                        label[e] = len(order)
                        order.append(e)
            codes.append(tuple((label[step(d)], label[d ^ 1], flags[d]) for d in order))
    return (g.num_vertices, g.num_edges, min(codes))


def is_isomorphic(a: PlaneGraph, b: PlaneGraph, respect_outer: bool = False) -> bool:
    if (a.num_vertices, a.num_edges, a.num_faces) != (b.num_vertices, b.num_edges, b.num_faces):
        return False
    return canonical_code(a, respect_outer) == canonical_code(b, respect_outer)


# ---------------------------------------------------------------------------
# local surgery


@dataclass(frozen=True)
class EditRecord:
    """How a graph produced by :class:`RotationEditor` relates to its source."""

    vertex_groups: tuple[tuple[int, ...], ...]
    edge_origin: tuple[int, ...]
    deleted_loops: tuple[int, ...] = ()

    def dart_origin(self, d: int) -> int:
        return 2 * self.edge_origin[d >> 1] + (d & 1)

    @cached_property
    def new_edge(self) -> dict[int, int]:
        return {old: new for new, old in enumerate(self.edge_origin)}

    def new_dart(self, d: int) -> int | None:
        e = self.new_edge.get(d >> 1)
        return None if e is None else 2 * e + (d & 1)

    @cached_property
    def new_vertex(self) -> dict[int, int]:
        return {old: new for new, grp in enumerate(self.vertex_groups) for old in grp}


class RotationEditor:
    """Mutable working copy of a rotation system for contractions and deletions."""

    def __init__(self, g: PlaneGraph):
        self.g = g
        self.rot = {v: list(r) for v, r in enumerate(g.rotations)}
        self.origin = [g.origin(d) for d in range(g.num_darts)]
        self.members = {v: [v] for v in range(g.num_vertices)}
        self.alive = set(range(g.num_edges))
        self.loops_deleted: list[int] = []

    def ends(self, e: int) -> tuple[int, int]:
        return self.origin[2 * e], self.origin[2 * e + 1]

    def delete_edge(self, e: int) -> None:
        for d in (2 * e, 2 * e + 1):
            self.rot[self.origin[d]].remove(d)
        self.alive.discard(e)

    def delete_vertex(self, v: int) -> None:
        for d in list(self.rot[v]):
            if (d >> 1) in self.alive:
                self.delete_edge(d >> 1)
        del self.rot[v]
        del self.members[v]

    def contract_edge(self, e: int) -> int:
        """Merge the ends of edge ``e``; returns the surviving vertex."""
        d = 2 * e
        u, v = self.origin[d], self.origin[d ^ 1]
        if u == v:
            raise HypothesisViolation(f"edge {e} is a loop and cannot be contracted")
        ru, rv = self.rot[u], self.rot[v]
        i, j = ru.index(d), rv.index(d ^ 1)
        merged = ru[i + 1:] + ru[:i] + rv[j + 1:] + rv[:j]
        for x in rv:
            self.origin[x] = u
        self.rot[u] = merged
        del self.rot[v]
        self.members[u].extend(self.members.pop(v))
        self.alive.discard(e)
        return u

    def identify(self, u: int, v: int, e: int) -> int:
        """Identify ``u`` and ``v`` along edge ``e`` joining them (edge removed)."""
        if set(self.ends(e)) != {u, v}:
            raise HypothesisViolation(f"edge {e} does not join {u} and {v}")
        return self.contract_edge(e)

    def delete_loops(self) -> list[int]:
        loops = sorted(e for e in self.alive if self.origin[2 * e] == self.origin[2 * e + 1])
        for e in loops:
            self.delete_edge(e)
        self.loops_deleted.extend(loops)
        return loops

    def freeze(self, outer_hint: Iterable[int] = ()) -> tuple[PlaneGraph, EditRecord]:
        verts = sorted(self.rot, key=lambda v: min(self.members[v]))
        vid = {v: i for i, v in enumerate(verts)}
        edges = sorted(self.alive)
        eid = {e: i for i, e in enumerate(edges)}
        rotations = [[2 * eid[d >> 1] + (d & 1) for d in self.rot[v]] for v in verts]
        labels = ["+".join(self.g.labels[x] for x in sorted(self.members[v])) for v in verts]
        outer_dart = None
        for d in outer_hint:
            if (d >> 1) in eid:
                outer_dart = 2 * eid[d >> 1] + (d & 1)
                break
        g = PlaneGraph(rotations, labels=labels, outer_dart=outer_dart)
        record = EditRecord(
            tuple(tuple(sorted(self.members[v])) for v in verts),
            tuple(edges),
            tuple(self.loops_deleted),
        )
        return g, record


def edge_subgraph(g: PlaneGraph, edges: Iterable[int]) -> tuple[PlaneGraph, EditRecord]:
    """Spanning subgraph on ``edges`` with the induced rotations.

    The outer face is the face containing the outer face of ``g``.  All
    vertices must keep an edge and the result must be connected.
    """
    keep = set(edges)
    ed = RotationEditor(g)
    for e in range(g.num_edges):
        if e not in keep:
            ed.delete_edge(e)
    # face of the subgraph containing g's outer face: walk back from an outer dart
    d0 = g.outer.darts[0]
    k = d0
    while (k >> 1) not in keep:
        k = g.rot_prev(k)
        if k == d0:
            raise HypothesisViolation("subgraph leaves a vertex without edges")
    return ed.freeze(outer_hint=[k])
