"""Separating digons and triangles, the containment order and triangle contraction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import HypothesisViolation, VerificationFailure
from .planar_core import EditRecord, PlaneGraph, RotationEditor, region_partition, vertex_connectivity


@dataclass(frozen=True)
class SepCycle:
    kind: str  # "digon" or "triangle"
    edges: tuple[int, ...]
    vertices: frozenset[int]
    interior_vertices: frozenset[int]
    interior_faces: frozenset[int] = field(compare=False, hash=False)
    name: str = field(default="", compare=False, hash=False)

    @property
    def interior_vertex_count(self) -> int:
        return len(self.interior_vertices)

    @property
    def key(self) -> tuple:
        return (self.kind, self.vertices, self.interior_vertices)

    def __repr__(self) -> str:
        return f"SepCycle({self.kind} {self.name}, int={self.interior_vertex_count})"


TriangleSpec = Union[int, Sequence[int], SepCycle]


def _cycle_name(h: PlaneGraph, verts: Iterable[int]) -> str:
    return "".join(h.label(v) for v in sorted(verts))


def make_cycle(h: PlaneGraph, edges: Sequence[int]) -> SepCycle:
    rp = region_partition(h, edges)
    kind = {2: "digon", 3: "triangle"}.get(len(edges), f"{len(edges)}-cycle")
    return SepCycle(
        kind,
        tuple(sorted(edges)),
        rp.cycle_vertices,
        rp.interior_vertices,
        rp.interior_faces,
        _cycle_name(h, rp.cycle_vertices),
    )


def inside(s: SepCycle, t: SepCycle, strict: bool = True) -> bool:
    """Whether cycle ``s`` lies in the closed disc of ``t`` with a smaller interior."""
    if not s.vertices <= t.vertices | t.interior_vertices:
        return False
    if strict:
        return s.interior_vertices < t.interior_vertices
    return s.interior_vertices <= t.interior_vertices


@dataclass
class TriangleLattice:
    triangles: tuple[SepCycle, ...]
    digons: tuple[SepCycle, ...]
    outer: SepCycle | None
    direct_successor: dict  # SepCycle -> tuple of SepCycle
    order: frozenset  # pairs (lower, upper) with lower strictly below upper

    def successors_of(self, t: SepCycle) -> tuple[SepCycle, ...]:
        if t in self.direct_successor:
            return self.direct_successor[t]
        below = [s for s in self.triangles if inside(s, t)]
        return tuple(s for s in below if not any(inside(s, r) for r in below if r != s))

    def inside_of(self, t: SepCycle) -> list[SepCycle]:
        return [s for s in self.triangles if inside(s, t)]

    def sinks_inside(self, t: SepCycle) -> list[SepCycle]:
        """The separating triangles inside ``t`` with no separating triangle inside them."""
        within = self.inside_of(t)
        return [s for s in within if not any(inside(r, s) for r in within if r != s)]


def _short_cycles(h: PlaneGraph):
    """All 2-cycles and 3-cycles as edge tuples (parallel edges give distinct cycles)."""
    digons, triangles = [], []
    adj: dict[int, dict[int, list[int]]] = {v: {} for v in range(h.num_vertices)}
    for e in range(h.num_edges):
        u, v = h.ends(e)
        if u == v:
            continue
        adj[u].setdefault(v, []).append(e)
        adj[v].setdefault(u, []).append(e)
    for u in range(h.num_vertices):
        for v, es in adj[u].items():
            if v <= u:
                continue
            for i in range(len(es)):
                for j in range(i + 1, len(es)):
                    digons.append((es[i], es[j]))
            for w, fs in adj[v].items():
                if w <= v or u not in adj[w]:
                    continue
                for a in es:
                    for b in fs:
                        for c in adj[w][u]:
                            triangles.append((a, b, c))
    return digons, triangles


def build_triangle_lattice(h: PlaneGraph) -> TriangleLattice:
    digon_cycles, tri_cycles = _short_cycles(h)
    outer = None
    of = h.outer
    if of.length == 3 and len(set(of.vertices)) == 3:
        outer = make_cycle(h, of.edges)

    def collect(cycles):
        best: dict[tuple, SepCycle] = {}
        for edges in cycles:
            c = make_cycle(h, edges)
            if not c.interior_vertices:
                continue
            if outer is not None and c.key == outer.key:
                continue
            if c.key not in best or c.edges < best[c.key].edges:
                best[c.key] = c
        return tuple(sorted(best.values(), key=lambda c: (len(c.interior_vertices), c.edges)))

    triangles = collect(tri_cycles)
    digons = collect(digon_cycles)
    order = frozenset((s, t) for s in triangles for t in triangles if s != t and inside(s, t))
    lattice = TriangleLattice(triangles, digons, outer, {}, order)
    nodes = list(triangles) + ([outer] if outer is not None else [])
    for t in nodes:
        lattice.direct_successor[t] = lattice.successors_of(t)
    return lattice


# ---------------------------------------------------------------------------
# invariant property


@dataclass(frozen=True)
class InvariantWitness:
    kind: str  # "successors" or "digon"
    triangle: SepCycle
    successors: tuple[SepCycle, ...] = ()
    digon: SepCycle | None = None

    def describe(self) -> str:
        if self.kind == "successors":
            names = ", ".join(s.name for s in self.successors)
            return f"triangle {self.triangle.name} has {len(self.successors)} direct successors: {names}"
        return f"separating digon {self.digon.name} inside triangle {self.triangle.name}"


@dataclass(frozen=True)
class InvariantReport:
    holds: bool
    witness: InvariantWitness | None = None

    def __bool__(self) -> bool:
        return self.holds


def resolve_triangle(h: PlaneGraph, t: TriangleSpec) -> SepCycle:
    """A triangle given as a face id, an edge triple or a ready ``SepCycle``."""
    if isinstance(t, SepCycle):
        return t
    if isinstance(t, int):
        if not 0 <= t < h.num_faces:
            raise HypothesisViolation(f"face {t} does not exist")
        edges = h.faces[t].edges
    else:
        edges = tuple(t)
    if len(edges) != 3:
        raise HypothesisViolation(f"{edges} is not a triangle")
    c = make_cycle(h, edges)
    if len(c.vertices) != 3:
        raise HypothesisViolation(f"{edges} is not a triangle")
    return c


def check_invariant_property(
    h: PlaneGraph, scope: TriangleSpec | None = None, lattice: TriangleLattice | None = None
) -> InvariantReport:
    """Check at most two direct successors and no separating digon inside.

    Without ``scope`` every separating triangle and the outer face (when it
    is a triangle) is checked; with a triangle only it and what lies inside.
    """
    lattice = lattice or build_triangle_lattice(h)
    if scope is None:
        tops = ([lattice.outer] if lattice.outer is not None else []) + list(lattice.triangles)
    else:
        top = resolve_triangle(h, scope)
        if lattice.outer is not None and top.key == lattice.outer.key:
            top = lattice.outer
        tops = [top] + lattice.inside_of(top)
    for t in tops:
        succ = lattice.successors_of(t)
        if len(succ) > 2:
            return InvariantReport(False, InvariantWitness("successors", t, succ))
        for d in lattice.digons:
            if inside(d, t, strict=False):
                return InvariantReport(False, InvariantWitness("digon", t, digon=d))
    return InvariantReport(True)


# ---------------------------------------------------------------------------
# contraction


def contract_triangle(h: PlaneGraph, t: int) -> tuple[PlaneGraph, EditRecord]:
    """Merge the three vertices of bounded triangular face ``t``; loops are dropped."""
    if not 0 <= t < h.num_faces:
        raise HypothesisViolation(f"face {t} does not exist")
    face = h.faces[t]
    if face.is_outer:
        raise HypothesisViolation(f"face {t} is the outer face")
    if face.length != 3 or len(set(face.vertices)) != 3:
        raise HypothesisViolation(f"face {t} is not a triangle")
    ed = RotationEditor(h)
    e1, e2, _ = face.edges
    ed.contract_edge(e1)
    ed.contract_edge(e2)
    ed.delete_loops()
    return ed.freeze(outer_hint=h.outer.darts)


def map_cycle(rec: EditRecord, c: SepCycle) -> tuple[int, ...] | None:
    edges = [rec.new_edge.get(e) for e in c.edges]
    return None if None in edges else tuple(edges)


@dataclass(frozen=True)
class Selection:
    face: int
    graph: PlaneGraph
    record: EditRecord
    image: tuple[int, ...]  # edges of the triangle after contraction
    report: InvariantReport
    tried: int


def _candidate_order(h: PlaneGraph, tc: SepCycle, lattice: TriangleLattice) -> list[int]:
    """Candidate faces, following the case split of the existence proof."""

    def tri_faces(region: SepCycle) -> list[int]:
        return sorted(
            f for f in region.interior_faces
            if h.faces[f].length == 3 and len(set(h.faces[f].vertices)) == 3
        )

    def corner_faces(region: SepCycle) -> list[int]:
        # faces at a corner of the region whose other two vertices are interior;
        # the first one after a boundary neighbour comes first
        out = []
        for v1 in sorted(region.vertices):
            rot = h.rotations[v1]
            k = len(rot)
            start = next((i for i in range(k) if h.head(rot[i]) in region.vertices), 0)
            for j in range(k):
                d = rot[(start + j) % k]
                f = h.face_of(d)
                if f not in region.interior_faces:
                    continue
                others = set(h.faces[f].vertices) - {v1}
                if h.faces[f].length == 3 and len(others) == 2 and others <= region.interior_vertices:
                    out.append(f)
        return out

    order: list[int] = []
    sinks = sorted(lattice.sinks_inside(tc), key=lambda s: (-len(s.interior_vertices), s.edges))
    big = [s for s in sinks if len(s.interior_vertices) >= 2]
    for s in big:
        order += corner_faces(s) + tri_faces(s)
    if not sinks:
        order += corner_faces(tc)
    for s in sinks:
        order += tri_faces(s)
    order += tri_faces(tc)
    seen = set()
    return [f for f in order if not (f in seen or seen.add(f))]


def select_and_contract(
    h: PlaneGraph, t: TriangleSpec, lattice: TriangleLattice | None = None
) -> Selection:
    lattice = lattice or build_triangle_lattice(h)
    tc = resolve_triangle(h, t)
    if lattice.outer is not None and tc.key == lattice.outer.key:
        tc = lattice.outer
    if len(tc.interior_vertices) < 2:
        raise HypothesisViolation(f"triangle {tc.name} has fewer than two interior vertices")
    pre = check_invariant_property(h, tc, lattice)
    if not pre:
        raise HypothesisViolation(f"invariant property fails: {pre.witness.describe()}")
    tried = 0
    for f in _candidate_order(h, tc, lattice):
        if len(set(h.faces[f].vertices) & tc.vertices) > 1:
            continue
        tried += 1
        h2, rec = contract_triangle(h, f)
        image = map_cycle(rec, tc)
        if image is None:
            continue
        report = check_invariant_property(h2, image)
        if report:
            return Selection(f, h2, rec, image, report, tried)
    raise HypothesisViolation(
        f"no contractible triangular face inside {tc.name} keeps the invariant property "
        f"({tried} candidates tried)"
    )


def select_contractible_triangle(
    h: PlaneGraph, t: TriangleSpec, lattice: TriangleLattice | None = None
) -> int:
    """Bounded triangular face inside ``t`` whose contraction keeps ``t`` invariant."""
    return select_and_contract(h, t, lattice).face


# ---------------------------------------------------------------------------
# degree-4 reduction


@dataclass(frozen=True)
class Degree4Record:
    v0: int
    ring: tuple[int, int, int, int]  # v4, v5, v6, v7 in counterclockwise order
    triangles: tuple[int, int]  # faces v0v4v5 and v0v6v7 of the input graph
    record: EditRecord


def degree4_candidates(h: PlaneGraph, v0: int) -> list[tuple[int, tuple[int, int]]]:
    """Offsets at ``v0`` whose two opposite triangles avoid each other and the outer face."""
    rot = h.rotations[v0]
    outer_edges = set(h.outer.edges)
    good = []
    for s in (0, 1):
        f1, f2 = h.face_of(rot[s]), h.face_of(rot[s + 2])
        e1, e2 = set(h.faces[f1].edges), set(h.faces[f2].edges)
        if h.faces[f1].length != 3 or h.faces[f2].length != 3:
            continue
        if e1 & e2 or (e1 | e2) & outer_edges:
            continue
        good.append((s, (f1, f2)))
    return good


def degree4_reduction(
    h: PlaneGraph, v0: int, offset: int | None = None, check_connectivity: bool = True
) -> tuple[PlaneGraph, Degree4Record]:
    """Remove degree-4 vertex ``v0`` and identify its two opposite neighbour pairs."""
    of = h.outer
    if of.length != 3 or len(set(of.vertices)) != 3:
        raise HypothesisViolation("outer face is not a triangle")
    bad = [f.id for f in h.faces if f.length not in (2, 3)]
    if bad:
        raise HypothesisViolation(f"faces {bad} are neither digons nor triangles")
    if h.degree(v0) != 4:
        raise HypothesisViolation(f"vertex {h.label(v0)} has degree {h.degree(v0)}, not 4")
    if v0 in of.vertices:
        raise HypothesisViolation(f"vertex {h.label(v0)} lies on the outer face")
    if check_connectivity:
        k = vertex_connectivity(h)
        if k < 4:
            raise HypothesisViolation(f"graph is only {k}-connected, 4 required")
    options = degree4_candidates(h, v0)
    if offset is not None:
        options = [o for o in options if o[0] == offset]
    if not options:
        raise HypothesisViolation(
            f"no pair of opposite triangles at {h.label(v0)} avoids each other and the outer face"
        )
    s, (f1, f2) = options[0]
    rot = h.rotations[v0]
    ring = tuple(h.head(rot[(s + i) % 4]) for i in range(4))

    def far_edge(f):
        return next(d >> 1 for d in h.faces[f].darts if v0 not in (h.origin(d), h.head(d)))

    ed = RotationEditor(h)
    ed.delete_vertex(v0)
    ed.contract_edge(far_edge(f1))
    ed.contract_edge(far_edge(f2))
    ed.delete_loops()
    h2, rec = ed.freeze(outer_hint=of.darts)
    report = check_invariant_property(h2)
    if not report:
        raise VerificationFailure(
            f"reduced graph lacks the invariant property: {report.witness.describe()}"
        )
    return h2, Degree4Record(v0, ring, (f1, f2), rec)
