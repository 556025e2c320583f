"""(Quasi) spanning trees of faces, their construction, and the A-trail bridge.

A face tree on ``h`` is a set ``T`` of bounded faces with pairwise disjoint
edge sets covering every vertex, plus a split of the vertices into proper
vertices ``U`` and quasi vertices.  A quasi vertex lies on exactly half as
many faces of ``T`` as its degree, and the vertex-face incidence graph
restricted to ``U`` and ``T`` is a tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import networkx as nx

from .errors import HypothesisViolation, VerificationFailure
from .planar_core import EditRecord, PlaneGraph, edge_subgraph, face_coloring, vertex_connectivity
from .transforms import radial_graph
from .triangles import (
    SepCycle,
    build_triangle_lattice,
    check_invariant_property,
    degree4_candidates,
    degree4_reduction,
    inside,
    select_and_contract,
)

DEFAULT_FACE_GUARD = 24


@dataclass(frozen=True)
class FaceTree:
    faces: frozenset[int]
    proper: frozenset[int]
    quasi: frozenset[int] = frozenset()

    @classmethod
    def of(cls, faces: Iterable[int], num_vertices: int, quasi: Iterable[int] = ()) -> "FaceTree":
        quasi = frozenset(quasi)
        return cls(frozenset(faces), frozenset(range(num_vertices)) - quasi, quasi)

    @property
    def is_spanning(self) -> bool:
        return not self.quasi


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate_face_tree(h: PlaneGraph, ft: FaceTree) -> list[Violation]:
    """Every way ``ft`` fails to be a quasi spanning tree of faces of ``h``."""
    out: list[Violation] = []
    bad = sorted(f for f in ft.faces if not 0 <= f < h.num_faces)
    if bad:
        return [Violation("unknown_face", f"faces {bad} do not exist", tuple(bad))]
    if h.outer_face in ft.faces:
        out.append(Violation("outer_face", f"outer face {h.outer_face} is in T", (h.outer_face,)))
    everything = set(range(h.num_vertices))
    if ft.proper & ft.quasi or (ft.proper | ft.quasi) != everything:
        out.append(Violation("partition", "proper and quasi sets do not partition the vertices"))
    owner: dict[int, int] = {}
    for f in sorted(ft.faces):
        for e in h.faces[f].edges:
            if e in owner:
                out.append(
                    Violation(
                        "shared_edge",
                        f"faces {owner[e]} and {f} share edge {h.edge_name(e)}",
                        (owner[e], f, e),
                    )
                )
            else:
                owner[e] = f
    count = {v: 0 for v in everything}
    for f in ft.faces:
        for v in set(h.faces[f].vertices):
            count[v] += 1
    uncovered = sorted(v for v in everything if count[v] == 0)
    if uncovered:
        names = [h.label(v) for v in uncovered]
        out.append(Violation("uncovered", f"vertices {names} lie on no face of T", tuple(uncovered)))
    for x in sorted(ft.quasi & everything):
        if 2 * count[x] != h.degree(x):
            out.append(
                Violation(
                    "quasi_degree",
                    f"quasi vertex {h.label(x)} lies on {count[x]} faces of T, degree {h.degree(x)}",
                    (x, count[x]),
                )
            )
    R = radial_graph(h, (ft.proper & everything, ft.faces - {h.outer_face}))
    if R.number_of_nodes() == 0 or not nx.is_connected(R):
        comps = nx.number_connected_components(R) if R.number_of_nodes() else 0
        out.append(Violation("radial_disconnected", f"R(U,T) has {comps} components", (comps,)))
    elif R.number_of_edges() != R.number_of_nodes() - 1:
        cyc = nx.find_cycle(R)
        out.append(
            Violation(
                "radial_cycle",
                f"R(U,T) contains a cycle through {[n for n, _ in cyc]}",
                tuple(n for n, _ in cyc),
            )
        )
    return out


# ---------------------------------------------------------------------------
# construction by repeated triangle contraction


@dataclass(frozen=True)
class ContractionStep:
    vertices: int
    target: str
    face: int
    tried: int
    post_check: bool


@dataclass
class BuildTrace:
    steps: list[ContractionStep] = field(default_factory=list)
    mode: str = ""
    notes: list[str] = field(default_factory=list)


class _PullBack:
    """Map darts of a contracted graph back to the graph the run started from."""

    def __init__(self, base: PlaneGraph):
        self.base = base
        self.records: list[EditRecord] = []

    def dart(self, d: int) -> int:
        for rec in reversed(self.records):
            d = rec.dart_origin(d)
        return d

    def face(self, g: PlaneGraph, f: int) -> int:
        d = self.dart(g.faces[f].darts[0])
        base_face = self.base.face_of(d)
        if self.base.faces[base_face].length != 3:
            raise VerificationFailure(
                f"contracted face {f} pulls back to face {base_face} of length "
                f"{self.base.faces[base_face].length}, not a triangle"
            )
        return base_face


def _terminal_face(g: PlaneGraph) -> int:
    """The innermost bounded face of a 3-vertex graph that touches all three vertices."""
    cands = [f.id for f in g.faces if not f.is_outer and len(set(f.vertices)) == 3]
    if not cands:
        raise VerificationFailure("terminal graph has no bounded face on all three vertices")
    # without loops only one bounded face can meet all three vertices; ties go to the smallest id
    return min(cands)


def _contract_run(
    h: PlaneGraph,
    pick: Callable[[PlaneGraph], object],
    trace: BuildTrace,
) -> tuple[list[int], PlaneGraph, _PullBack]:
    """Contract triangles chosen by ``pick`` until it returns None."""
    pb = _PullBack(h)
    cur = h
    faces: list[int] = []
    while True:
        lattice = build_triangle_lattice(cur)
        target = pick(cur, lattice)
        if target is None:
            break
        sel = select_and_contract(cur, target, lattice)
        faces.append(pb.face(cur, sel.face))
        name = target.name if isinstance(target, SepCycle) else "outer"
        trace.steps.append(ContractionStep(cur.num_vertices, name, sel.face, sel.tried, sel.report.holds))
        pb.records.append(sel.record)
        cur = sel.graph
    return faces, cur, pb


def _outer_triangle(h: PlaneGraph) -> None:
    of = h.outer
    if of.length != 3 or len(set(of.vertices)) != 3:
        raise HypothesisViolation(f"outer face has length {of.length}; a triangle is required")


def _odd(h: PlaneGraph, trace: BuildTrace) -> list[int]:
    if h.num_vertices % 2 == 0:
        raise HypothesisViolation(
            f"{h.num_vertices} vertices: a spanning tree of triangles needs odd order"
        )
    _outer_triangle(h)
    report = check_invariant_property(h)
    if not report:
        raise HypothesisViolation(f"invariant property fails: {report.witness.describe()}")

    def pick(cur, lattice):
        return cur.outer_face if cur.num_vertices > 3 else None

    faces, last, pb = _contract_run(h, pick, trace)
    faces.append(pb.face(last, _terminal_face(last)))
    return faces


def _even_degree4(h: PlaneGraph, trace: BuildTrace) -> tuple[list[int], int]:
    if h.num_vertices % 2:
        raise HypothesisViolation(f"{h.num_vertices} vertices: even_degree4 needs even order")
    _outer_triangle(h)
    outer = set(h.outer.vertices)
    interior4 = [v for v in range(h.num_vertices) if h.degree(v) == 4 and v not in outer]
    if not interior4:
        raise HypothesisViolation("no interior vertex of degree 4")
    if h.num_vertices == 4:
        return _k4_exception(h, interior4[0], trace)
    k = vertex_connectivity(h)
    if k < 4:
        raise HypothesisViolation(f"graph is {k}-connected; even_degree4 needs 4-connectivity")
    v0 = next((v for v in interior4 if degree4_candidates(h, v)), None)
    if v0 is None:
        raise HypothesisViolation("no degree-4 vertex has two admissible opposite triangles")
    h2, red = degree4_reduction(h, v0, check_connectivity=False)
    trace.notes.append(f"degree-4 reduction at {h.label(v0)}")
    inner = _odd(h2, trace)
    pulled = []
    for f in inner:
        d = red.record.dart_origin(h2.faces[f].darts[0])
        base = h.face_of(d)
        if h.faces[base].length != 3:
            raise VerificationFailure(f"face {f} of the reduced graph pulls back to a non-triangle")
        pulled.append(base)
    return pulled + list(red.triangles), v0


def _k4_exception(h: PlaneGraph, v0: int, trace: BuildTrace) -> tuple[list[int], int]:
    """Four vertices: K4 plus a doubled edge at the interior vertex."""
    trace.notes.append("K4-spanned exceptional case")
    v1, v2, v3 = sorted(set(h.outer.vertices))
    multi = [w for w in (v1, v2, v3) if len(h.edges_between(v0, w)) > 1]
    if len(multi) != 1:
        raise HypothesisViolation("four-vertex input is not K4 with one doubled edge at the interior vertex")
    w = multi[0]
    a, b = [x for x in (v1, v2, v3) if x != w]
    picks = []
    for other in (a, b):
        want = {v0, w, other}
        fs = [f.id for f in h.faces if not f.is_outer and f.length == 3 and set(f.vertices) == want]
        if not fs:
            raise HypothesisViolation(f"no triangular face on {sorted(h.label(x) for x in want)}")
        picks.append(fs[0])
    return picks, v0


def _even_interior(h: PlaneGraph, trace: BuildTrace) -> list[int]:
    _outer_triangle(h)
    lattice = build_triangle_lattice(h)
    for t in [lattice.outer] + list(lattice.triangles):
        if len(t.interior_vertices) % 2:
            raise HypothesisViolation(f"triangle {t.name} has an odd number of interior vertices")
    successors = {s for t in lattice.direct_successor.values() for s in t}
    for s in sorted(successors, key=lambda c: c.edges):
        for d in lattice.digons:
            if inside(d, s, strict=False):
                raise HypothesisViolation(
                    f"direct successor {s.name} contains separating digon {d.name}"
                )

    # once no separating triangle is left the odd-order construction takes over for good;
    # its contractions keep the invariant property but not the even interior counts
    phase = {"outer": False}

    def pick(cur, lat):
        sinks = [s for s in lat.triangles if not lat.successors_of(s)]
        if sinks and not phase["outer"]:
            return min(sinks, key=lambda s: (len(s.interior_vertices), s.edges))
        phase["outer"] = True
        return cur.outer_face if cur.num_vertices > 3 else None

    faces, last, pb = _contract_run(h, pick, trace)
    faces.append(pb.face(last, _terminal_face(last)))
    return faces


MODES = ("odd", "even_degree4", "even_interior")


def build_face_tree_traced(h: PlaneGraph, mode: str = "odd", cmap=None) -> tuple[FaceTree, BuildTrace]:
    if h.num_vertices < 2:
        raise HypothesisViolation("a single-vertex reduced graph is unsupported input")
    trace = BuildTrace(mode=mode)
    quasi: tuple[int, ...] = ()
    if mode == "odd":
        faces = _odd(h, trace)
    elif mode == "even_degree4":
        faces, v0 = _even_degree4(h, trace)
        quasi = (v0,)
    elif mode == "even_interior":
        faces = _even_interior(h, trace)
    else:
        raise HypothesisViolation(f"unknown mode {mode!r}; expected one of {MODES}")
    if len(set(faces)) != len(faces):
        raise VerificationFailure(f"face set repeats a face: {faces}")
    ft = FaceTree.of(faces, h.num_vertices, quasi)
    problems = validate_face_tree(h, ft)
    if problems:
        raise VerificationFailure("constructed face tree is invalid: " + "; ".join(map(str, problems)))
    return ft, trace


def build_face_tree(h: PlaneGraph, mode: str = "odd", cmap=None) -> FaceTree:
    """Quasi spanning tree of triangular faces by the contraction method for ``mode``."""
    return build_face_tree_traced(h, mode, cmap)[0]


# ---------------------------------------------------------------------------
# exhaustive oracle


def brute_force_face_tree(
    h: PlaneGraph, require_spanning: bool = False, guard: int = DEFAULT_FACE_GUARD
) -> FaceTree | None:
    """First face tree found by exhaustive search, or None when none exists."""
    bounded = [f for f in h.faces if not f.is_outer]
    if len(bounded) > guard:
        raise HypothesisViolation(f"{len(bounded)} bounded faces exceed the search guard {guard}")
    n = h.num_vertices
    full = (1 << n) - 1
    fverts = [frozenset(f.vertices) for f in bounded]
    emask = []
    for f in bounded:
        m = 0
        for e in f.edges:
            if m >> e & 1:
                m = -1  # a face using an edge twice can never be in T
                break
            m |= 1 << e
        emask.append(m)
    vmask = [sum(1 << v for v in vs) for vs in fverts]
    last = [-1] * n
    for i, vs in enumerate(fverts):
        for v in vs:
            last[v] = i
    due = [0] * (len(bounded) + 1)
    for v in range(n):
        if last[v] >= 0:
            due[last[v] + 1] |= 1 << v
    if any(x < 0 for x in last):
        return None
    deg = [h.degree(v) for v in range(n)]

    def leaf(chosen: list[int]) -> FaceTree | None:
        cnt = [0] * n
        for i in chosen:
            for v in fverts[i]:
                cnt[v] += 1
        R = nx.Graph()
        R.add_nodes_from(("v", v) for v in range(n))
        for i in chosen:
            for v in fverts[i]:
                R.add_edge(("v", v), ("f", i))
        if not nx.is_connected(R):
            return None
        excess = R.number_of_edges() - R.number_of_nodes() + 1
        faces = [bounded[i].id for i in chosen]
        if excess == 0:
            return FaceTree.of(faces, n)
        if require_spanning:
            return None
        eligible = [v for v in range(n) if deg[v] >= 4 and deg[v] % 2 == 0 and 2 * cnt[v] == deg[v]]
        weight = {v: deg[v] // 2 - 1 for v in eligible}

        def pick(i: int, left: int, qs: list[int]):
            if left == 0:
                sub = R.subgraph(n_ for n_ in R if not (n_[0] == "v" and n_[1] in qs))
                if nx.is_connected(sub) and sub.number_of_edges() == sub.number_of_nodes() - 1:
                    return FaceTree.of(faces, n, qs)
                return None
            for j in range(i, len(eligible)):
                v = eligible[j]
                if weight[v] <= left:
                    qs.append(v)
                    got = pick(j + 1, left - weight[v], qs)
                    qs.pop()
                    if got is not None:
                        return got
            return None

        return pick(0, excess, [])

    chosen: list[int] = []

    def search(i: int, used: int, covered: int):
        if due[i] & ~covered:
            return None
        if i == len(bounded):
            return leaf(chosen) if covered == full else None
        if emask[i] >= 0 and not emask[i] & used:
            chosen.append(i)
            got = search(i + 1, used | emask[i], covered | vmask[i])
            chosen.pop()
            if got is not None:
                return got
        return search(i + 1, used, covered)

    return search(0, 0, 0)


# ---------------------------------------------------------------------------
# A-trails


@dataclass(frozen=True)
class ATrail:
    """Closed trail as a dart sequence of ``h``; ``splitting[v]`` is 1 (quasi) or 2 (proper)."""

    trail: tuple[int, ...]
    splitting: dict = field(compare=False, default_factory=dict)

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(d >> 1 for d in self.trail)

    def normalized(self) -> tuple[int, ...]:
        """Canonical representative over start point and direction."""
        fwd = list(self.trail)
        back = [d ^ 1 for d in reversed(fwd)]
        best = None
        for seq in (fwd, back):
            for s in range(len(seq)):
                cand = tuple(seq[s:] + seq[:s])
                if best is None or cand < best:
                    best = cand
        return best or ()


def _induced(h: PlaneGraph, edges: set[int]):
    """Rotation of the subgraph on ``edges`` as a dart -> (next, prev) table."""
    nxt, prv = {}, {}
    for v in range(h.num_vertices):
        rot = [d for d in h.rotations[v] if (d >> 1) in edges]
        k = len(rot)
        for i, d in enumerate(rot):
            nxt[d] = rot[(i + 1) % k]
            prv[d] = rot[i - 1]
    return nxt, prv


def check_a_trail(h: PlaneGraph, at: ATrail) -> list[str]:
    """Problems with ``at`` as an A-trail of the subgraph its edges span."""
    problems = []
    trail = list(at.trail)
    if not trail:
        return ["empty trail"]
    edges = [d >> 1 for d in trail]
    if len(set(edges)) != len(edges):
        problems.append("an edge is traversed twice")
    for i, d in enumerate(trail):
        nxt = trail[(i + 1) % len(trail)]
        if h.head(d) != h.origin(nxt):
            problems.append(f"darts {d} and {nxt} are not consecutive")
    if problems:
        return problems
    nx_, pv = _induced(h, set(edges))
    for i, d in enumerate(trail):
        out = trail[(i + 1) % len(trail)]
        back = d ^ 1
        if out not in (nx_[back], pv[back]):
            v = h.head(d)
            problems.append(f"at {h.label(v)} edges {d >> 1} and {out >> 1} are not neighbours in the rotation")
    return problems


def _walk(h: PlaneGraph, edges: set[int], turn: Callable[[int], bool]) -> list[int]:
    """Follow the transition rule from the smallest dart; ``turn(r)`` says go to next(r)."""
    nx_, pv = _induced(h, edges)
    start = 2 * min(edges)
    trail = [start]
    d = start
    while True:
        r = d ^ 1
        out = nx_[r] if turn(r) else pv[r]
        if out == start:
            break
        trail.append(out)
        d = out
        if len(trail) > 2 * len(edges):
            raise VerificationFailure("transition walk does not close")
    return trail


def face_tree_to_a_trail(h: PlaneGraph, ft: FaceTree) -> ATrail:
    problems = validate_face_tree(h, ft)
    if problems:
        raise HypothesisViolation("not a valid face tree: " + "; ".join(map(str, problems)))
    edges = {e for f in ft.faces for e in h.faces[f].edges}
    in_t = set(ft.faces)

    def turn(r: int) -> bool:
        v = h.origin(r)
        left_in_t = h.face_of(r) in in_t
        return left_in_t if v in ft.quasi else not left_in_t

    trail = _walk(h, edges, turn)
    if len(trail) != len(edges):
        raise VerificationFailure(
            f"transition walk covers {len(trail)} of {len(edges)} edges of the face tree"
        )
    splitting = {v: (1 if v in ft.quasi else 2) for v in range(h.num_vertices)}
    at = ATrail(tuple(trail), splitting)
    bad = check_a_trail(h, at)
    if bad:
        raise VerificationFailure("face-tree trail is not an A-trail: " + "; ".join(bad))
    return at


def a_trail_to_face_tree(h: PlaneGraph, at: ATrail) -> FaceTree:
    bad = check_a_trail(h, at)
    if bad:
        raise HypothesisViolation("not an A-trail: " + "; ".join(bad))
    edges = set(at.edges)
    k, rec = edge_subgraph(h, edges)
    if any(k.degree(v) % 2 for v in range(k.num_vertices)):
        raise HypothesisViolation("trail subgraph is not eulerian")
    color = face_coloring(k, "two_color")
    faces = []
    for f in k.faces:
        if color[f.id] != 2:
            continue
        hf = h.face_of(rec.dart_origin(f.darts[0]))
        if h.faces[hf].length != f.length:
            raise HypothesisViolation(f"colour-2 face {f.id} of the trail subgraph is not a face of h")
        faces.append(hf)
    in_t = set(faces)
    trail = list(at.trail)
    nx_, _ = _induced(h, edges)
    quasi = set()
    for i, d in enumerate(trail):
        out = trail[(i + 1) % len(trail)]
        r = d ^ 1
        v = h.origin(r)
        if nx_[nx_[r]] == r:
            # degree two in the trail subgraph: both pairings coincide
            if at.splitting.get(v) == 1:
                quasi.add(v)
            continue
        crossed_left = out == nx_[r]
        left_in_t = h.face_of(r) in in_t
        if crossed_left == left_in_t:
            quasi.add(v)
    # vertices outside the subgraph cannot occur: the trail must cover all vertices
    missing = [h.label(v) for v in range(h.num_vertices) if not any(h.origin(d) == v for d in trail)]
    if missing:
        raise HypothesisViolation(f"trail misses vertices {missing}")
    return FaceTree.of(faces, h.num_vertices, quasi)


def a_trail_bridge(h: PlaneGraph, obj: FaceTree | ATrail) -> ATrail | FaceTree:
    """Convert between a face tree and its A-trail, in whichever direction ``obj`` asks."""
    if isinstance(obj, FaceTree):
        return face_tree_to_a_trail(h, obj)
    if isinstance(obj, ATrail):
        return a_trail_to_face_tree(h, obj)
    raise TypeError(f"expected FaceTree or ATrail, got {type(obj).__name__}")


def find_a_trail(h: PlaneGraph) -> ATrail | None:
    """Backtracking over the two consecutive pairings at each vertex."""
    if any(h.degree(v) % 2 for v in range(h.num_vertices)):
        raise HypothesisViolation("A-trails need every degree even")
    color = face_coloring(h, "two_color")
    n = h.num_vertices
    # piece id per (vertex, dart): unsplit vertices use one piece
    choice: dict[int, int] = {}

    def pieces_of(v: int) -> dict[int, tuple]:
        rot = h.rotations[v]
        k = len(rot)
        if v not in choice or k == 2:
            return {d: (v,) for d in rot}
        # splitting s pairs darts across corners of colour 3 - s faces
        s = choice[v]
        want = 2 if s == 1 else 1
        out = {}
        for i, d in enumerate(rot):
            if color[h.face_of(d)] == want:
                nxt = rot[(i + 1) % k]
                out[d] = out[nxt] = (v, i)
        return out

    def connected() -> bool:
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        piece = {}
        for v in range(n):
            piece.update(pieces_of(v))
        for d in range(0, h.num_darts, 2):
            parent[find(piece[d])] = find(piece[d + 1])
        roots = {find(p) for p in piece.values()}
        return len(roots) == 1

    order = [v for v in range(n) if h.degree(v) > 2]

    def search(i: int) -> bool:
        if not connected():
            return False
        if i == len(order):
            return True
        v = order[i]
        for s in (1, 2):
            choice[v] = s
            if search(i + 1):
                return True
            del choice[v]
        return False

    if not search(0):
        return None
    splitting = {v: choice.get(v, 2) for v in range(n)}

    def turn(r: int) -> bool:
        v = h.origin(r)
        if h.degree(v) == 2:
            return True
        # crossing the corner after r, which belongs to face_of(r)
        want = 2 if splitting[v] == 1 else 1
        return color[h.face_of(r)] == want

    trail = _walk(h, set(range(h.num_edges)), turn)
    if len(trail) != h.num_edges:
        raise VerificationFailure("connected split graph did not give a single closed trail")
    at = ATrail(tuple(trail), splitting)
    bad = check_a_trail(h, at)
    if bad:
        raise VerificationFailure("; ".join(bad))
    return at
