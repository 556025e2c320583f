"""Hamiltonian cycles from face trees and back, the Payan route, and oracles."""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .errors import HypothesisViolation, VerificationFailure
from .face_trees import (
    ATrail,
    FaceTree,
    Violation,
    build_face_tree_traced,
    face_tree_to_a_trail,
    validate_face_tree,
)
from .planar_core import PlaneGraph, cyclic_edge_connectivity, region_partition, vertex_connectivity
from .transforms import (
    ContractionMap,
    FacialTwoFactor,
    contract_factor,
    hexagon_of_vertex,
    leapfrog,
)
from .triangles import build_triangle_lattice

DEFAULT_PAYAN_GUARD = 22
DEFAULT_HAM_GUARD = 32


@dataclass(frozen=True)
class HamCycle:
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    interior_faces: frozenset[int]
    exterior_faces: frozenset[int]

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class HamCheck:
    ok: bool
    problems: tuple[str, ...] = ()
    cycle: HamCycle | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_hamiltonian(g: PlaneGraph, edges: Iterable[int]) -> HamCheck:
    """Check that ``edges`` form one cycle through every vertex; classify faces."""
    edges = list(edges)
    problems = []
    bad = [e for e in edges if not 0 <= e < g.num_edges]
    if bad:
        return HamCheck(False, (f"edges {bad} not in graph",))
    if len(set(edges)) != len(edges):
        problems.append("an edge is repeated")
    deg = Counter()
    for e in set(edges):
        u, v = g.ends(e)
        deg[u] += 1
        deg[v] += 1
    unvisited = [v for v in range(g.num_vertices) if deg[v] == 0]
    if unvisited:
        problems.append(f"{len(unvisited)} vertices unvisited: {[g.label(v) for v in unvisited]}")
    odd = [v for v in range(g.num_vertices) if deg[v] not in (0, 2)]
    if odd:
        problems.append(f"vertices {[g.label(v) for v in odd]} meet the edge set {[deg[v] for v in odd]} times")
    if problems:
        return HamCheck(False, tuple(problems))
    G = nx.Graph()
    G.add_edges_from(g.ends(e) for e in edges)
    if not nx.is_connected(G):
        return HamCheck(False, (f"edge set splits into {nx.number_connected_components(G)} cycles",))
    rp = region_partition(g, edges)
    # order the cycle from the smallest vertex
    start = min(range(g.num_vertices))
    by_vertex: dict[int, list[int]] = {}
    for e in edges:
        u, v = g.ends(e)
        by_vertex.setdefault(u, []).append(e)
        by_vertex.setdefault(v, []).append(e)
    order_v, order_e = [start], []
    prev_e = None
    cur = start
    for _ in range(len(edges)):
        e = min(x for x in by_vertex[cur] if x != prev_e) if prev_e is not None else min(by_vertex[cur])
        order_e.append(e)
        u, v = g.ends(e)
        cur = v if u == cur else u
        prev_e = e
        if cur != start:
            order_v.append(cur)
    cycle = HamCycle(tuple(order_e), tuple(order_v), rp.interior_faces, rp.exterior_faces)
    return HamCheck(True, (), cycle)


def _require_cycle(g: PlaneGraph, edges: Iterable[int], what: str) -> HamCycle:
    check = verify_hamiltonian(g, edges)
    if not check:
        raise VerificationFailure(f"{what} is not Hamiltonian: " + "; ".join(check.problems))
    return check.cycle


def boundary_edges(g: PlaneGraph, faces: Iterable[int]) -> list[int]:
    """Edges lying on exactly one of ``faces``."""
    count = Counter()
    for f in faces:
        for e in g.faces[f].edges:
            count[e] += 1
    return sorted(e for e, c in count.items() if c == 1)


# ---------------------------------------------------------------------------
# the correspondence between face trees of H and cycles of G


def _effective(g: PlaneGraph, cmap: ContractionMap) -> PlaneGraph:
    return g if g.outer_face == cmap.g_outer_face else g.with_outer(cmap.g_outer_face)


def face_side_problems(g: PlaneGraph, cmap: ContractionMap, c: HamCycle, ft: FaceTree) -> list[str]:
    """The face-side conditions of the correspondence, read from the cycle alone."""
    inner = c.interior_faces
    out = []
    for u, qf in enumerate(cmap.q_of_vertex):
        if u in ft.proper and qf not in inner:
            out.append(f"Q-face {qf} of proper vertex {u} is outside the cycle")
        if u in ft.quasi and qf in inner:
            out.append(f"Q-face {qf} of quasi vertex {u} is inside the cycle")
    if cmap.g_outer_face in inner:
        out.append("outer face lies inside the cycle")
    qc_inner = [f for f in inner if f not in cmap.q.cycles]
    seen: dict[int, int] = {}
    for f in sorted(qc_inner):
        for e in g.faces[f].edges:
            if e in seen:
                out.append(f"interior faces {seen[e]} and {f} share edge {_edge_label(g, e)}")
            seen[e] = f
    return out


def _edge_label(g: PlaneGraph, e: int) -> str:
    u, v = sorted(g.ends(e))
    return g.label(u) + g.label(v)


def lift_face_tree(
    g: PlaneGraph, q: FacialTwoFactor, cmap: ContractionMap, ft: FaceTree, h: PlaneGraph | None = None
) -> HamCycle:
    """Hamiltonian cycle of ``g`` bounding the Q-faces of proper vertices and the faces of T."""
    g = _effective(g, cmap)
    back = cmap.face_map
    if any(back.get(f) == cmap.g_outer_face for f in ft.faces):
        raise HypothesisViolation("face tree contains the outer face")
    if h is not None:
        problems = validate_face_tree(h, ft)
        if problems:
            raise HypothesisViolation("invalid face tree: " + "; ".join(map(str, problems)))
    selected = [cmap.q_of_vertex[u] for u in sorted(ft.proper)] + [back[f] for f in sorted(ft.faces)]
    cycle = _require_cycle(g, boundary_edges(g, selected), "lifted edge set")
    problems = face_side_problems(g, cmap, cycle, ft)
    if problems:
        raise VerificationFailure("lifted cycle breaks the face conditions: " + "; ".join(problems))
    return cycle


def lift_via_a_trail(
    g: PlaneGraph, cmap: ContractionMap, h: PlaneGraph, ft: FaceTree, trail: ATrail | None = None
) -> list[int]:
    """Edge set obtained by routing the A-trail of H_T around the Q-cycles of ``g``."""
    g = _effective(g, cmap)
    trail = trail or face_tree_to_a_trail(h, ft)
    darts = list(trail.trail)
    in_t = set(ft.faces)
    out_edges: list[int] = []
    for i, hd in enumerate(darts):
        nxt = darts[(i + 1) % len(darts)]
        gd_in, gd_out = cmap.g_dart(hd), cmap.g_dart(nxt)
        out_edges.append(gd_in >> 1)
        u = h.head(hd)
        qf = g.faces[cmap.q_of_vertex[u]]
        pos = {x: j for j, x in enumerate(qf.vertices)}
        x, y = g.head(gd_in), g.origin(gd_out)
        r = hd ^ 1
        left_in_t = h.face_of(r) in in_t
        forward = left_in_t if u in ft.quasi else not left_in_t
        k = qf.length
        j = pos[x]
        while qf.vertices[j] != y:
            if forward:
                out_edges.append(qf.darts[j] >> 1)
                j = (j + 1) % k
            else:
                j = (j - 1) % k
                out_edges.append(qf.darts[j] >> 1)
    return out_edges


@dataclass(frozen=True)
class ProjectResult:
    face_tree: FaceTree | None
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return self.face_tree is not None


def project_hamiltonian(
    g: PlaneGraph,
    q: FacialTwoFactor,
    cmap: ContractionMap,
    c: HamCycle | Sequence[int],
    h: PlaneGraph | None = None,
) -> ProjectResult:
    """Face tree of H read off a Hamiltonian cycle of ``g``, or the reasons it fails."""
    g = _effective(g, cmap)
    edges = c.edges if isinstance(c, HamCycle) else tuple(c)
    check = verify_hamiltonian(g, edges)
    if not check:
        raise HypothesisViolation("cycle is not Hamiltonian: " + "; ".join(check.problems))
    inner = check.cycle.interior_faces
    violations = []
    if cmap.g_outer_face in inner:
        violations.append(Violation("outer_interior", "outer Q-complement face lies inside the cycle"))
    qc_inner = sorted(f for f in inner if f not in cmap.q.cycles)
    owner: dict[int, int] = {}
    for f in qc_inner:
        for e in g.faces[f].edges:
            if e in owner:
                violations.append(
                    Violation(
                        "shared_edge",
                        f"interior faces {owner[e]} and {f} share edge {_edge_label(g, e)}",
                        (owner[e], f, _edge_label(g, e)),
                    )
                )
            owner[e] = f
    back = cmap.face_back
    n_h = len(cmap.q_of_vertex)
    proper = frozenset(u for u in range(n_h) if cmap.q_of_vertex[u] in inner)
    faces = frozenset(back[f] for f in qc_inner if f in back)
    ft = FaceTree(faces, proper, frozenset(range(n_h)) - proper)
    if h is not None:
        violations.extend(validate_face_tree(h, ft))
    if violations:
        return ProjectResult(None, tuple(violations))
    return ProjectResult(ft)


# ---------------------------------------------------------------------------
# the Payan route


@dataclass(frozen=True)
class PayanCertificate:
    S: tuple[int, ...]
    tree_edges: tuple[int, ...]


def validate_payan(g0: PlaneGraph, cert: PayanCertificate) -> list[str]:
    n = g0.num_vertices
    s = set(cert.S)
    out = []
    if 4 * len(s) != n + 2:
        out.append(f"|S| = {len(s)}, expected {(n + 2) // 4}")
    for e in range(g0.num_edges):
        u, v = g0.ends(e)
        if u in s and v in s:
            out.append(f"S contains both ends of edge {g0.edge_name(e)}")
    rest = [v for v in range(n) if v not in s]
    G = nx.MultiGraph()
    G.add_nodes_from(rest)
    induced = [e for e in range(g0.num_edges) if not set(g0.ends(e)) & s]
    G.add_edges_from(g0.ends(e) for e in induced)
    if sorted(induced) != sorted(cert.tree_edges):
        out.append("tree edges differ from the induced edge set")
    if not rest or not nx.is_connected(G) or G.number_of_edges() != len(rest) - 1:
        out.append("the complement of S does not induce a tree")
    return out


def payan_set(g0: PlaneGraph, guard: int = DEFAULT_PAYAN_GUARD, check_cyclic: bool = True) -> PayanCertificate:
    """Lexicographically first independent set S of size (n+2)/4 whose complement is a tree."""
    n = g0.num_vertices
    if not g0.is_cubic():
        raise HypothesisViolation("Payan sets are defined here for cubic graphs")
    if n % 4 != 2:
        raise HypothesisViolation(f"n = {n} is not 2 mod 4")
    if n > guard:
        raise HypothesisViolation(f"n = {n} exceeds the search guard {guard}")
    if check_cyclic:
        k = cyclic_edge_connectivity(g0)
        if k < 4:
            raise HypothesisViolation(f"cyclic edge-connectivity is {k}; at least 4 required")
    size = (n + 2) // 4
    nbrs = [set(g0.neighbors(v)) for v in range(n)]
    chosen: list[int] = []

    def complement_is_tree() -> bool:
        s = set(chosen)
        rest = [v for v in range(n) if v not in s]
        parent = {v: v for v in rest}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(g0.num_edges):
            u, v = g0.ends(e)
            if u in s or v in s:
                continue
            a, b = find(u), find(v)
            if a == b:
                return False
            parent[a] = b
        return len({find(v) for v in rest}) == 1

    def search(start: int) -> bool:
        if len(chosen) == size:
            return complement_is_tree()
        for v in range(start, n - (size - len(chosen)) + 1):
            if any(v in nbrs[c] for c in chosen):
                continue
            chosen.append(v)
            if search(v + 1):
                return True
            chosen.pop()
        return False

    if not search(0):
        raise VerificationFailure(
            "no Payan set found although the hypotheses hold; investigate the input and the search"
        )
    s = set(chosen)
    tree = tuple(e for e in range(g0.num_edges) if not set(g0.ends(e)) & s)
    cert = PayanCertificate(tuple(chosen), tree)
    problems = validate_payan(g0, cert)
    if problems:
        raise VerificationFailure("; ".join(problems))
    return cert


def leapfrog_ham_payan(
    g0: PlaneGraph, guard: int = DEFAULT_PAYAN_GUARD
) -> tuple[HamCycle, PlaneGraph, PayanCertificate]:
    """Hamiltonian cycle of Lf(g0): the boundary of the hexagons of the Payan tree."""
    cert = payan_set(g0, guard)
    lf, _ = leapfrog(g0)
    s = set(cert.S)
    hexes = [hexagon_of_vertex(g0, lf, v) for v in range(g0.num_vertices) if v not in s]
    cycle = _require_cycle(lf, boundary_edges(lf, hexes), "Payan hexagon boundary")
    return cycle, lf, cert


# ---------------------------------------------------------------------------
# brute force


def brute_force_hamiltonian(g: PlaneGraph, guard: int = DEFAULT_HAM_GUARD) -> HamCycle | None:
    """First Hamiltonian cycle in dart order from vertex 0, by backtracking."""
    n = g.num_vertices
    if n > guard:
        raise HypothesisViolation(f"{n} vertices exceed the search guard {guard}")
    if n == 1:
        return None
    adj = [sorted(g.rotations[v]) for v in range(n)]
    visited = [False] * n
    visited[0] = True
    path_edges: list[int] = []

    def feasible(cur: int) -> bool:
        # every unvisited vertex needs two usable neighbours among unvisited, cur and 0
        for v in range(n):
            if visited[v]:
                continue
            ok = 0
            for d in adj[v]:
                w = g.head(d)
                if not visited[w] or w == cur or w == 0:
                    ok += 1
                    if ok >= 2:
                        break
            if ok < 2:
                return False
        return True

    def extend(cur: int, depth: int) -> bool:
        if depth == n:
            for d in adj[cur]:
                if g.head(d) == 0 and (not path_edges or d >> 1 != path_edges[-1]):
                    path_edges.append(d >> 1)
                    return True
            return False
        for d in adj[cur]:
            w = g.head(d)
            if visited[w]:
                continue
            visited[w] = True
            path_edges.append(d >> 1)
            if feasible(w) and extend(w, depth + 1):
                return True
            path_edges.pop()
            visited[w] = False
        return False

    if not extend(0, 1):
        return None
    return _require_cycle(g, path_edges, "brute-force cycle")


# ---------------------------------------------------------------------------
# pipeline


@dataclass
class PipelineReport:
    strategy: str
    steps: list[str] = field(default_factory=list)
    certificates: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)


def lemma_cyclic_check(g0: PlaneGraph) -> tuple[int, int, bool]:
    """Cyclic edge-connectivity of g0 against vertex connectivity of Lf(g0)/Q."""
    k1 = cyclic_edge_connectivity(g0)
    lf, q = leapfrog(g0)
    h, _ = contract_factor(lf, q)
    k2 = vertex_connectivity(h)
    return k1, k2, k1 == k2


STRATEGIES = ("faces", "payan", "brute")


def hamiltonian_pipeline(
    g0: PlaneGraph,
    strategy: str = "faces",
    payan_guard: int = DEFAULT_PAYAN_GUARD,
    ham_guard: int = DEFAULT_HAM_GUARD,
) -> tuple[HamCycle, PipelineReport]:
    """Hamiltonian cycle of the leapfrog extension of ``g0`` by the chosen route."""
    report = PipelineReport(strategy)
    t0 = time.perf_counter()
    if strategy == "faces":
        if not g0.is_cubic():
            raise HypothesisViolation("faces strategy: g0 must be cubic")
        if not g0.is_simple():
            raise HypothesisViolation("faces strategy: g0 must be simple")
        if not g0.is_bipartite():
            raise HypothesisViolation("faces strategy: g0 must be bipartite")
        k = cyclic_edge_connectivity(g0)
        if k < 4:
            raise HypothesisViolation(f"faces strategy: cyclic edge-connectivity {k} < 4")
        report.steps.append(f"hypotheses: cubic, simple, bipartite, cyclic edge-connectivity {k}")
        lf, q = leapfrog(g0)
        h, cmap = contract_factor(lf, q)
        report.certificates.update(leapfrog=lf, q=q, h=h, cmap=cmap)
        lattice = build_triangle_lattice(h)
        report.certificates["lattice"] = lattice
        mode = "odd" if h.num_vertices % 2 else "even_degree4"
        report.steps.append(f"H has {h.num_vertices} vertices; mode {mode}")
        ft, trace = build_face_tree_traced(h, mode)
        report.certificates.update(face_tree=ft, trace=trace)
        cycle = lift_face_tree(lf, q, cmap, ft, h)
        report.steps.append("lifted face tree to a Hamiltonian cycle")
    elif strategy == "payan":
        cycle, lf, cert = leapfrog_ham_payan(g0, payan_guard)
        report.certificates.update(leapfrog=lf, payan=cert)
        report.steps.append(f"Payan set of size {len(cert.S)}")
    elif strategy == "brute":
        lf, _ = leapfrog(g0)
        report.certificates["leapfrog"] = lf
        cycle = brute_force_hamiltonian(lf, ham_guard)
        if cycle is None:
            raise VerificationFailure("brute force found no Hamiltonian cycle of the leapfrog extension")
        report.steps.append("backtracking search")
    else:
        raise HypothesisViolation(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    cycle = _require_cycle(lf, cycle.edges, f"{strategy} cycle")
    report.timings["total_s"] = time.perf_counter() - t0
    return cycle, report
