import itertools

import networkx as nx
import pytest
from hypothesis import given

from conftest import CUBIC_FIXTURES, cubic_plane_graphs, cycle_graph, fixture, triangulations
from planeham.errors import (
    DisconnectedGraph,
    HypothesisViolation,
    IneligibleGraph,
    InconsistentRotation,
    NonPlanarRotation,
)
from planeham.planar_core import (
    PlaneGraph,
    RotationEditor,
    build_plane_graph,
    canonical_code,
    cyclic_edge_connectivity,
    dual,
    face_coloring,
    is_isomorphic,
    region_partition,
    twin,
    vertex_connectivity,
)


def edges_of_cycle(g, labels):
    vs = [g.vertex(x) for x in labels]
    return [g.edges_between(vs[i], vs[(i + 1) % len(vs)])[0] for i in range(len(vs))]


# --- independent oracles ---------------------------------------------------


def nx_face_lengths(g: PlaneGraph) -> list[int]:
    """Face lengths from networkx's own planar embedding machinery."""
    emb = nx.PlanarEmbedding()
    for v in range(g.num_vertices):
        nbrs = g.neighbors(v)
        emb.add_half_edge(v, nbrs[0])
        for a, b in zip(nbrs, nbrs[1:]):
            emb.add_half_edge(v, b, ccw=a)
    emb.check_structure()
    seen, lengths = set(), []
    for u, v in emb.edges():
        if (u, v) in seen:
            continue
        face = emb.traverse_face(u, v, mark_half_edges=seen)
        lengths.append(len(face))
    return sorted(lengths)


def oracle_cyclic_connectivity(g: PlaneGraph) -> int | None:
    G = nx.MultiGraph()
    G.add_nodes_from(range(g.num_vertices))
    keys = [G.add_edge(*g.ends(e)) for e in range(g.num_edges)]
    for k in range(1, 6):
        for cut in itertools.combinations(range(g.num_edges), k):
            H = G.copy()
            H.remove_edges_from((*g.ends(e), keys[e]) for e in cut)
            cyclic = sum(
                1 for comp in nx.connected_components(H) if H.subgraph(comp).number_of_edges() >= len(comp)
            )
            if cyclic >= 2:
                return k
    return None


def oracle_vertex_connectivity(g: PlaneGraph) -> int:
    G = nx.Graph(g.to_networkx())
    n = G.number_of_nodes()
    for k in range(n - 1):
        for cut in itertools.combinations(G.nodes, k):
            H = G.copy()
            H.remove_nodes_from(cut)
            if not nx.is_connected(H):
                return k
    return n - 1


# --- construction ----------------------------------------------------------


def test_k4_counts():
    g = fixture("k4")
    assert (g.num_vertices, g.num_edges, g.num_faces) == (4, 6, 4)
    assert all(f.length == 3 for f in g.faces)


def test_cube_faces_all_quadrilaterals():
    g = fixture("cube")
    assert g.num_faces == 6 and all(f.length == 4 for f in g.faces)


def test_figure2_faces():
    g = fixture("figure2_h")
    assert (g.num_vertices, g.num_edges, g.num_faces) == (13, 33, 22)
    assert all(f.length == 3 for f in g.faces if not f.is_outer)
    assert sorted(g.label(v) for v in g.outer.vertices) == ["v1", "v2", "v3"]


def test_single_cycle_two_faces():
    g = cycle_graph(4)
    assert [f.length for f in g.faces] == [4, 4]


def test_outer_face_default_is_longest_then_smallest_dart():
    g = build_plane_graph({0: [1, 2, 3], 1: [0, 3, 2], 2: [0, 1, 3], 3: [0, 2, 1]})
    assert g.outer_face == 0  # all faces tie at length 3; face 0 holds dart 0


def test_inconsistent_rotation_named():
    with pytest.raises(InconsistentRotation):
        PlaneGraph([[0, 2], [1, 2]])


def test_disconnected_input():
    with pytest.raises(DisconnectedGraph):
        PlaneGraph([[0], [1], [2], [3]])


def test_nonplanar_rotation_named():
    # K4 with the rotation at one vertex reversed has genus > 0
    g = fixture("k4")
    rot = [list(r) for r in g.rotations]
    rot[0] = rot[0][::-1]
    with pytest.raises(NonPlanarRotation, match="expected 2"):
        PlaneGraph(rot)


def test_unknown_neighbour_in_mapping():
    with pytest.raises(InconsistentRotation):
        build_plane_graph({"a": ["b"], "b": ["c"]})


def test_parallel_edges_pairing():
    # theta graph on two vertices: three parallel edges
    g = build_plane_graph([[1, 1, 1], [0, 0, 0]])
    assert g.num_faces == 3 and all(f.length == 2 for f in g.faces)


@given(triangulations())
def test_dart_structure(g):
    for d in range(g.num_darts):
        assert twin(twin(d)) == d != twin(d)
        assert g.rot_prev(g.rot_next(d)) == d
    placed = sorted(d for r in g.rotations for d in r)
    assert placed == list(range(g.num_darts))
    assert sum(f.length for f in g.faces) == 2 * g.num_edges
    assert g.num_vertices - g.num_edges + g.num_faces == 2


@given(cubic_plane_graphs())
def test_face_tracing_matches_networkx(g):
    assert sorted(f.length for f in g.faces) == nx_face_lengths(g)


@pytest.mark.parametrize("name", ["k4", "cube", "octahedron", "figure2_h", "figure1_g0"])
def test_face_tracing_matches_networkx_on_fixtures(name):
    g = fixture(name)
    assert sorted(f.length for f in g.faces) == nx_face_lengths(g)


# --- duality and isomorphism -----------------------------------------------


def test_dual_k4_self_dual():
    assert is_isomorphic(dual(fixture("k4")), fixture("k4"))


def test_dual_cube_is_octahedron():
    d = dual(fixture("cube"))
    assert (d.num_vertices, d.num_edges, d.num_faces) == (6, 12, 8)
    assert is_isomorphic(d, fixture("octahedron"))


def test_double_dual_restores_outer_face(any_fixture):
    g = any_fixture
    # dual vertex f is face f of g, so rooting the second dual there maps the outer face back
    dd = dual(dual(g), outer_vertex=g.outer_face)
    assert is_isomorphic(dd, g, respect_outer=True)
    assert is_isomorphic(dual(dual(g)), g)


def test_isomorphism_distinguishes():
    assert not is_isomorphic(fixture("cube"), fixture("pentagonal_prism"))
    assert not is_isomorphic(fixture("k4"), fixture("octahedron"))


@given(cubic_plane_graphs())
def test_canonical_code_invariant_under_relabeling(g):
    perm = list(range(g.num_vertices))[::-1]
    rot = [None] * g.num_vertices
    for v in range(g.num_vertices):
        rot[perm[v]] = [perm[w] for w in g.neighbors(v)]
    h = build_plane_graph(rot)
    assert canonical_code(h, respect_outer=False) == canonical_code(g, respect_outer=False)


# --- regions ---------------------------------------------------------------


def test_region_facial_cycle_not_separating():
    g = fixture("cube")
    rp = region_partition(g, list(g.faces[0].edges))
    assert not rp.is_separating


def test_region_figure2_inner_triangle():
    g = fixture("figure2_h")
    rp = region_partition(g, edges_of_cycle(g, ["v4", "v5", "v6"]))
    assert {g.label(v) for v in rp.interior_vertices} == {"v0"}
    assert rp.is_separating


def test_region_figure2_outer_triangle():
    g = fixture("figure2_h")
    rp = region_partition(g, edges_of_cycle(g, ["v1", "v2", "v3"]))
    assert len(rp.interior_vertices) == 10 and not rp.exterior_vertices


def test_region_rejects_non_cycle():
    g = fixture("cube")
    with pytest.raises(HypothesisViolation):
        region_partition(g, [0, 1])


@given(triangulations(max_n=8))
def test_region_partition_is_a_partition(g):
    G = nx.Graph(g.to_networkx())
    for cyc in nx.simple_cycles(G, length_bound=5):
        edges = [g.edges_between(cyc[i], cyc[(i + 1) % len(cyc)])[0] for i in range(len(cyc))]
        rp = region_partition(g, edges)
        assert not rp.interior_vertices & rp.exterior_vertices
        assert rp.interior_vertices | rp.exterior_vertices | rp.cycle_vertices == set(range(g.num_vertices))
        assert g.outer_face in rp.exterior_faces


# --- connectivity ----------------------------------------------------------


@pytest.mark.parametrize(
    "name,expected", [("triangular_prism", 3), ("cube", 4), ("pentagonal_prism", 4)]
)
def test_cyclic_edge_connectivity_examples(name, expected):
    assert cyclic_edge_connectivity(fixture(name)) == expected


@pytest.mark.parametrize("name", CUBIC_FIXTURES)
def test_cyclic_edge_connectivity_oracle(name):
    g = fixture(name)
    assert cyclic_edge_connectivity(g) == oracle_cyclic_connectivity(g)


@given(cubic_plane_graphs(min_tri=5, max_tri=8))
def test_cyclic_edge_connectivity_oracle_random(g):
    assert cyclic_edge_connectivity(g) == oracle_cyclic_connectivity(g)


def test_cyclic_edge_connectivity_ineligible():
    with pytest.raises(IneligibleGraph):
        cyclic_edge_connectivity(fixture("k4"))
    with pytest.raises(HypothesisViolation):
        cyclic_edge_connectivity(fixture("octahedron"))


@pytest.mark.parametrize("name,expected", [("k4", 3), ("octahedron", 4), ("cube", 3)])
def test_vertex_connectivity_examples(name, expected):
    g = fixture(name)
    assert vertex_connectivity(g) == expected == oracle_vertex_connectivity(g)


@given(triangulations(max_n=8))
def test_vertex_connectivity_oracle_random(g):
    assert vertex_connectivity(g) == oracle_vertex_connectivity(g)


# --- colourings ------------------------------------------------------------


def assert_proper(g, col):
    for e in range(g.num_edges):
        a, b = g.face_of(2 * e), g.face_of(2 * e + 1)
        assert a == b or col[a] != col[b]


def test_two_coloring_cycle():
    g = cycle_graph(4)
    col = face_coloring(g, "two_color")
    assert col[g.outer_face] == 1 and set(col.values()) == {1, 2}


def test_two_coloring_octahedron_splits_evenly():
    g = fixture("octahedron")
    col = face_coloring(g, "two_color")
    assert_proper(g, col)
    assert sorted(list(col.values()).count(c) for c in (1, 2)) == [4, 4]
    assert col[g.outer_face] == 1


def test_three_coloring_cube_pairs_opposite_faces():
    g = fixture("cube")
    col = face_coloring(g, "three_color")
    assert_proper(g, col)
    for f in g.faces:
        same = [h.id for h in g.faces if col[h.id] == col[f.id] and h.id != f.id]
        assert len(same) == 1
        assert not set(f.vertices) & set(g.faces[same[0]].vertices)


def test_coloring_preconditions():
    with pytest.raises(HypothesisViolation):
        face_coloring(fixture("cube"), "two_color")
    with pytest.raises(HypothesisViolation):
        face_coloring(fixture("pentagonal_prism"), "three_color")


# --- editing ---------------------------------------------------------------


def test_contract_edge_keeps_planarity():
    g = fixture("cube")
    ed = RotationEditor(g)
    ed.contract_edge(0)
    h, rec = ed.freeze()
    assert (h.num_vertices, h.num_edges) == (7, 11)
    assert h.num_vertices - h.num_edges + h.num_faces == 2
    assert len(rec.edge_origin) == 11
