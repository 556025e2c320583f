import pytest
from hypothesis import given

from conftest import CUBIC_FIXTURES, cube_setup, cubic_plane_graphs, cycle_graph, figure1_setup, fixture
from planeham.errors import HypothesisViolation
from planeham.face_trees import FaceTree, brute_force_face_tree, validate_face_tree
from planeham.formats import parse_vertex_cycle
from planeham.hamiltonian import (
    PayanCertificate,
    brute_force_hamiltonian,
    face_side_problems,
    hamiltonian_pipeline,
    leapfrog_ham_payan,
    lemma_cyclic_check,
    lift_face_tree,
    lift_via_a_trail,
    payan_set,
    project_hamiltonian,
    validate_payan,
    verify_hamiltonian,
)
from planeham.planar_core import cyclic_edge_connectivity
from planeham.transforms import contract_factor, enumerate_facial_two_factors, hexagon_of_vertex, leapfrog


def bounded_digon(h):
    return next(f.id for f in h.faces if not f.is_outer)


# --- verification -------------------------------------------------------------


def test_verify_cycle_graph():
    g = cycle_graph(4)
    check = verify_hamiltonian(g, range(4))
    assert check.ok and len(check.cycle.interior_faces) == 1


def test_verify_cube_six_cycle():
    g = fixture("cube")
    six = parse_vertex_cycle(g, "a1 a2 a3 b3 b4 b1")
    check = verify_hamiltonian(g, six)
    assert not check.ok
    assert any("2 vertices unvisited" in p for p in check.problems)


def test_verify_figure1_c0():
    g, _, _, _, c0 = figure1_setup()
    check = verify_hamiltonian(g, c0)
    assert check.ok
    assert g.outer_face in check.cycle.exterior_faces


def test_verify_two_cycles():
    g = fixture("cube")
    two = parse_vertex_cycle(g, "a1 a2 a3 a4") + parse_vertex_cycle(g, "b1 b2 b3 b4")
    check = verify_hamiltonian(g, two)
    assert not check.ok and "2 cycles" in check.problems[0]


def test_verify_unknown_edge():
    assert not verify_hamiltonian(fixture("k4"), [99])


# --- brute force ----------------------------------------------------------------


@pytest.mark.parametrize("name,n", [("cube", 8), ("k4", 4)])
def test_brute_force_finds_cycle(name, n):
    c = brute_force_hamiltonian(fixture(name))
    assert c is not None and len(c.edges) == n


def test_brute_force_guard():
    with pytest.raises(HypothesisViolation, match="guard"):
        brute_force_hamiltonian(fixture("figure1_g0"), guard=10)


def test_brute_force_none_on_theta():
    # two vertices of degree 3 joined to three paths: not Hamiltonian
    from planeham.planar_core import build_plane_graph

    g = build_plane_graph({0: [2, 3, 4], 1: [4, 3, 2], 2: [0, 1], 3: [0, 1], 4: [0, 1]})
    assert brute_force_hamiltonian(g) is None


# --- lift and project --------------------------------------------------------------


def test_lift_cube_single_digon():
    g, q, h, cmap = cube_setup()
    ft = FaceTree.of([bounded_digon(h)], 2)
    c = lift_face_tree(g, q, cmap, ft, h)
    assert len(c.edges) == 8
    lateral = [e for e in c.edges if {g.label(v)[0] for v in g.ends(e)} == {"a", "b"}]
    assert len(lateral) == 2
    assert project_hamiltonian(g, q, cmap, c, h).face_tree == ft


def test_lift_rejects_outer_face():
    g, q, h, cmap = cube_setup()
    with pytest.raises(HypothesisViolation, match="outer face"):
        lift_face_tree(g, q, cmap, FaceTree.of([h.outer_face], 2))


def test_project_rejects_non_hamiltonian():
    g, q, _, cmap = cube_setup()
    with pytest.raises(HypothesisViolation, match="not Hamiltonian"):
        project_hamiltonian(g, q, cmap, parse_vertex_cycle(g, "a1 a2 a3 a4"))


def test_project_figure1_names_shared_edge():
    g, q, h, cmap, c0 = figure1_setup()
    res = project_hamiltonian(g, q, cmap, c0, h)
    assert not res.ok
    shared = [v for v in res.violations if v.kind == "shared_edge"]
    assert shared and shared[0].witness[2] == "v11v16"


def test_quasi_q_face_inside_is_reported():
    g, q, h, cmap = cube_setup()
    ft = FaceTree.of([bounded_digon(h)], 2)
    c = lift_face_tree(g, q, cmap, ft, h)
    # the same cycle read against a tree that calls vertex 0 quasi
    wrong = FaceTree.of(ft.faces, 2, [0])
    assert any("quasi vertex 0 is inside" in p for p in face_side_problems(g, cmap, c, wrong))
    assert "quasi_degree" in {v.kind for v in validate_face_tree(h, wrong)}


def round_trip_cases():
    for name in CUBIC_FIXTURES + ("figure1_g0",):
        g = fixture(name)
        for q in enumerate_facial_two_factors(g):
            if len(q) < 2:
                continue
            h, cmap = contract_factor(g, q)
            if sum(1 for f in h.faces if not f.is_outer) > 14:
                continue
            yield name, g, q, h, cmap


@pytest.mark.parametrize("case", list(round_trip_cases()), ids=lambda c: c[0])
def test_lift_project_round_trip(case):
    _, g, q, h, cmap = case
    ft = brute_force_face_tree(h)
    if ft is None:
        pytest.skip("reduced graph has no face tree")
    c = lift_face_tree(g, q, cmap, ft, h)
    assert project_hamiltonian(g, q, cmap, c, h).face_tree == ft
    assert sorted(lift_via_a_trail(g, cmap, h, ft)) == sorted(c.edges)
    assert face_side_problems(g, cmap, c, ft) == []


@pytest.mark.parametrize("name", ["cube", "triangular_prism", "pentagonal_prism"])
def test_project_then_lift_reproduces_edges(name):
    lf, q = leapfrog(fixture(name))
    h, cmap = contract_factor(lf, q)
    c = brute_force_hamiltonian(lf)
    res = project_hamiltonian(lf, q, cmap, c, h)
    if res.ok:
        assert validate_face_tree(h, res.face_tree) == []
        assert sorted(lift_face_tree(lf, q, cmap, res.face_tree, h).edges) == sorted(c.edges)
    else:
        assert res.violations


# --- Payan route ----------------------------------------------------------------------


def test_payan_pentagonal_prism_hand_set():
    g = fixture("pentagonal_prism")
    s = tuple(g.vertex(x) for x in ("a1", "a3", "b5"))
    tree = tuple(e for e in range(g.num_edges) if not set(g.ends(e)) & set(s))
    assert validate_payan(g, PayanCertificate(s, tree)) == []
    assert len(tree) == 6


def test_payan_set_pentagonal_prism():
    g = fixture("pentagonal_prism")
    cert = payan_set(g)
    assert len(cert.S) == 3 and validate_payan(g, cert) == []
    assert len(cert.tree_edges) == g.num_vertices - len(cert.S) - 1


def test_payan_rejects_wrong_residue():
    with pytest.raises(HypothesisViolation, match="2 mod 4"):
        payan_set(fixture("cube"))


def test_payan_rejects_low_cyclic_connectivity():
    g = fixture("triangular_prism")
    assert g.num_vertices == 6
    with pytest.raises(HypothesisViolation, match="cyclic edge-connectivity"):
        payan_set(g)


def test_payan_validation_catches_bad_sets():
    g = fixture("pentagonal_prism")
    s = (g.vertex("a1"), g.vertex("a2"), g.vertex("b5"))
    problems = validate_payan(g, PayanCertificate(s, ()))
    assert any("both ends" in p for p in problems)


def test_leapfrog_payan_pentagonal_prism():
    g = fixture("pentagonal_prism")
    c, lf, cert = leapfrog_ham_payan(g)
    assert lf.num_vertices == 30 and len(c.edges) == 30 == 2 * g.num_edges
    rest = [v for v in range(g.num_vertices) if v not in cert.S]
    hexes = [lf.faces[hexagon_of_vertex(g, lf, v)] for v in rest]
    for i, a in enumerate(hexes):
        for b in hexes[i + 1:]:
            assert not set(a.edges) & set(b.edges) & set(c.edges)


# --- pipeline ----------------------------------------------------------------------


def test_pipeline_cube_faces():
    c, rep = hamiltonian_pipeline(fixture("cube"), "faces")
    assert len(c.vertices) == 24
    assert any("even_degree4" in s for s in rep.steps)
    assert {"q", "h", "lattice", "face_tree"} <= set(rep.certificates)


def test_pipeline_pentagonal_payan():
    c, rep = hamiltonian_pipeline(fixture("pentagonal_prism"), "payan")
    assert len(c.edges) == 30 and "payan" in rep.certificates


def test_pipeline_k4_faces_not_bipartite():
    with pytest.raises(HypothesisViolation, match="bipartite"):
        hamiltonian_pipeline(fixture("k4"), "faces")


def test_pipeline_brute():
    c, _ = hamiltonian_pipeline(fixture("k4"), "brute")
    assert len(c.edges) == 12


def test_pipeline_unknown_strategy():
    with pytest.raises(HypothesisViolation, match="unknown strategy"):
        hamiltonian_pipeline(fixture("cube"), "guess")


@pytest.mark.parametrize("name", ["cube", "truncated_octahedron"])
def test_pipeline_agrees_with_oracle(name):
    c, rep = hamiltonian_pipeline(fixture(name), "faces")
    lf = rep.certificates["leapfrog"]
    assert verify_hamiltonian(lf, c.edges)
    if lf.num_vertices <= 32:
        assert brute_force_hamiltonian(lf) is not None


# --- the cyclic connectivity identity ------------------------------------------------


@pytest.mark.parametrize(
    "name,expected", [("cube", (4, 4, True)), ("triangular_prism", (3, 3, True)), ("pentagonal_prism", (4, 4, True))]
)
def test_lemma_examples(name, expected):
    assert lemma_cyclic_check(fixture(name)) == expected


@given(cubic_plane_graphs(min_tri=5, max_tri=9))
def test_lemma_random(g):
    k1, k2, equal = lemma_cyclic_check(g)
    assert equal and k1 == cyclic_edge_connectivity(g)
