import pytest
from hypothesis import assume, given

from conftest import fixture, triangulations
from planeham.errors import HypothesisViolation
from planeham.planar_core import region_partition
from planeham.transforms import FacialTwoFactor, contract_factor, leapfrog
from planeham.triangles import (
    build_triangle_lattice,
    check_invariant_property,
    contract_triangle,
    degree4_candidates,
    degree4_reduction,
    select_and_contract,
    select_contractible_triangle,
)


def named(h, cycles):
    return {c.name: {h.label(v) for v in c.interior_vertices} for c in cycles}


def cube_reduced():
    g = fixture("cube")
    q = FacialTwoFactor.from_vertex_cycles(g, [["a1", "a4", "a3", "a2"], ["b1", "b2", "b3", "b4"]])
    return contract_factor(g, q)[0]


# --- lattice ---------------------------------------------------------------


def test_octahedron_lattice_empty():
    lat = build_triangle_lattice(fixture("octahedron"))
    assert lat.triangles == () and lat.digons == ()


def test_figure2_lattice():
    h = fixture("figure2_h")
    lat = build_triangle_lattice(h)
    assert named(h, lat.triangles) == {
        "v4v5v6": {"v0"},
        "v1v4v5": {"v7"},
        "v1v2v5": {"v8"},
        "v2v5v6": {"v9"},
        "v2v3v6": {"v10"},
        "v3v4v6": {"v11"},
        "v1v3v4": {"v12"},
    }
    assert lat.outer.name == "v1v2v3"
    assert len(lat.successors_of(lat.outer)) == 7


def test_cube_reduced_lattice_empty():
    lat = build_triangle_lattice(cube_reduced())
    assert lat.triangles == () and lat.digons == ()


def test_parallel_edges_identified():
    # K4 with one contracted face: two vertices joined by three parallel edges
    h = fixture("octahedron")
    h, _ = contract_triangle(h, next(f.id for f in h.faces if not f.is_outer))
    lat = build_triangle_lattice(h)
    keys = [t.key for t in lat.triangles]
    assert len(keys) == len(set(keys))


@given(triangulations(max_n=9))
def test_order_agrees_with_region_containment(h):
    lat = build_triangle_lattice(h)
    for t in lat.triangles:
        rp = region_partition(h, t.edges)
        assert rp.interior_vertices == t.interior_vertices
    for s in lat.triangles:
        for t in lat.triangles:
            if s == t:
                continue
            # oracle: every vertex of s is on or inside t, and t strictly contains s's interior
            rs, rt = region_partition(h, s.edges), region_partition(h, t.edges)
            expect = rs.cycle_vertices <= rt.cycle_vertices | rt.interior_vertices and (
                rs.interior_vertices < rt.interior_vertices
            )
            assert ((s, t) in lat.order) == expect


@given(triangulations(max_n=10))
def test_direct_successor_in_degree_at_most_one(h):
    lat = build_triangle_lattice(h)
    nodes = list(lat.triangles) + ([lat.outer] if lat.outer else [])
    for s in lat.triangles:
        parents = [t for t in nodes if s in lat.direct_successor[t]]
        assert len(parents) <= 1


# --- invariant property ------------------------------------------------------


def test_figure2_invariant_fails_at_outer():
    h = fixture("figure2_h")
    rep = check_invariant_property(h)
    assert not rep.holds
    assert rep.witness.kind == "successors"
    assert rep.witness.triangle.name == "v1v2v3"
    assert len(rep.witness.successors) == 7


def test_bounded_facial_triangle_holds():
    h = fixture("figure2_h")
    for f in h.faces:
        if not f.is_outer:
            assert check_invariant_property(h, f.id).holds


def test_octahedron_invariant_holds():
    assert check_invariant_property(fixture("octahedron")).holds


def test_scope_must_be_triangle():
    with pytest.raises(HypothesisViolation):
        check_invariant_property(fixture("cube"), 0)


# --- contraction ------------------------------------------------------------


def test_contract_octahedron_face():
    h = fixture("octahedron")
    f = next(f.id for f in h.faces if not f.is_outer)
    h2, _ = contract_triangle(h, f)
    assert (h2.num_vertices, h2.num_edges, h2.num_faces) == (4, 9, 7)


def test_contract_k4_face():
    h = fixture("k4")
    f = next(f.id for f in h.faces if not f.is_outer)
    h2, _ = contract_triangle(h, f)
    assert h2.num_vertices == 2 and h2.num_edges == 3


def test_contract_rejects_outer_and_non_triangles():
    h = fixture("octahedron")
    with pytest.raises(HypothesisViolation):
        contract_triangle(h, h.outer_face)
    with pytest.raises(HypothesisViolation):
        contract_triangle(fixture("cube"), 1)


@given(triangulations(max_n=10))
def test_contract_drops_two_vertices(h):
    for f in h.faces:
        if f.is_outer:
            continue
        h2, _ = contract_triangle(h, f.id)
        assert h2.num_vertices == h.num_vertices - 2
        assert h2.num_vertices - h2.num_edges + h2.num_faces == 2


# --- contractible triangle selection -----------------------------------------------------


def test_select_octahedron_outer():
    h = fixture("octahedron")
    sel = select_and_contract(h, h.outer_face)
    assert sel.report.holds
    assert len(set(h.faces[sel.face].vertices) & set(h.outer.vertices)) <= 1
    assert build_triangle_lattice(sel.graph).triangles == ()


def test_select_needs_two_interior_vertices():
    h = fixture("figure2_h")
    with pytest.raises(HypothesisViolation, match="fewer than two"):
        select_contractible_triangle(h, [h.edges_between(h.vertex("v4"), h.vertex("v5"))[0],
                                         h.edges_between(h.vertex("v5"), h.vertex("v6"))[0],
                                         h.edges_between(h.vertex("v4"), h.vertex("v6"))[0]])


def test_select_rejects_invariant_failure():
    h = fixture("figure2_h")
    with pytest.raises(HypothesisViolation, match="invariant"):
        select_contractible_triangle(h, h.outer_face)


@given(triangulations(min_n=5, max_n=11))
def test_selection_keeps_invariant(h):
    lat = build_triangle_lattice(h)
    tops = ([lat.outer] if lat.outer else []) + list(lat.triangles)
    tops = [t for t in tops if len(t.interior_vertices) >= 2 and check_invariant_property(h, t, lat).holds]
    assume(tops)
    for t in tops:
        sel = select_and_contract(h, t, lat)
        assert len(set(h.faces[sel.face].vertices) & t.vertices) <= 1
        assert sel.face in t.interior_faces
        assert check_invariant_property(sel.graph, sel.image).holds


# --- degree-4 reduction ----------------------------------------------------------


@pytest.mark.parametrize("label", ["i1", "i2", "i3"])
def test_degree4_octahedron(label):
    h = fixture("octahedron")
    h2, rec = degree4_reduction(h, h.vertex(label))
    assert h2.num_vertices == h.num_vertices - 3 == 3
    assert check_invariant_property(h2).holds
    assert build_triangle_lattice(h2).digons == ()
    assert len(rec.triangles) == 2


def test_degree4_on_leapfrog_reduction():
    lf, q = leapfrog(fixture("truncated_octahedron"))
    h, _ = contract_factor(lf, q)
    v0 = next(v for v in range(h.num_vertices) if h.degree(v) == 4 and v not in h.outer.vertices
              and degree4_candidates(h, v))
    h2, _ = degree4_reduction(h, v0)
    assert h2.num_vertices == h.num_vertices - 3
    assert build_triangle_lattice(h2).digons == ()


def test_degree4_preconditions():
    h = fixture("octahedron")
    with pytest.raises(HypothesisViolation, match="outer face"):
        degree4_reduction(h, h.vertex("o1"))
    with pytest.raises(HypothesisViolation, match="not 4"):
        degree4_reduction(fixture("figure2_h"), fixture("figure2_h").vertex("v5"))
