import pytest
from hypothesis import given

from conftest import cube_setup, fixture, triangulations
from planeham.catalog import NAMES
from planeham.errors import FormatError
from planeham.formats import (
    HEADER,
    CertificateBundle,
    decode_planar_code,
    encode_planar_code,
    format_certificate,
    format_text,
    parse_certificate,
    parse_text,
    parse_vertex_cycle,
    reverify_certificate,
)
from planeham.hamiltonian import hamiltonian_pipeline
from planeham.planar_core import PlaneGraph, canonical_code, is_isomorphic

# K4 as plantri writes it: 1-based neighbours, clockwise, zero-terminated
K4_BYTES = HEADER + bytes([4, 2, 3, 4, 0, 1, 4, 3, 0, 1, 2, 4, 0, 1, 3, 2, 0])


def nbr_lists(g):
    # dart ids are renumbered on decode; the counterclockwise neighbour order is what must survive
    return [g.neighbors(v) for v in range(g.num_vertices)]


def test_decode_k4():
    (g,) = decode_planar_code(K4_BYTES)
    assert (g.num_vertices, g.num_edges, g.num_faces) == (4, 6, 4)
    assert is_isomorphic(g, fixture("k4"))


def test_decode_reverses_clockwise_lists():
    (g,) = decode_planar_code(K4_BYTES)
    assert [g.label(w) for w in g.neighbors(0)] == ["4", "3", "2"]


def test_empty_stream():
    assert decode_planar_code(HEADER) == []


def test_truncated_record_names_offset():
    with pytest.raises(FormatError, match=r"offset \d+"):
        decode_planar_code(K4_BYTES[:-3])


def test_bad_header():
    with pytest.raises(FormatError, match="header"):
        decode_planar_code(b"garbage")


def test_neighbour_out_of_range():
    with pytest.raises(FormatError, match="exceeds"):
        decode_planar_code(HEADER + bytes([2, 3, 0, 1, 0]))


def test_inconsistent_rotation_is_format_error():
    with pytest.raises(FormatError):
        decode_planar_code(HEADER + bytes([3, 2, 0, 3, 0, 1, 0]))


@pytest.mark.parametrize("name", [n for n in NAMES if fixture(n).is_simple()])
def test_planar_code_round_trip_catalog(name):
    g = fixture(name)
    (back,) = decode_planar_code(encode_planar_code([g]))
    assert canonical_code(back, respect_outer=False) == canonical_code(g, respect_outer=False)
    assert nbr_lists(back) == nbr_lists(g)


@given(triangulations(max_n=12))
def test_planar_code_round_trip_random(g):
    (back,) = decode_planar_code(encode_planar_code([g]))
    assert nbr_lists(back) == nbr_lists(g)


def test_wide_encoding_round_trip():
    from planeham.transforms import leapfrog, truncate

    big = truncate(leapfrog(leapfrog(fixture("truncated_octahedron"))[0])[0])
    assert big.num_vertices > 255
    data = encode_planar_code([big])
    assert data[len(HEADER)] == 0
    (back,) = decode_planar_code(data)
    assert nbr_lists(back) == nbr_lists(big)


def test_encode_rejects_loops():
    g = PlaneGraph([[0, 1]])
    with pytest.raises(FormatError, match="loop"):
        encode_planar_code([g])


# --- text format -------------------------------------------------------------------


def test_text_round_trip(any_fixture):
    g = any_fixture
    back = parse_text(format_text(g))
    assert is_isomorphic(back, g, respect_outer=True)


def test_exact_text_keeps_dart_ids(any_fixture):
    g = any_fixture
    back = parse_text(format_text(g, exact=True))
    assert back.rotations == g.rotations and back.outer_face == g.outer_face
    assert [back.label(v) for v in range(back.num_vertices)] == [g.label(v) for v in range(g.num_vertices)]


def test_text_parallel_edge_tags():
    _, _, h, _ = cube_setup()
    text = format_text(h)
    assert "/" in text
    assert is_isomorphic(parse_text(text), h, respect_outer=True)


def test_text_comments_and_outer():
    g = parse_text("# a triangle\nx: y z\ny: z x  # trailing\nz: x y\nouter: x y z\n")
    assert g.num_vertices == 3 and sorted(g.label(v) for v in g.outer.vertices) == ["x", "y", "z"]


def test_text_hash_inside_label():
    g = parse_text("a#1: b c\nb: c a#1\nc: a#1 b\n")
    assert g.vertex("a#1") == 0


def test_text_errors():
    with pytest.raises(FormatError):
        parse_text("a b c")
    with pytest.raises(FormatError):
        parse_text("a: b\nb: c\n")


def test_vertex_cycle_parsing():
    g = fixture("cube")
    edges = parse_vertex_cycle(g, "a1 a2 a3 a4 a1")
    assert len(edges) == 4
    with pytest.raises(FormatError, match="unknown vertex"):
        parse_vertex_cycle(g, "a1 zz")
    with pytest.raises(FormatError, match="no edge"):
        parse_vertex_cycle(g, "a1 a3")


# --- certificates ---------------------------------------------------------------------


def cube_certificate():
    c, rep = hamiltonian_pipeline(fixture("cube"), "faces")
    h = rep.certificates["h"]
    ft = rep.certificates["face_tree"]
    return CertificateBundle(
        "catalog:cube",
        "faces",
        "ok",
        graph=rep.certificates["leapfrog"],
        cycle_edges=c.edges,
        timings={"total_s": rep.timings["total_s"]},
    ), h, ft


def test_certificate_round_trip():
    b, _, _ = cube_certificate()
    text = format_certificate(b)
    back = parse_certificate(text)
    assert back.cycle_edges == b.cycle_edges and back.status == "ok"
    assert back.graph.rotations == b.graph.rotations
    assert reverify_certificate(back) == []
    assert format_certificate(back) == text


def test_certificate_with_face_tree():
    _, h, ft = cube_certificate()
    b = CertificateBundle("h", "faces", "ok", graph=h, face_tree=(tuple(sorted(ft.faces)), tuple(ft.quasi)))
    back = parse_certificate(format_certificate(b))
    assert back.face_tree == b.face_tree
    assert reverify_certificate(back) == []


def test_tampered_certificate_fails():
    b, _, _ = cube_certificate()
    lines = format_certificate(b).splitlines()
    i = next(k for k, line in enumerate(lines) if line.startswith("cycle-edges"))
    edges = lines[i].split()[1:]
    lines[i] = "cycle-edges " + " ".join(edges[:-2])
    j = next(k for k, line in enumerate(lines) if line.startswith("cycle-vertices"))
    lines[j] = "cycle-vertices " + " ".join(lines[j].split()[1:-2])
    back = parse_certificate("\n".join(lines))
    assert reverify_certificate(back)


def test_failed_certificate():
    b = CertificateBundle("catalog:k4", "faces", "failed", reason="not bipartite")
    back = parse_certificate(format_certificate(b))
    assert back.reason == "not bipartite" and reverify_certificate(back) == []


def test_certificate_format_errors():
    with pytest.raises(FormatError, match="not a planeham certificate"):
        parse_certificate("hello")
    with pytest.raises(FormatError, match="unknown record"):
        parse_certificate("certificate planeham 1\nbogus 1\n")
    with pytest.raises(FormatError, match="graph-end"):
        parse_certificate("certificate planeham 1\ngraph-begin\na: b\n")
