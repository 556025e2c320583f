from __future__ import annotations

import functools
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from planeham.catalog import K4_NEIGHBOURS, NAMES, catalog, split_vertex
from planeham.formats import read_planar_code
from planeham.planar_core import PlaneGraph, build_plane_graph, dual, rotation_from_neighbors

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def corpus(name: str) -> tuple[PlaneGraph, ...]:
    return tuple(read_planar_code(DATA / f"{name}.pc"))


@functools.lru_cache(maxsize=None)
def fixture(name: str) -> PlaneGraph:
    return catalog(name).graph


def cycle_graph(n: int) -> PlaneGraph:
    return build_plane_graph([[(i - 1) % n, (i + 1) % n] for i in range(n)])


CUBIC_FIXTURES = ("triangular_prism", "cube", "pentagonal_prism", "hexagonal_prism", "truncated_octahedron")


@pytest.fixture(params=NAMES)
def any_fixture(request):
    return fixture(request.param)


# ---------------------------------------------------------------------------
# hypothesis strategies


@st.composite
def triangulations(draw, min_n: int = 4, max_n: int = 10) -> PlaneGraph:
    """Random simple triangulation grown from K4 by vertex splits, random outer face."""
    n = draw(st.integers(min_n, max_n))
    nbrs = [list(r) for r in K4_NEIGHBOURS]
    while len(nbrs) < n:
        v = draw(st.integers(0, len(nbrs) - 1))
        d = len(nbrs[v])
        i = draw(st.integers(0, d - 2))
        j = draw(st.integers(i + 1, d - 1))
        nbrs = split_vertex(nbrs, v, i, j)
    g = PlaneGraph(rotation_from_neighbors(nbrs))
    return g.with_outer(draw(st.integers(0, g.num_faces - 1)))


@st.composite
def cubic_plane_graphs(draw, min_tri: int = 4, max_tri: int = 9) -> PlaneGraph:
    """3-connected cubic plane graphs as duals of random triangulations."""
    t = draw(triangulations(min_tri, max_tri))
    g = dual(t)
    return g.with_outer(draw(st.integers(0, g.num_faces - 1)))


def figure1_setup():
    """G0, Q0, H0 = G0/Q0, its contraction map and the edge ids of C0."""
    from planeham.formats import parse_vertex_cycle
    from planeham.transforms import FacialTwoFactor, contract_factor

    entry = catalog("figure1_g0")
    g = entry.graph
    q = FacialTwoFactor.from_vertex_cycles(g, entry.extras["q0"])
    h, cmap = contract_factor(g, q)
    c0 = parse_vertex_cycle(g, " ".join(entry.extras["c0"]))
    return g, q, h, cmap, c0


def cube_setup():
    """Cube with its top/bottom facial 2-factor and the reduced two-vertex graph."""
    from planeham.transforms import FacialTwoFactor, contract_factor

    g = fixture("cube")
    q = FacialTwoFactor.from_vertex_cycles(g, [["a1", "a4", "a3", "a2"], ["b1", "b2", "b3", "b4"]])
    h, cmap = contract_factor(g, q)
    return g, q, h, cmap


def bowtie() -> PlaneGraph:
    """Two triangles sharing vertex 0."""
    return build_plane_graph({0: [1, 2, 3, 4], 1: [2, 0], 2: [0, 1], 3: [4, 0], 4: [0, 3]})
