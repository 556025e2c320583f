#!/usr/bin/env python3
"""Replay the two worked examples and one positive run of each Hamiltonian route.

Usage: python3 scripts/worked_examples.py
"""

from __future__ import annotations

import time

from planeham.catalog import catalog
from planeham.face_trees import brute_force_face_tree
from planeham.formats import parse_vertex_cycle
from planeham.hamiltonian import hamiltonian_pipeline, project_hamiltonian, verify_hamiltonian
from planeham.transforms import FacialTwoFactor, contract_factor
from planeham.triangles import check_invariant_property


def example_triangulation() -> None:
    h = catalog("figure2_h").graph
    t0 = time.perf_counter()
    spanning = brute_force_face_tree(h, require_spanning=True)
    quasi = brute_force_face_tree(h)
    rep = check_invariant_property(h)
    print("13-vertex triangulation H")
    print(f"  spanning tree of faces: {spanning}  quasi: {quasi}  ({time.perf_counter() - t0:.2f}s)")
    print(f"  invariant property: {rep.witness.describe()}")


def example_cycle() -> None:
    entry = catalog("figure1_g0")
    g = entry.graph
    q = FacialTwoFactor.from_vertex_cycles(g, entry.extras["q0"])
    h, cmap = contract_factor(g, q)
    c0 = parse_vertex_cycle(g, " ".join(entry.extras["c0"]))
    print("28-vertex cubic G0 with cycle C0")
    print(f"  C0 Hamiltonian: {verify_hamiltonian(g, c0).ok}")
    for v in project_hamiltonian(g, q, cmap, c0, h).violations:
        print(f"  {v}")


def routes() -> None:
    for name, strategy in (("cube", "faces"), ("truncated_octahedron", "faces"), ("pentagonal_prism", "payan")):
        cycle, rep = hamiltonian_pipeline(catalog(name).graph, strategy)
        print(f"{name} via {strategy}: {len(cycle.vertices)}-vertex cycle, {rep.timings['total_s']:.3f}s")
        for step in rep.steps:
            print(f"  {step}")


if __name__ == "__main__":
    example_triangulation()
    example_cycle()
    routes()
