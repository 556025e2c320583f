#!/usr/bin/env python3
"""Generate the planar_code test corpus.

Triangulations are grown from K4 by vertex splitting (every triangulation
other than K4 has a contractible edge, so this reaches all of them), deduped
by canonical code, and their duals written as planar_code.  Counts are checked
against OEIS A000109 (triangulations) and A007021 (4-connected ones).
Simple cubic plane graphs that are not 3-connected come from edge insertion
on cubic multigraphs, starting at the theta graph, plus graphs joining two
such sides by a bridge.  Simple bridgeless counts are checked for n <= 10
(A002851 less the bridged graphs) and the 3-connected planar ones must match
the duals above.

Usage: python3 scripts/make_corpus.py [--out tests/data] [--max-tri 11]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import networkx as nx

from planeham.catalog import K4_NEIGHBOURS, split_vertex
from planeham.formats import encode_planar_code
from planeham.planar_core import PlaneGraph, canonical_code, dual, rotation_from_neighbors

A000109 = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14, 9: 50, 10: 233, 11: 1249, 12: 7595}
A007021 = {6: 1, 7: 1, 8: 2, 9: 4, 10: 10, 11: 25, 12: 87}
# connected simple cubic graphs (A002851) less those with a bridge; the first bridged one has 10 vertices
BRIDGELESS_CUBIC = {4: 1, 6: 2, 8: 5, 10: 18}


def to_graph(nbrs: list[list[int]]) -> PlaneGraph:
    return PlaneGraph(rotation_from_neighbors(nbrs))


def splits(nbrs: list[list[int]]):
    for v in range(len(nbrs)):
        d = len(nbrs[v])
        for i in range(d):
            for j in range(i + 1, d):
                yield split_vertex(nbrs, v, i, j)


def triangulations(max_n: int) -> dict[int, list[PlaneGraph]]:
    layers = {4: [[list(r) for r in K4_NEIGHBOURS]]}
    for n in range(5, max_n + 1):
        seen: dict[tuple, list[list[int]]] = {}
        for t in layers[n - 1]:
            for s in splits(t):
                g = to_graph(s)
                assert all(f.length == 3 for f in g.faces)
                code = canonical_code(g, respect_outer=False)
                seen.setdefault(code, s)
        layers[n] = [seen[c] for c in sorted(seen)]
    return {n: [to_graph(x) for x in ts] for n, ts in layers.items()}


def _iso_key(h: nx.MultiGraph) -> tuple[str, nx.Graph]:
    s = nx.Graph()
    s.add_nodes_from(h)
    for u, v in h.edges():
        s.add_edge(u, v, m=str(h.number_of_edges(u, v)))
    return nx.weisfeiler_lehman_graph_hash(s, edge_attr="m"), s


def _same_mult(p, q) -> bool:
    return p["m"] == q["m"]


def dedup(graphs) -> list[nx.MultiGraph]:
    buckets: dict[str, list[tuple[nx.MultiGraph, nx.Graph]]] = {}
    for h in graphs:
        key, s = _iso_key(h)
        bucket = buckets.setdefault(key, [])
        if not any(nx.is_isomorphic(s, t, edge_match=_same_mult) for _, t in bucket):
            bucket.append((h, s))
    return [h for key in sorted(buckets) for h, _ in buckets[key]]


def bridgeless_cubic(max_n: int, planar_only: bool = False) -> dict[int, list[nx.MultiGraph]]:
    """Loopless 2-edge-connected cubic multigraphs up to isomorphism, grown from the theta graph.

    Edge insertion subdivides two edges (possibly the same one twice) and joins
    the two new vertices; every such graph arises this way.  Removing an edge
    and suppressing keeps planarity, so planar_only may prune as it goes.
    """
    layers = {2: [nx.MultiGraph([(0, 1), (0, 1), (0, 1)])]}
    for n in range(4, max_n + 1, 2):
        x, y = n - 2, n - 1
        grown = []
        for g in layers[n - 2]:
            edges = sorted(g.edges(keys=True))
            for i, (a, b, k) in enumerate(edges):
                for c, d, l in edges[i:]:
                    h = g.copy()
                    h.remove_edge(a, b, k)
                    if (a, b, k) == (c, d, l):
                        h.add_edges_from([(a, x), (x, y), (x, y), (y, b)])
                    else:
                        h.remove_edge(c, d, l)
                        h.add_edges_from([(a, x), (x, b), (c, y), (y, d), (x, y)])
                    if not planar_only or nx.check_planarity(h)[0]:
                        grown.append(h)
        layers[n] = dedup(grown)
    return layers


def is_simple(h: nx.MultiGraph) -> bool:
    return nx.Graph(h).number_of_edges() == h.number_of_edges()


def bridged_cubic(layers: dict[int, list[nx.MultiGraph]], max_n: int) -> list[nx.MultiGraph]:
    """Simple cubic graphs with exactly one bridge, joining two 2-edge-connected sides.

    Up to 12 vertices no cubic graph has two bridges: that needs two end
    sides of at least 5 vertices and a middle one of at least 4.
    """
    sides: dict[int, list[tuple[nx.MultiGraph, int]]] = {}
    for m, gs in layers.items():
        for g in gs:
            for a, b, k in sorted(g.edges(keys=True)):
                h = g.copy()
                h.remove_edge(a, b, k)
                h.add_edges_from([(a, m), (m, b)])
                if is_simple(h):
                    sides.setdefault(m + 1, []).append((h, m))
    out = []
    for n in range(10, max_n + 1, 2):
        for m in range(5, n // 2 + 1, 2):
            for left, r in sides.get(m, []):
                for right, s in sides.get(n - m, []):
                    h = nx.disjoint_union(left, right)
                    h.add_edge(r, m + s)
                    out.append(h)
    return dedup(out)


def embed(g: nx.Graph) -> PlaneGraph | None:
    planar, emb = nx.check_planarity(g)
    if not planar:
        return None
    nodes = sorted(g)
    index = {v: i for i, v in enumerate(nodes)}
    # networkx lists neighbours clockwise
    nbrs = [[index[w] for w in reversed(list(emb.neighbors_cw_order(v)))] for v in nodes]
    return to_graph(nbrs)


def four_connected(t: PlaneGraph) -> bool:
    return t.num_vertices >= 6 and nx.node_connectivity(nx.Graph(t.to_networkx())) >= 4


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--out", default="tests/data")
    ap.add_argument("--max-tri", type=int, default=11, help="largest triangulation (dual has 2n-4 vertices)")
    args = ap.parse_args(argv)
    tris = triangulations(args.max_tri)
    ok = True
    for n, ts in sorted(tris.items()):
        n4 = sum(four_connected(t) for t in ts)
        print(f"triangulations n={n}: {len(ts)} (A000109 {A000109.get(n)}), 4-connected {n4} (A007021 {A007021.get(n, 0)})")
        ok &= len(ts) == A000109.get(n) and (n < 6 or n4 == A007021.get(n))
    if not ok:
        print("count mismatch against OEIS", file=sys.stderr)
        return 1

    def sort_key(g):
        return g.num_vertices

    cubic_all, bip4, c4_2mod4 = [], [], []
    for n, ts in sorted(tris.items()):
        for t in ts:
            g = dual(t)
            if g.num_vertices <= 12:
                cubic_all.append(g)
            f4 = four_connected(t)
            if f4 and g.num_vertices <= 16 and all(t.degree(v) % 2 == 0 for v in range(t.num_vertices)):
                bip4.append(g)
            if f4 and g.num_vertices <= 18 and g.num_vertices % 4 == 2:
                c4_2mod4.append(g)
    # simple cubic plane graphs below 3-connectivity, for the cyclic-connectivity identity
    full = bridgeless_cubic(max(BRIDGELESS_CUBIC))
    for n, expect in BRIDGELESS_CUBIC.items():
        got = sum(1 for h in full[n] if is_simple(h))
        print(f"simple bridgeless cubic n={n}: {got} (expected {expect})")
        ok &= got == expect
    planar_layers = bridgeless_cubic(12, planar_only=True)
    bridged = bridged_cubic(planar_layers, 12)
    ok &= sum(1 for h in bridged if h.number_of_nodes() == 10) == 1
    cubic_low = []
    for h in [h for n in sorted(planar_layers) for h in planar_layers[n] if is_simple(h)] + bridged:
        three = nx.node_connectivity(nx.Graph(h)) >= 3
        if not three:
            cubic_low.append(embed(nx.Graph(h)))
    for n in range(4, 13, 2):
        simple = [h for h in planar_layers[n] if is_simple(h)]
        three = sum(1 for h in simple if nx.node_connectivity(nx.Graph(h)) >= 3)
        n3c = sum(1 for g in cubic_all if g.num_vertices == n)
        print(f"simple planar bridgeless cubic n={n}: {len(simple)}, 3-connected {three} (duals {n3c})")
        ok &= three == n3c
    print(f"simple planar cubic below 3-connectivity: {len(cubic_low)} ({len(bridged)} with a bridge)")
    if not ok:
        print("cubic count mismatch", file=sys.stderr)
        return 1

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, gs in (("cubic3c_le12.pc", cubic_all), ("cubic_low_le12.pc", cubic_low), ("bip_c4_le16.pc", bip4),
                     ("c4_2mod4_le18.pc", c4_2mod4)):
        gs.sort(key=sort_key)
        (out / name).write_bytes(encode_planar_code(gs))
        print(f"wrote {out / name}: {len(gs)} graphs")
    return 0


if __name__ == "__main__":
    sys.exit(main())
