"""Command-line interface.

Exit codes: 0 success, 1 hypothesis violation, 2 verification failure,
3 I/O or format error.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .catalog import catalog as catalog_entry
from .config import Guards
from .errors import FormatError, HypothesisViolation, VerificationFailure
from .face_trees import FaceTree, a_trail_to_face_tree, find_a_trail, validate_face_tree
from .formats import (
    HEADER,
    CertificateBundle,
    decode_planar_code,
    format_certificate,
    format_text,
    parse_certificate,
    parse_text,
    parse_vertex_cycle,
    reverify_certificate,
)
from .hamiltonian import STRATEGIES, hamiltonian_pipeline, verify_hamiltonian
from .planar_core import PlaneGraph, cyclic_edge_connectivity, dual, vertex_connectivity
from .render import render_svg
from .transforms import (
    FacialTwoFactor,
    contract_factor,
    enumerate_facial_two_factors,
    leapfrog,
    radial_graph,
    truncate,
)
from .triangles import check_invariant_property

EXIT_OK, EXIT_HYPOTHESIS, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3


def load_graph(spec: str, index: int = 0, outer_face: int | None = None) -> PlaneGraph:
    if spec.startswith("catalog:"):
        try:
            g = catalog_entry(spec.split(":", 1)[1]).graph
        except KeyError as exc:
            raise FormatError(str(exc.args[0])) from None
    else:
        data = Path(spec).read_bytes()
        if data.startswith(HEADER[:13]):
            graphs = decode_planar_code(data)
            if not 0 <= index < len(graphs):
                raise FormatError(f"{spec}: graph index {index} out of range ({len(graphs)} graphs)")
            g = graphs[index]
        else:
            try:
                g = parse_text(data.decode("utf-8"))
            except UnicodeDecodeError as exc:
                raise FormatError(f"{spec}: not a text graph ({exc})") from None
    if outer_face is not None:
        g = g.with_outer(outer_face)
    return g


def _graph(args) -> PlaneGraph:
    if args.graph is None:
        raise FormatError("a graph argument is required")
    return load_graph(args.graph, args.index, args.outer_face)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_info(args) -> int:
    g = _graph(args)
    lengths: dict[int, int] = {}
    for f in g.faces:
        lengths[f.length] = lengths.get(f.length, 0) + 1
    print(f"vertices {g.num_vertices}")
    print(f"edges {g.num_edges}")
    print(f"faces {g.num_faces}")
    print("face lengths " + " ".join(f"{k}x{v}" for k, v in sorted(lengths.items())))
    print("outer " + " ".join(g.label(x) for x in g.outer.vertices))
    print(f"simple {g.is_simple()}")
    print(f"cubic {g.is_cubic()}")
    print(f"bipartite {g.is_bipartite()}")
    return EXIT_OK


def _choose_factor(g: PlaneGraph, faces: list[int] | None) -> FacialTwoFactor:
    if faces:
        return FacialTwoFactor.from_faces(g, faces)
    found = enumerate_facial_two_factors(g, limit=1)
    if not found:
        raise HypothesisViolation("graph has no facial 2-factor")
    return found[0]


def cmd_transform(args) -> int:
    g = _graph(args)
    if args.op == "lf":
        text = format_text(leapfrog(g)[0])
    elif args.op == "dual":
        text = format_text(dual(g))
    elif args.op == "truncate":
        text = format_text(truncate(g))
    elif args.op == "radial":
        R = radial_graph(g)
        name = lambda x: g.label(x[1]) if x[0] == "v" else f"f{x[1]}"
        text = "".join(f"{name(a)} {name(b)}\n" for a, b in sorted(R.edges()))
    else:
        h, _ = contract_factor(g, _choose_factor(g, args.factor))
        text = format_text(h)
    _emit(text, args.out)
    return EXIT_OK


def cmd_ham(args) -> int:
    g0 = _graph(args)
    guard = Guards.uniform(args.guard).pipeline_kwargs()
    t0 = time.perf_counter()
    try:
        cycle, report = hamiltonian_pipeline(g0, args.strategy, **guard)
    except HypothesisViolation as exc:
        if args.cert:
            bundle = CertificateBundle(args.graph, args.strategy, "failed", reason=str(exc),
                                       timings={"total_s": time.perf_counter() - t0})
            Path(args.cert).write_text(format_certificate(bundle))
        raise
    lf = report.certificates["leapfrog"]
    for step in report.steps:
        print(step)
    print(f"hamiltonian cycle of the leapfrog extension: {len(cycle.vertices)} vertices, verified")
    print(" ".join(lf.label(v) for v in cycle.vertices))
    if args.cert:
        bundle = CertificateBundle(args.graph, args.strategy, "ok", graph=lf, cycle_edges=cycle.edges,
                                   timings=dict(report.timings))
        Path(args.cert).write_text(format_certificate(bundle))
    return EXIT_OK


def _read_face_tree(g: PlaneGraph, path: str) -> FaceTree:
    faces, quasi = [], []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        key, _, rest = line.partition(" ")
        if key == "faces":
            try:
                faces += [int(x) for x in rest.split()]
            except ValueError:
                raise FormatError(f"{path}:{lineno}: face ids must be integers") from None
        elif key == "quasi":
            try:
                quasi += [g.vertex(x) for x in rest.split()]
            except KeyError as exc:
                raise FormatError(f"{path}:{lineno}: unknown vertex {exc.args[0]!r}") from None
        elif line.strip() and not line.startswith("#"):
            raise FormatError(f"{path}:{lineno}: expected 'faces ...' or 'quasi ...'")
    return FaceTree.of(faces, g.num_vertices, quasi)


def cmd_check(args) -> int:
    if args.certificate:
        b = parse_certificate(Path(args.certificate).read_text())
        problems = reverify_certificate(b)
        if problems:
            for p in problems:
                print(p)
            raise VerificationFailure(f"certificate {args.certificate} failed re-verification")
        print(f"certificate {b.status} ({b.strategy}) re-verified")
        return EXIT_OK
    g = _graph(args)
    if args.invariant:
        rep = check_invariant_property(g, args.scope)
        if rep.holds:
            print("invariant property holds")
            return EXIT_OK
        print("invariant property fails: " + rep.witness.describe())
        return EXIT_HYPOTHESIS
    if args.facetree:
        bad = validate_face_tree(g, _read_face_tree(g, args.facetree))
        if bad:
            for v in bad:
                print(v)
            raise VerificationFailure("face set is not a quasi spanning tree of faces")
        print("quasi spanning tree of faces: valid")
        return EXIT_OK
    if args.atrail:
        at = find_a_trail(g)
        if at is None:
            raise HypothesisViolation("no A-trail exists")
        ft = a_trail_to_face_tree(g, at)
        print("trail " + " ".join(g.label(g.origin(d)) for d in at.trail))
        print("faces " + " ".join(map(str, sorted(ft.faces))))
        print("quasi " + " ".join(g.label(x) for x in sorted(ft.quasi)))
        bad = validate_face_tree(g, ft)
        if bad:
            raise VerificationFailure("; ".join(map(str, bad)))
        return EXIT_OK
    edges = parse_vertex_cycle(g, Path(args.cycle).read_text())
    chk = verify_hamiltonian(g, edges)
    if not chk:
        for p in chk.problems:
            print(p)
        raise VerificationFailure("not a Hamiltonian cycle")
    print(f"hamiltonian cycle verified: {len(edges)} edges, {len(chk.cycle.interior_faces)} interior faces")
    return EXIT_OK


def cmd_kappa(args) -> int:
    g = _graph(args)
    if args.cyclic:
        print(f"cyclic edge-connectivity {cyclic_edge_connectivity(g)}")
    else:
        print(f"vertex connectivity {vertex_connectivity(g)}")
    return EXIT_OK


def cmd_render(args) -> int:
    edges, faces = [], []
    g = None
    if args.highlight:
        text = Path(args.highlight).read_text()
        if text.startswith("certificate"):
            b = parse_certificate(text)
            g = b.graph
            edges = list(b.cycle_edges)
            if b.face_tree is not None:
                faces = list(b.face_tree[0])
    if g is None:
        g = _graph(args)
        if args.highlight:
            edges = parse_vertex_cycle(g, Path(args.highlight).read_text())
    if g is None:
        raise FormatError("nothing to render")
    Path(args.out).write_text(render_svg(g, edges, faces))
    return EXIT_OK


def _batch_one(job):
    index, g, strategy, guard = job
    t0 = time.perf_counter()
    kwargs = Guards.uniform(guard).pipeline_kwargs()
    try:
        cycle, _ = hamiltonian_pipeline(g, strategy, **kwargs)
        status, detail = "ok", str(len(cycle.edges))
    except HypothesisViolation as exc:
        status, detail = "skipped", str(exc)
    except VerificationFailure as exc:
        status, detail = "FAILED", str(exc)
    return index, g.num_vertices, status, detail, time.perf_counter() - t0


def cmd_batch(args) -> int:
    graphs = decode_planar_code(Path(args.inp).read_bytes())
    jobs = [(i, g, args.strategy, args.guard) for i, g in enumerate(graphs)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_batch_one, jobs))
    else:
        rows = [_batch_one(j) for j in jobs]
    lines = ["index\tn\tstatus\tdetail\ttime_s"]
    lines += [f"{i}\t{n}\t{s}\t{' '.join(d.split())}\t{t:.4f}" for i, n, s, d, t in rows]
    _emit("\n".join(lines) + "\n", args.report)
    counts = {s: sum(1 for r in rows if r[2] == s) for s in ("ok", "skipped", "FAILED")}
    print(f"{len(rows)} graphs: {counts['ok']} ok, {counts['skipped']} skipped, {counts['FAILED']} failed",
          file=sys.stderr)
    return EXIT_VERIFY if counts["FAILED"] else EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planeham", description="Hamiltonian cycles of leapfrog extensions via face trees.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp, optional=False):
        sp.add_argument("graph", nargs="?" if optional else None,
                        help="text rotation file, planar_code file, or catalog:NAME")
        sp.add_argument("--index", type=int, default=0, help="graph index inside a planar_code file")
        sp.add_argument("--outer-face", type=int, default=None, help="override the outer face id")

    sp = sub.add_parser("info", help="basic statistics")
    graph_args(sp)
    sp.set_defaults(func=cmd_info)

    sp = sub.add_parser("transform", help="apply a graph transformation")
    graph_args(sp)
    sp.add_argument("--op", choices=("lf", "dual", "truncate", "radial", "reduce"), required=True)
    sp.add_argument("--factor", type=int, nargs="+", help="face ids of the facial 2-factor for --op reduce")
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("ham", help="Hamiltonian cycle of the leapfrog extension")
    graph_args(sp)
    sp.add_argument("--strategy", choices=STRATEGIES, default="faces")
    sp.add_argument("--guard", type=int, default=None, help="size limit for the exhaustive searches")
    sp.add_argument("--cert", help="write a certificate to this file")
    sp.set_defaults(func=cmd_ham)

    sp = sub.add_parser("check", help="verify a property or a certificate")
    graph_args(sp, optional=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--invariant", action="store_true")
    grp.add_argument("--facetree", metavar="FILE")
    grp.add_argument("--atrail", action="store_true")
    grp.add_argument("--cycle", metavar="FILE")
    grp.add_argument("--certificate", metavar="FILE")
    sp.add_argument("--scope", type=int, default=None, help="face id of the triangle to check inside")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("kappa", help="connectivity numbers")
    graph_args(sp)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--cyclic", action="store_true")
    grp.add_argument("--vertex", action="store_true")
    sp.set_defaults(func=cmd_kappa)

    sp = sub.add_parser("render", help="draw as SVG")
    graph_args(sp, optional=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--highlight", metavar="FILE", help="certificate or vertex cycle to highlight")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("batch", help="run a strategy over a planar_code file")
    sp.add_argument("--in", dest="inp", required=True)
    sp.add_argument("--strategy", choices=STRATEGIES, default="faces")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--guard", type=int, default=None)
    sp.add_argument("--report", help="tab-separated report file (default stdout)")
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HypothesisViolation as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except VerificationFailure as exc:
        print(f"VERIFICATION FAILURE: {exc}", file=sys.stderr)
        return EXIT_VERIFY
