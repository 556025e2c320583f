"""File formats: plantri's planar_code, a hand-editable rotation text format, certificates.

planar_code lists neighbours clockwise and 1-based; the rest of the package
works counterclockwise, so the order is reversed here and nowhere else.
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import FormatError, HypothesisViolation, InvalidEmbedding
from .planar_core import PlaneGraph, rotation_from_neighbors

HEADER = b">>planar_code<<"
HEADER_LE = b">>planar_code le<<"
HEADER_BE = b">>planar_code be<<"

# "#" opens a comment only at line start or after whitespace; labels may contain it
_COMMENT = re.compile(r"(^|\s)#.*")


# ---------------------------------------------------------------------------
# planar_code


def decode_planar_code(data: bytes, outer_override: int | None = None) -> list[PlaneGraph]:
    big_endian = False
    if data.startswith(HEADER_LE):
        pos = len(HEADER_LE)
    elif data.startswith(HEADER_BE):
        pos, big_endian = len(HEADER_BE), True
    elif data.startswith(HEADER):
        pos = len(HEADER)
    else:
        raise FormatError(f"offset 0: missing '>>planar_code<<' header (got {data[:16]!r})")
    fmt = ">H" if big_endian else "<H"
    graphs = []
    while pos < len(data):
        start = pos
        wide = data[pos] == 0
        if wide:
            pos += 1
            if pos + 2 > len(data):
                raise FormatError(f"offset {start}: truncated two-byte vertex count")
            n = struct.unpack_from(fmt, data, pos)[0]
            pos += 2
        else:
            n = data[pos]
            pos += 1
        nbrs: list[list[int]] = []
        for v in range(n):
            row = []
            while True:
                if pos >= len(data) or (wide and pos + 2 > len(data)):
                    raise FormatError(
                        f"offset {pos}: truncated neighbour list of vertex {v + 1} in graph at offset {start}"
                    )
                if wide:
                    x = struct.unpack_from(fmt, data, pos)[0]
                    pos += 2
                else:
                    x = data[pos]
                    pos += 1
                if x == 0:
                    break
                if x > n:
                    raise FormatError(f"offset {pos - 1}: neighbour {x} exceeds vertex count {n}")
                row.append(x - 1)
            nbrs.append(row[::-1])
        try:
            rot = rotation_from_neighbors(nbrs)
            g = PlaneGraph(rot, outer_face=None, labels=[str(v + 1) for v in range(n)])
            if outer_override is not None:
                g = g.with_outer(outer_override)
        except (InvalidEmbedding, HypothesisViolation) as exc:
            raise FormatError(f"offset {start}: graph {len(graphs)}: {exc}") from exc
        graphs.append(g)
    return graphs


def encode_planar_code(graphs: Iterable[PlaneGraph]) -> bytes:
    out = bytearray(HEADER)
    for g in graphs:
        n = g.num_vertices
        wide = n > 255
        if wide:
            out += b"\x00" + struct.pack("<H", n)
        else:
            out.append(n)
        for v in range(n):
            if any(g.head(d) == v for d in g.rotations[v]):
                raise FormatError(f"vertex {g.label(v)} has a loop; planar_code cannot express it")
            for w in reversed(g.neighbors(v)):
                out += struct.pack("<H", w + 1) if wide else bytes([w + 1])
            out += b"\x00\x00" if wide else b"\x00"
    return bytes(out)


def read_planar_code(path: str | Path) -> list[PlaneGraph]:
    return decode_planar_code(Path(path).read_bytes())


# ---------------------------------------------------------------------------
# text rotation format


def parse_text(text: str) -> PlaneGraph:
    """Parse ``v: n1 n2 ...`` lines (counterclockwise) and an optional ``outer:`` line.

    Parallel edges are repeated; ``n/k`` tags pair the occurrence tagged ``k``
    at one end with the one tagged ``k`` at the other.
    """
    names: list[str] = []
    raw: dict[str, list[tuple[str, str | None]]] = {}
    outer = None
    outer_dart = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", line).strip()
        if not line:
            continue
        if ":" not in line:
            raise FormatError(f"line {lineno}: expected 'vertex: neighbours'")
        head, rest = line.split(":", 1)
        head = head.strip()
        toks = rest.split()
        if head == "outer":
            outer = toks
            continue
        if head == "outer-dart":
            try:
                outer_dart = int(toks[0])
            except (IndexError, ValueError):
                raise FormatError(f"line {lineno}: outer-dart needs a dart id") from None
            continue
        if not head or " " in head:
            raise FormatError(f"line {lineno}: bad vertex name {head!r}")
        if head in raw:
            raise FormatError(f"line {lineno}: vertex {head} listed twice")
        entries = []
        for t in toks:
            name, _, tag = t.partition("/")
            entries.append((name, tag or None))
        names.append(head)
        raw[head] = entries
    if not names:
        raise FormatError("no vertices")
    index = {v: i for i, v in enumerate(names)}
    nbrs, tags = [], []
    for v in names:
        row, trow = [], []
        for w, tag in raw[v]:
            if w not in index:
                raise FormatError(f"vertex {v} lists unknown neighbour {w}")
            row.append(index[w])
            trow.append(tag)
        nbrs.append(row)
        tags.append(trow)
    use_tags = tags if any(t is not None for row in tags for t in row) else None
    exact = _exact_rotations(nbrs, tags)
    try:
        if exact is not None:
            g = PlaneGraph(exact, labels=names, outer_dart=outer_dart)
        else:
            g = PlaneGraph(rotation_from_neighbors(nbrs, use_tags), labels=names)
        if outer is not None and exact is None:
            missing = [x for x in outer if x not in index]
            if missing:
                raise FormatError(f"outer face names unknown vertices {missing}")
            g = g.with_outer(g.find_face([index[x] for x in outer]))
    except InvalidEmbedding as exc:
        raise FormatError(str(exc)) from exc
    except HypothesisViolation as exc:
        raise FormatError(f"outer face: {exc}") from exc
    return g


def _exact_rotations(nbrs, tags) -> list[list[int]] | None:
    """Rotations with the written dart ids, when every entry carries a consistent dart tag."""
    flat = [t for row in tags for t in row]
    if not flat or any(t is None or not t.isdigit() for t in flat):
        return None
    darts = [[int(t) for t in row] for row in tags]
    if sorted(d for row in darts for d in row) != list(range(len(flat))):
        return None
    origin = {d: v for v, row in enumerate(darts) for d in row}
    for v, row in enumerate(darts):
        for d, w in zip(row, nbrs[v]):
            if origin[d ^ 1] != w:
                raise FormatError(f"dart {d} at vertex {v} points to {w} but its twin starts elsewhere")
    return darts


def format_text(g: PlaneGraph, with_outer: bool = True, exact: bool = False) -> str:
    """Text form of ``g``; ``exact`` tags every entry with its dart id so ids survive a round trip."""
    lines = []
    multi = set()
    seen = {}
    for e in range(g.num_edges):
        key = frozenset(g.ends(e))
        if key in seen:
            multi.add(key)
        seen[key] = e
    for v in range(g.num_vertices):
        toks = []
        for d in g.rotations[v]:
            w = g.head(d)
            if w == v:
                raise FormatError(f"vertex {g.label(v)} has a loop; the text format cannot express it")
            tok = g.label(w)
            if exact:
                tok += f"/{d}"
            elif frozenset((v, w)) in multi:
                tok += f"/{d >> 1}"
            toks.append(tok)
        lines.append(f"{g.label(v)}: {' '.join(toks)}")
    if with_outer:
        lines.append("outer: " + " ".join(g.label(x) for x in g.outer.vertices))
        if exact:
            lines.append(f"outer-dart: {min(g.outer.darts)}")
    return "\n".join(lines) + "\n"


def read_text(path: str | Path) -> PlaneGraph:
    return parse_text(Path(path).read_text())


def parse_vertex_cycle(g: PlaneGraph, text: str) -> list[int]:
    """Edge ids of a cycle written as vertex labels (first label may be repeated at the end)."""
    toks = text.split()
    if len(toks) > 1 and toks[0] == toks[-1]:
        toks = toks[:-1]
    try:
        vs = [g.vertex(t) for t in toks]
    except KeyError as exc:
        raise FormatError(f"unknown vertex {exc.args[0]!r} in cycle") from None
    edges = []
    used = set()
    for i, v in enumerate(vs):
        w = vs[(i + 1) % len(vs)]
        cands = [e for e in g.edges_between(v, w) if e not in used]
        if not cands:
            raise FormatError(f"no edge {g.label(v)}{g.label(w)} available for the cycle")
        edges.append(cands[0])
        used.add(cands[0])
    return edges


# ---------------------------------------------------------------------------
# certificates


@dataclass
class CertificateBundle:
    input_id: str
    strategy: str
    status: str  # "ok" or "failed"
    graph: PlaneGraph | None = None
    cycle_edges: tuple[int, ...] = ()
    face_tree: tuple[tuple[int, ...], tuple[int, ...]] | None = None  # (faces, quasi)
    reason: str = ""
    timings: dict = field(default_factory=dict)


def format_certificate(b: CertificateBundle) -> str:
    lines = ["certificate planeham 1", f"input {b.input_id}", f"strategy {b.strategy}", f"status {b.status}"]
    for k, v in sorted(b.timings.items()):
        lines.append(f"time {k} {v:.6f}")
    if b.reason:
        lines.append("reason " + " ".join(b.reason.split()))
    if b.graph is not None:
        lines.append("graph-begin")
        lines += format_text(b.graph, exact=True).rstrip("\n").split("\n")
        lines.append("graph-end")
        g = b.graph
        if b.cycle_edges:
            lines.append("cycle-edges " + " ".join(map(str, b.cycle_edges)))
            verts = []
            cur = None
            for i, e in enumerate(b.cycle_edges):
                u, v = g.ends(e)
                if i == 0:
                    nxt = b.cycle_edges[1] if len(b.cycle_edges) > 1 else e
                    cur = u if u not in g.ends(nxt) else v
                verts.append(g.label(cur))
                cur = v if u == cur else u
            lines.append("cycle-vertices " + " ".join(verts))
        if b.face_tree is not None:
            faces, quasi = b.face_tree
            for f in faces:
                lines.append(f"face {f} " + " ".join(g.label(x) for x in g.faces[f].vertices))
            lines.append("quasi " + " ".join(g.label(x) for x in quasi))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> CertificateBundle:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "certificate planeham 1":
        raise FormatError("line 1: not a planeham certificate")
    b = CertificateBundle("", "", "")
    graph_lines: list[str] | None = None
    faces: list[int] = []
    face_labels: dict[int, list[str]] = {}
    quasi_labels: list[str] | None = None
    in_graph = False
    cycle_vertices = None
    for lineno, line in enumerate(lines[1:], 2):
        if in_graph:
            if line.strip() == "graph-end":
                in_graph = False
            else:
                graph_lines.append(line)
            continue
        key, _, rest = line.partition(" ")
        if key == "input":
            b.input_id = rest
        elif key == "strategy":
            b.strategy = rest
        elif key == "status":
            b.status = rest
        elif key == "time":
            k, _, v = rest.partition(" ")
            b.timings[k] = float(v)
        elif key == "reason":
            b.reason = rest
        elif key == "graph-begin":
            graph_lines, in_graph = [], True
        elif key == "cycle-edges":
            b.cycle_edges = tuple(int(x) for x in rest.split())
        elif key == "cycle-vertices":
            cycle_vertices = rest.split()
        elif key == "face":
            toks = rest.split()
            faces.append(int(toks[0]))
            face_labels[int(toks[0])] = toks[1:]
        elif key == "quasi":
            quasi_labels = rest.split()
        elif line.strip():
            raise FormatError(f"line {lineno}: unknown record {key!r}")
    if in_graph:
        raise FormatError("graph-begin without graph-end")
    if graph_lines is not None:
        b.graph = parse_text("\n".join(graph_lines))
        g = b.graph
        if cycle_vertices is not None and b.cycle_edges:
            if len(cycle_vertices) != len(b.cycle_edges):
                raise FormatError("cycle vertex and edge lists differ in length")
        for f, labs in face_labels.items():
            if not 0 <= f < g.num_faces or [g.label(x) for x in g.faces[f].vertices] != labs:
                raise FormatError(f"face {f} does not match its listed boundary {labs}")
        if quasi_labels is not None:
            b.face_tree = (tuple(faces), tuple(g.vertex(x) for x in quasi_labels))
    return b


def reverify_certificate(b: CertificateBundle) -> list[str]:
    """Problems found re-checking a bundle from its own contents; empty means verified."""
    from .face_trees import FaceTree, validate_face_tree
    from .hamiltonian import verify_hamiltonian

    if b.status != "ok":
        return []
    if b.graph is None:
        return ["successful certificate carries no graph"]
    problems = []
    if not b.cycle_edges and b.face_tree is None:
        problems.append("successful certificate carries neither a cycle nor a face tree")
    if b.cycle_edges:
        if any(not 0 <= e < b.graph.num_edges for e in b.cycle_edges):
            return ["cycle names an edge outside the graph"]
        problems += list(verify_hamiltonian(b.graph, b.cycle_edges).problems)
    if b.face_tree is not None:
        faces, quasi = b.face_tree
        ft = FaceTree.of(faces, b.graph.num_vertices, quasi)
        problems += [str(v) for v in validate_face_tree(b.graph, ft)]
    return problems
