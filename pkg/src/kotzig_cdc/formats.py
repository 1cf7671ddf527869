"""Text formats: edge lists, frame and cover documents, graph6.

Edge list::

    cubic-multigraph <n> <m>
    edge <id> <u> <v>            (m lines, 0-based vertices)

Frame::

    graph <path>                 (optional reference)
    component circuit <ids...>   (any number)
    component h0 <ids...>        (at most one)
    color <id> <0|1|2>           (optional seed for the core coloring)

Cover::

    cover <count>
    even <ids...>                (count lines)

Blank lines and ``#`` comments are ignored everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import CubicGraph, GraphError, MultiGraph


class FormatError(ValueError):
    pass


@dataclass
class FrameDoc:
    """Frame description over a host graph's edge ids."""

    circuits: list[list[int]] = field(default_factory=list)
    core: list[int] | None = None
    colors: dict[int, int] = field(default_factory=dict)
    graph_ref: str | None = None

    @property
    def h_edges(self) -> frozenset[int]:
        edges = {e for c in self.circuits for e in c}
        if self.core:
            edges.update(self.core)
        return frozenset(edges)


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _ints(words: list[str], no: int) -> list[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        raise FormatError(f"line {no}: expected integers, got {' '.join(words)!r}") from None


def serialize_graph(g: MultiGraph) -> str:
    header = "cubic-multigraph" if isinstance(g, CubicGraph) else "multigraph"
    rows = [f"{header} {g.vertex_count} {g.edge_count}"]
    rows += [f"edge {e} {u} {v}" for e, u, v in g.edges]
    return "\n".join(rows) + "\n"


def parse_graph(text: str) -> MultiGraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty graph document")
    no, head = lines[0]
    if len(head) != 3 or head[0] not in ("cubic-multigraph", "multigraph"):
        raise FormatError(f"line {no}: expected 'cubic-multigraph <n> <m>'")
    n, m = _ints(head[1:], no)
    edges = []
    for no, words in lines[1:]:
        if words[0] != "edge" or len(words) != 4:
            raise FormatError(f"line {no}: expected 'edge <id> <u> <v>'")
        e, u, v = _ints(words[1:], no)
        if u == v and head[0] == "cubic-multigraph":
            raise FormatError(f"line {no}: loop on vertex {u}")
        edges.append((e, u, v))
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    try:
        if head[0] == "cubic-multigraph":
            return CubicGraph(n, tuple(edges))
        return MultiGraph(n, tuple(edges))
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def serialize_frame(doc: FrameDoc) -> str:
    rows = []
    if doc.graph_ref:
        rows.append(f"graph {doc.graph_ref}")
    for circ in doc.circuits:
        rows.append("component circuit " + " ".join(map(str, circ)))
    if doc.core:
        rows.append("component h0 " + " ".join(map(str, doc.core)))
    rows += [f"color {e} {c}" for e, c in sorted(doc.colors.items())]
    return "\n".join(rows) + "\n"


def parse_frame(text: str) -> FrameDoc:
    doc = FrameDoc()
    seen: set[int] = set()
    for no, words in _lines(text):
        kind = words[0]
        if kind == "graph" and len(words) == 2:
            doc.graph_ref = words[1]
        elif kind == "component" and len(words) >= 3 and words[1] in ("circuit", "h0"):
            ids = _ints(words[2:], no)
            if seen & set(ids) or len(set(ids)) != len(ids):
                raise FormatError(f"line {no}: component repeats an edge id")
            seen.update(ids)
            if words[1] == "circuit":
                doc.circuits.append(ids)
            elif doc.core is not None:
                raise FormatError(f"line {no}: more than one h0 component")
            else:
                doc.core = ids
        elif kind == "color" and len(words) == 3:
            e, c = _ints(words[1:], no)
            if c not in (0, 1, 2):
                raise FormatError(f"line {no}: color must be 0, 1 or 2")
            doc.colors[e] = c
        else:
            raise FormatError(f"line {no}: unrecognised frame line {' '.join(words)!r}")
    return doc


def frame_doc_from(frame, witness=None) -> FrameDoc:
    """FrameDoc for a verified Frame, with the witness colors pulled back onto core edges."""
    doc = FrameDoc(circuits=[sorted(c) for c in frame.circuits])
    if frame.core is not None:
        doc.core = sorted(frame.core)
        if witness is not None:
            for e, path in frame.core_map.paths.items():
                for x in path:
                    doc.colors[x] = witness.coloring[e]
    return doc


def serialize_cover(members: Iterable[Iterable[int]]) -> str:
    members = [sorted(m) for m in members]
    rows = [f"cover {len(members)}"] + ["even " + " ".join(map(str, m)) for m in members]
    return "\n".join(rows) + "\n"


def parse_cover(text: str) -> list[frozenset[int]]:
    lines = _lines(text)
    if not lines or lines[0][1][0] != "cover" or len(lines[0][1]) != 2:
        raise FormatError("expected 'cover <count>' header")
    (count,) = _ints(lines[0][1][1:], lines[0][0])
    members = []
    for no, words in lines[1:]:
        if words[0] != "even":
            raise FormatError(f"line {no}: expected 'even <ids...>'")
        members.append(frozenset(_ints(words[1:], no)))
    if len(members) != count:
        raise FormatError(f"header declares {count} members, found {len(members)}")
    return members


def serialize_coloring(c: dict[int, int]) -> str:
    return "".join(f"color {e} {mu}\n" for e, mu in sorted(c.items()))


def parse_coloring(text: str) -> dict[int, int]:
    doc = parse_frame(text)
    if doc.circuits or doc.core:
        raise FormatError("coloring document may only contain color lines")
    return doc.colors


# graph6: https://users.cecs.anu.edu.au/~bdm/data/formats.txt

_HEADER = ">>graph6<<"


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise FormatError("truncated graph6 length prefix")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise FormatError("truncated graph6 length prefix")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def parse_graph6(line: str) -> MultiGraph:
    s = line.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError:
        raise FormatError("graph6 string must be ASCII") from None
    if any(b < 63 or b > 126 for b in data):
        raise FormatError("graph6 string contains bytes outside 63..126")
    n, offset = _decode_n(data)
    body = data[offset:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise FormatError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                pairs.append((i, j))
            k += 1
    pairs.sort()
    return MultiGraph.from_pairs(n, pairs)


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(g: MultiGraph) -> str:
    adj = set()
    for e, u, v in g.edges:
        if u == v:
            raise FormatError(f"graph6 cannot encode loop {e}")
        key = (min(u, v), max(u, v))
        if key in adj:
            raise FormatError(f"graph6 cannot encode parallel edge {e}")
        adj.add(key)
    n = g.vertex_count
    bits = [1 if (i, j) in adj else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + sum(bit << (5 - k) for k, bit in enumerate(bits[i:i + 6])) for i in range(0, len(bits), 6)
    )
    return (_encode_n(n) + body).decode("ascii")
