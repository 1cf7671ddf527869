"""Multigraph representation and the structural operations built on it.

Edges carry stable integer ids.  Every operation that removes, merges or
smooths vertices keeps edge ids, so any object computed on a derived graph
can be pulled back to the host graph edge by edge.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for structurally invalid graphs or edge sets."""


Edge = tuple[int, int, int]  # (edge_id, u, v)


@dataclass(frozen=True)
class MultiGraph:
    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        edges = tuple((int(e), int(u), int(v)) for e, u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.vertex_count < 0:
            raise GraphError("negative vertex count")
        seen = set()
        for eid, u, v in edges:
            if eid in seen:
                raise GraphError(f"duplicate edge id {eid}")
            seen.add(eid)
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge {eid} has endpoint outside 0..{self.vertex_count - 1}")

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], start: int = 0):
        return cls(n, tuple((start + i, u, v) for i, (u, v) in enumerate(pairs)))

    @cached_property
    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {e: (u, v) for e, u, v in self.edges}

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids at each vertex; a loop is listed twice."""
        inc: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for e, u, v in self.edges:
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @property
    def edge_ids(self) -> list[int]:
        return [e for e, _, _ in self.edges]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def other_end(self, eid: int, v: int) -> int:
        u, w = self.endpoints[eid]
        if u == v:
            return w
        if w == v:
            return u
        raise GraphError(f"vertex {v} is not an endpoint of edge {eid}")

    def has_loops(self) -> bool:
        return any(u == v for _, u, v in self.edges)

    def check_edges(self, ids: Iterable[int]) -> frozenset[int]:
        ids = frozenset(ids)
        unknown = ids - self.endpoints.keys()
        if unknown:
            raise GraphError(f"unknown edge ids {sorted(unknown)}")
        return ids

    def edge_subgraph(self, ids: Iterable[int]) -> tuple["MultiGraph", tuple[int, ...]]:
        """Subgraph formed by `ids` on the vertices they touch.

        Vertices are renumbered compactly in increasing original order; the
        second value maps new vertex index -> original vertex.
        """
        ids = self.check_edges(ids)
        verts = sorted({x for e in ids for x in self.endpoints[e]})
        index = {v: i for i, v in enumerate(verts)}
        edges = tuple((e, index[u], index[v]) for e, u, v in self.edges if e in ids)
        return MultiGraph(len(verts), edges), tuple(verts)

    def without_edges(self, ids: Iterable[int]) -> "MultiGraph":
        ids = frozenset(ids)
        return MultiGraph(self.vertex_count, tuple(x for x in self.edges if x[0] not in ids))


@dataclass(frozen=True)
class CubicGraph(MultiGraph):
    """Loopless multigraph in which every vertex has degree exactly 3."""

    def __post_init__(self):
        super().__post_init__()
        for e, u, v in self.edges:
            if u == v:
                raise GraphError(f"edge {e} is a loop")
        for v in range(self.vertex_count):
            if self.degree(v) != 3:
                raise GraphError(f"vertex {v} has degree {self.degree(v)}, expected 3")

    @classmethod
    def from_multigraph(cls, g: MultiGraph) -> "CubicGraph":
        if isinstance(g, CubicGraph):
            return g
        return cls(g.vertex_count, g.edges)


def degrees(g: MultiGraph, ids: Iterable[int]) -> Counter:
    """Degree of every vertex in the edge set `ids` (loops count twice)."""
    deg: Counter = Counter()
    for e in ids:
        u, v = g.endpoints[e]
        deg[u] += 1
        deg[v] += 1
    return deg


def is_even(g: MultiGraph, ids: Iterable[int]) -> bool:
    return all(d % 2 == 0 for d in degrees(g, ids).values())


class _DisjointSet:
    def __init__(self, items: Iterable[int]):
        self.parent = {x: x for x in items}

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def components(g: MultiGraph, ids: Iterable[int]) -> list[tuple[frozenset[int], frozenset[int]]]:
    """Connected components of the edge set `ids` as (vertices, edges) pairs.

    Vertices not touched by `ids` are omitted.  Components are ordered by
    their least vertex.
    """
    ids = g.check_edges(ids)
    touched = {x for e in ids for x in g.endpoints[e]}
    dsu = _DisjointSet(touched)
    for e in ids:
        dsu.union(*g.endpoints[e])
    verts: dict[int, set[int]] = {}
    for v in touched:
        verts.setdefault(dsu.find(v), set()).add(v)
    edges: dict[int, set[int]] = {r: set() for r in verts}
    for e in ids:
        edges[dsu.find(g.endpoints[e][0])].add(e)
    return [(frozenset(verts[r]), frozenset(edges[r])) for r in sorted(verts, key=lambda r: min(verts[r]))]


def is_connected(g: MultiGraph) -> bool:
    if g.vertex_count == 0:
        return True
    comps = components(g, g.edge_ids)
    return len(comps) == 1 and len(comps[0][0]) == g.vertex_count


def is_circuit(g: MultiGraph, ids: Iterable[int]) -> bool:
    """True iff `ids` is nonempty, connected and 2-regular."""
    ids = frozenset(ids)
    if not ids:
        return False
    if any(d != 2 for d in degrees(g, ids).values()):
        return False
    return len(components(g, ids)) == 1


CIRCUIT = "circuit"
OTHER = "other"


def classify_components(g: MultiGraph, ids: Iterable[int]) -> list[tuple[frozenset[int], str]]:
    out = []
    for verts, edges in components(g, ids):
        deg = degrees(g, edges)
        kind = CIRCUIT if all(deg[v] == 2 for v in verts) else OTHER
        out.append((edges, kind))
    return out


def contraction_map(g: MultiGraph, ids: Iterable[int]) -> list[int]:
    """Component index of every vertex of the spanning subgraph (V(g), ids)."""
    ids = g.check_edges(ids)
    dsu = _DisjointSet(range(g.vertex_count))
    for e in ids:
        dsu.union(*g.endpoints[e])
    roots: dict[int, int] = {}
    out = []
    for v in range(g.vertex_count):
        out.append(roots.setdefault(dsu.find(v), len(roots)))
    return out


def contract(g: MultiGraph, ids: Iterable[int]) -> MultiGraph:
    """G/H: one vertex per component of (V(g), ids); edges outside `ids` kept."""
    ids = g.check_edges(ids)
    comp = contraction_map(g, ids)
    n = max(comp, default=-1) + 1
    return MultiGraph(n, tuple((e, comp[u], comp[v]) for e, u, v in g.edges if e not in ids))


def circuit_decompose(g: MultiGraph, ids: Iterable[int]) -> list[frozenset[int]]:
    """Split an even edge set into edge-disjoint circuits."""
    ids = g.check_edges(ids)
    if not is_even(g, ids):
        raise GraphError("edge set is not even")
    unused: dict[int, deque[int]] = {}
    for e in sorted(ids):
        u, v = g.endpoints[e]
        unused.setdefault(u, deque()).append(e)
        unused.setdefault(v, deque()).append(e)
    used: set[int] = set()

    def take(v: int) -> int | None:
        queue = unused.get(v, ())
        while queue:
            e = queue.popleft()
            if e not in used:
                return e
        return None

    out = []
    for start in sorted(unused):
        while True:
            e = take(start)
            if e is None:
                break
            path_v = [start]
            path_e: list[int] = []
            pos = {start: 0}
            cur = start
            while e is not None:
                used.add(e)
                w = g.other_end(e, cur)
                path_e.append(e)
                if w in pos:
                    i = pos[w]
                    out.append(frozenset(path_e[i:]))
                    for x in path_v[i + 1:]:
                        del pos[x]
                    del path_v[i + 1:]
                    del path_e[i:]
                    cur = w
                    if not path_e:
                        break
                else:
                    pos[w] = len(path_v)
                    path_v.append(w)
                    cur = w
                e = take(cur)
            if path_e:
                raise AssertionError("walk stalled on an even edge set")
    return out


def bridges(g: MultiGraph) -> list[int]:
    """Edge ids of all cut edges (iterative lowpoint DFS; parallel edges safe)."""
    n = g.vertex_count
    disc = [-1] * n
    low = [0] * n
    out = []
    clock = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g.incidence[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via:
                    continue
                w = g.other_end(e, v)
                if disc[w] < 0:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(g.incidence[w])))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.append(via)
    return sorted(out)


def is_bridgeless(g: MultiGraph) -> bool:
    return not bridges(g)


@dataclass(frozen=True)
class SuppressionMap:
    """How a suppressed graph maps back onto the graph it came from.

    `paths[e]` is the ordered list of original edge ids replaced by the
    suppressed edge `e`; `vertices[i]` is the original vertex kept as new
    vertex `i`.  Circuit components are carried over unchanged and listed
    in `circuits` (as suppressed edge ids, which equal the original ones).
    """

    paths: dict[int, tuple[int, ...]]
    vertices: tuple[int, ...]
    circuits: tuple[frozenset[int], ...] = field(default=())

    def expand(self, ids: Iterable[int]) -> frozenset[int]:
        return frozenset(x for e in ids for x in self.paths[e])

    def origin(self, original_edge: int) -> int:
        """Suppressed edge whose path contains `original_edge`."""
        return self._reverse[original_edge]

    @cached_property
    def _reverse(self) -> dict[int, int]:
        return {x: e for e, p in self.paths.items() for x in p}


def suppress(g: MultiGraph) -> tuple[MultiGraph, SuppressionMap]:
    """Smooth every degree-2 vertex of `g`.

    Each suppressed edge takes the least id on its path.  Components that are
    circuits have nothing to anchor on and are returned unchanged, flagged in
    the map.
    """
    for v in range(g.vertex_count):
        if g.degree(v) == 0:
            raise GraphError(f"vertex {v} is isolated")
    circuits = []
    in_circuit: set[int] = set()
    for verts, edges in components(g, g.edge_ids):
        if all(g.degree(v) == 2 for v in verts):
            circuits.append(edges)
            in_circuit.update(verts)

    keep = [v for v in range(g.vertex_count) if g.degree(v) != 2 or v in in_circuit]
    index = {v: i for i, v in enumerate(keep)}
    paths: dict[int, tuple[int, ...]] = {}
    edges: list[Edge] = []
    used: set[int] = set()

    for circ in circuits:
        for e in sorted(circ):
            u, v = g.endpoints[e]
            paths[e] = (e,)
            edges.append((e, index[u], index[v]))
            used.add(e)

    anchors = [v for v in keep if v not in in_circuit]
    for r in anchors:
        for e in g.incidence[r]:
            if e in used:
                continue
            path = [e]
            used.add(e)
            prev, cur = e, g.other_end(e, r)
            while cur not in index:
                a, b = g.incidence[cur]
                nxt = b if a == prev else a
                path.append(nxt)
                used.add(nxt)
                prev, cur = nxt, g.other_end(nxt, cur)
            new_id = min(path)
            paths[new_id] = tuple(path)
            edges.append((new_id, index[r], index[cur]))

    edges.sort()
    return MultiGraph(len(keep), tuple(edges)), SuppressionMap(paths, tuple(keep), tuple(circuits))


def subdivide(g: MultiGraph, counts: dict[int, int]) -> tuple[MultiGraph, dict[int, int]]:
    """Insert `counts[e]` new vertices on edge `e`.

    The first segment keeps the original id; new segments get fresh ids
    above the current maximum.  Also returns segment id -> original edge id.
    """
    n = g.vertex_count
    next_id = max(g.edge_ids, default=-1) + 1
    edges: list[Edge] = []
    owner: dict[int, int] = {}
    for e, u, v in g.edges:
        k = counts.get(e, 0)
        chain = [u] + list(range(n, n + k)) + [v]
        n += k
        for i in range(len(chain) - 1):
            if i == 0:
                eid = e
            else:
                eid, next_id = next_id, next_id + 1
            edges.append((eid, chain[i], chain[i + 1]))
            owner[eid] = e
    return MultiGraph(n, tuple(edges)), owner


def certificate(g: MultiGraph, rounds: int | None = None) -> tuple:
    """Degree-refined adjacency certificate (colour refinement).

    Isomorphic graphs get equal certificates; the converse is not promised.
    """
    adj: list[Counter] = [Counter() for _ in range(g.vertex_count)]
    for _, u, v in g.edges:
        adj[u][v] += 1
        if u != v:
            adj[v][u] += 1
    colour = [g.degree(v) for v in range(g.vertex_count)]
    for _ in range(rounds or g.vertex_count):
        sig = [
            (colour[v], tuple(sorted((colour[w], m) for w, m in adj[v].items())))
            for v in range(g.vertex_count)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    final = sorted(
        (colour[v], tuple(sorted((colour[w], m) for w, m in adj[v].items())))
        for v in range(g.vertex_count)
    )
    return (g.vertex_count, g.edge_count, tuple(final))


def bfs_order(g: MultiGraph, start: int = 0) -> list[int]:
    """Edge ids in breadth-first discovery order, covering every component."""
    seen_v = [False] * g.vertex_count
    seen_e: set[int] = set()
    order = []
    for s in [start] + list(range(g.vertex_count)):
        if seen_v[s]:
            continue
        seen_v[s] = True
        q = deque([s])
        while q:
            v = q.popleft()
            for e in g.incidence[v]:
                if e in seen_e:
                    continue
                seen_e.add(e)
                order.append(e)
                w = g.other_end(e, v)
                if not seen_v[w]:
                    seen_v[w] = True
                    q.append(w)
    return order


def relabel_edges(g: MultiGraph, start: int = 0) -> tuple[MultiGraph, dict[int, int]]:
    """Renumber edge ids consecutively from `start`; returns old -> new."""
    mapping = {e: start + i for i, e in enumerate(g.edge_ids)}
    cls = type(g)
    return cls(g.vertex_count, tuple((mapping[e], u, v) for e, u, v in g.edges)), mapping


def disjoint_union(graphs: Sequence[MultiGraph]) -> MultiGraph:
    """Disjoint union with vertex offsets; edge ids must already be disjoint."""
    n = 0
    edges: list[Edge] = []
    for h in graphs:
        edges.extend((e, u + n, v + n) for e, u, v in h.edges)
        n += h.vertex_count
    return MultiGraph(n, tuple(edges))
