"""Six-member even-subgraph double covers from semi-Kotzig frames.

The construction runs in three stages:

1. `solve_star` finds a semi-Kotzig coloring of the core, a split of the
   frame circuits into two classes and a three-way partition of the
   non-frame edges such that each of the three pair subgraphs carries an
   even 2-factor after suppression.  The reductions are applied
   iteratively on an active-edge mask; nothing is ever re-materialised.
2. Each pair subgraph is suppressed and covered twice over its matching
   part and once over its 2-factor by `two_even_cover`.
3. The six even subgraphs are lifted back to the host graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .coloring import is_semi_kotzig, switch
from .frame import Frame, SemiKotzigFrame
from .graph import (
    CubicGraph,
    GraphError,
    MultiGraph,
    components,
    degrees,
    is_bridgeless,
    suppress,
)

PAIRS = ((0, 1), (0, 2), (1, 2))
CLASSES = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


class StarInvariantError(AssertionError):
    """Internal invariant broken during the construction (a bug, not bad input)."""

    def __init__(self, message: str, trace: tuple = ()):
        super().__init__(message)
        self.trace = trace


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "start", "core-chord" or "switch-cycle"
    removed: tuple[int, ...]
    active_before: int
    active_after: int
    component_degrees: tuple[int, ...]  # active non-frame edge ends per frame component


@dataclass(frozen=True)
class SwitchGraph:
    """F-circuits as nodes; non-frame edges joining two F vertices as links."""

    nodes: tuple[frozenset[int], ...]
    links: tuple[tuple[int, int, int], ...]  # (edge id, node of first end, node of second end)


@dataclass(frozen=True)
class StarCertificate:
    core_coloring: dict[int, int] | None
    h_star: dict[int, frozenset[int]]
    n_sets: dict[tuple[int, int], frozenset[int]]
    coloring: dict[int, int] = field(default_factory=dict)
    trace: tuple[ReductionStep, ...] = ()


@dataclass(frozen=True)
class DoubleCover:
    graph: MultiGraph
    members: tuple[frozenset[int], ...]
    sources: tuple[str, ...] = ()

    def __len__(self):
        return len(self.members)


def initial_parity_coloring(sk: SemiKotzigFrame) -> dict[int, int]:
    """Core paths take the witness color of their suppressed edge; frame circuits take color 1."""
    frame = sk.frame
    c = {e: 1 for circ in frame.circuits for e in circ}
    if frame.core is not None:
        for e, path in frame.core_map.paths.items():
            for x in path:
                c[x] = sk.witness.coloring[e]
    return c


class _Context:
    """Per-run lookup tables over one frame."""

    def __init__(self, frame: Frame):
        self.frame = frame
        g = frame.host
        self.g = g
        self.h_at = [[e for e in g.incidence[v] if e in frame.h_edges] for v in range(g.vertex_count)]
        self.component: dict[int, int] = {}
        comps = ([frame.core] if frame.core is not None else []) + list(frame.circuits)
        self.comps = comps
        for i, comp in enumerate(comps):
            for e in comp:
                for x in g.endpoints[e]:
                    self.component[x] = i

    def local(self, c: Mapping[int, int], v: int) -> int:
        a, b = self.h_at[v]
        if c[a] != c[b]:
            raise StarInvariantError(f"vertex {v} sees frame colors {c[a]} and {c[b]}")
        return c[a]

    def component_degrees(self, active: Iterable[int]) -> tuple[int, ...]:
        deg = [0] * len(self.comps)
        for e in active:
            for x in self.g.endpoints[e]:
                deg[self.component[x]] += 1
        return tuple(deg)


def partition_matching(
    frame: Frame, c: Mapping[int, int], active: Iterable[int] | None = None
) -> dict[tuple[int, int], frozenset[int]]:
    """Classify non-frame edges by the frame colors at their two ends."""
    ctx = _Context(frame)
    return _partition(ctx, c, frame.m_edges if active is None else active)


def _partition(ctx: _Context, c, active) -> dict[tuple[int, int], frozenset[int]]:
    out: dict[tuple[int, int], set[int]] = {k: set() for k in CLASSES}
    for e in active:
        x, y = ctx.g.endpoints[e]
        a, b = sorted((ctx.local(c, x), ctx.local(c, y)))
        out[(a, b)].add(e)
    return {k: frozenset(v) for k, v in out.items()}


def build_switch_graph(frame: Frame, c: Mapping[int, int], active: Iterable[int] | None = None) -> SwitchGraph:
    ctx = _Context(frame)
    return _switch_graph(ctx, c, frame.m_edges if active is None else active)


def _switch_graph(ctx: _Context, c, active) -> SwitchGraph:
    g = ctx.g
    f = [e for e in ctx.frame.h_edges if c[e] in (1, 2)]
    nodes = tuple(edges for _, edges in components(g, f))
    node_of = {}
    for i, circ in enumerate(nodes):
        for e in circ:
            for x in g.endpoints[e]:
                node_of[x] = i
    links = []
    for e in sorted(active):
        x, y = g.endpoints[e]
        if ctx.local(c, x) != 0 and ctx.local(c, y) != 0:
            links.append((e, node_of[x], node_of[y]))
    return SwitchGraph(nodes, tuple(links))


def find_switch_cycle(sg: SwitchGraph) -> frozenset[int] | None:
    """Edge ids of a circuit of the switch graph (loops and parallel pairs count), or None.

    Links are added in id order; the first one that closes a cycle is
    completed by the breadth-first path between its ends in the forest
    built so far.
    """
    parent = list(range(len(sg.nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj: dict[int, list[tuple[int, int]]] = {}
    for e, a, b in sg.links:
        if find(a) == find(b):
            prev = {a: None}
            q = deque([a])
            while q:
                u = q.popleft()
                for link, w in adj.get(u, ()):
                    if w not in prev:
                        prev[w] = (u, link)
                        q.append(w)
            cycle = {e}
            node = b
            while prev[node] is not None:
                node, link = prev[node]
                cycle.add(link)
            return frozenset(cycle)
        parent[find(a)] = find(b)
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    return None


def tree_switch(frame: Frame, c: Mapping[int, int], sg: SwitchGraph) -> dict[int, int]:
    """Switch F-circuits so that both ends of every switch-graph link share a color.

    Each tree is rooted at its node holding the least vertex and walked
    parent to child; a child is switched iff its link's end colors would
    otherwise disagree.
    """
    if find_switch_cycle(sg) is not None:
        raise ValueError("switch graph has a cycle")
    ctx = _Context(frame)
    g = ctx.g
    adj: dict[int, list[tuple[int, int]]] = {}
    for e, a, b in sg.links:
        adj.setdefault(a, []).append((e, b))
        adj.setdefault(b, []).append((e, a))
    node_of = {x: i for i, circ in enumerate(sg.nodes) for e in circ for x in g.endpoints[e]}
    least = sorted(range(len(sg.nodes)), key=lambda i: min(x for e in sg.nodes[i] for x in g.endpoints[e]))
    flip: dict[int, bool] = {}
    for root in least:
        if root in flip:
            continue
        flip[root] = False
        q = deque([root])
        while q:
            u = q.popleft()
            for e, w in sorted(adj.get(u, ())):
                if w in flip:
                    continue
                x, y = g.endpoints[e]
                if node_of[x] != u:
                    x, y = y, x
                flip[w] = flip[u] ^ (ctx.local(c, x) != ctx.local(c, y))
                q.append(w)
    chosen = [sg.nodes[i] for i in sorted(flip) if flip[i]]
    out = switch(g, c, chosen)
    for e, a, b in sg.links:
        x, y = g.endpoints[e]
        if ctx.local(out, x) != ctx.local(out, y):
            raise StarInvariantError(f"link {e} still joins different colors after switching")
    return out


def solve_star(g: CubicGraph, sk: SemiKotzigFrame) -> StarCertificate:
    """Construct the coloring, frame-circuit split and three-way partition."""
    frame = sk.frame
    if frame.host is not g and frame.host != g:
        raise GraphError("frame belongs to a different graph")
    ctx = _Context(frame)
    c = initial_parity_coloring(sk)
    active = set(frame.m_edges)
    trace: list[ReductionStep] = []
    core_v = frame.core_vertices

    def step(kind: str, removed: Iterable[int]):
        removed = tuple(sorted(removed))
        before = len(active)
        active.difference_update(removed)
        degs = ctx.component_degrees(active)
        trace.append(ReductionStep(kind, removed, before, len(active), degs))
        if removed and not len(active) < before:
            raise StarInvariantError("reduction did not shrink the active edge set", tuple(trace))
        # frame invariant of the reduced graph: every component meets an even number of edge ends
        if any(d % 2 for d in degs):
            raise StarInvariantError(f"contracted graph lost evenness: {degs}", tuple(trace))

    step("start", ())

    chords = []
    for e in sorted(frame.m_edges):
        x, y = g.endpoints[e]
        if x in core_v and y in core_v and 0 in (ctx.local(c, x), ctx.local(c, y)):
            chords.append(e)
            step("core-chord", (e,))

    cycles = []
    while True:
        sg = _switch_graph(ctx, c, active)
        q = find_switch_cycle(sg)
        if q is None:
            break
        cycles.append(q)
        step("switch-cycle", q)

    c = tree_switch(frame, c, sg)
    m = _partition(ctx, c, active)
    if m[(1, 2)] or m[(0, 0)]:
        raise StarInvariantError("base case left edges in M(1,2) or M(0,0)", tuple(trace))
    n_sets = {
        (0, 1): set(m[(0, 1)] | m[(1, 1)]),
        (0, 2): set(m[(0, 2)] | m[(2, 2)]),
        (1, 2): set(),
    }
    for q in reversed(cycles):
        n_sets[(1, 2)].update(q)
    for e in reversed(chords):
        x, y = g.endpoints[e]
        if ctx.local(c, x) != 0:
            x, y = y, x
        mu = ctx.local(c, y) or 1
        n_sets[(0, mu)].add(e)

    h_star = {mu: frozenset(e for circ in frame.circuits for e in circ if c[e] == mu) for mu in (1, 2)}
    core_coloring = None
    if frame.core is not None:
        core_coloring = {e: c[path[0]] for e, path in frame.core_map.paths.items()}
    return StarCertificate(
        core_coloring,
        h_star,
        {k: frozenset(v) for k, v in n_sets.items()},
        c,
        tuple(trace),
    )


def pair_subgraphs(frame: Frame, cert: StarCertificate) -> dict[tuple[int, int], tuple[frozenset[int], frozenset[int]]]:
    """For each color pair, the 2-factor part D and matching part N of G(a, b)."""
    classes: dict[int, set[int]] = {0: set(), 1: set(), 2: set()}
    if frame.core is not None:
        for e, path in frame.core_map.paths.items():
            classes[cert.core_coloring[e]].update(path)
    h_star = {0: frozenset(), 1: cert.h_star.get(1, frozenset()), 2: cert.h_star.get(2, frozenset())}
    out = {}
    for a, b in PAIRS:
        d = frozenset(classes[a] | classes[b] | h_star[a] | h_star[b])
        out[(a, b)] = (d, cert.n_sets[(a, b)])
    return out


def star_violations(g: CubicGraph, frame: Frame, cert: StarCertificate) -> list[str]:
    """Every way in which `cert` fails the three pair-subgraph conditions."""
    problems = []
    if frame.core is not None:
        if cert.core_coloring is None or set(cert.core_coloring) != set(frame.core_graph.edge_ids):
            problems.append("core coloring missing or not total on the suppressed core")
            return problems
        if not is_semi_kotzig(frame.core_graph, cert.core_coloring):
            problems.append("core coloring is not semi-Kotzig")

    h1, h2 = cert.h_star.get(1, frozenset()), cert.h_star.get(2, frozenset())
    if h1 & h2 or (h1 | h2) != frame.h_star:
        problems.append("H*_1 and H*_2 do not partition the frame circuits")
    for circ in frame.circuits:
        if not (circ <= h1 or circ <= h2):
            problems.append(f"frame circuit {min(circ)} is split between H*_1 and H*_2")

    n_all = [e for s in cert.n_sets.values() for e in s]
    if len(n_all) != len(set(n_all)) or set(n_all) != frame.m_edges:
        problems.append("N sets do not partition the non-frame edges")

    for pair, (d, n) in pair_subgraphs(frame, cert).items():
        label = f"G{pair}"
        deg = degrees(g, d)
        bad = sorted(v for v, k in deg.items() if k != 2)
        if bad:
            problems.append(f"{label}: 2-factor part is not 2-regular at {bad[:5]}")
            continue
        dangling = sorted({x for e in n for x in g.endpoints[e] if deg[x] != 2})
        if dangling:
            problems.append(f"{label}: matching ends {dangling[:5]} miss the 2-factor")
            continue
        ends = degrees(g, n)
        for verts, edges in components(g, d):
            count = sum(ends[v] for v in verts)
            if count % 2:
                problems.append(f"{label}: circuit through vertex {min(verts)} has {count} attachments")
    return problems


def verify_star(g: CubicGraph, frame: Frame, cert: StarCertificate) -> bool:
    return not star_violations(g, frame, cert)


def _circuit_walk(g: MultiGraph, edges: frozenset[int], start: int) -> list[int]:
    first = min(e for e in g.incidence[start] if e in edges)
    walk = [first]
    cur = g.other_end(first, start)
    prev = first
    while cur != start:
        nxt = next(e for e in g.incidence[cur] if e in edges and e != prev)
        walk.append(nxt)
        prev = nxt
        cur = g.other_end(nxt, cur)
    return walk


def two_even_cover(h: CubicGraph, f: Iterable[int], n: Iterable[int]) -> tuple[frozenset[int], frozenset[int]]:
    """Two even subgraphs covering the even 2-factor `f` once and the matching `n` twice.

    Each circuit of `f` is colored alternately a/b from its least vertex,
    starting with its lower-id edge there; the results are a u n and b u n.
    """
    f = h.check_edges(f)
    n = h.check_edges(n)
    if f & n or (f | n) != set(h.edge_ids):
        raise GraphError("f and n must partition the edges")
    deg_f = degrees(h, f)
    if any(deg_f[v] != 2 for v in range(h.vertex_count)):
        raise GraphError("f is not a spanning 2-regular subgraph")
    a, b = set(), set()
    for verts, edges in components(h, f):
        if len(edges) % 2:
            raise GraphError(f"odd circuit through vertex {min(verts)}")
        walk = _circuit_walk(h, edges, min(verts))
        a.update(walk[0::2])
        b.update(walk[1::2])
    return frozenset(a | n), frozenset(b | n)


def _pair_cover(g: CubicGraph, d: frozenset[int], n: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    if not d and not n:
        return frozenset(), frozenset()
    sub, _ = g.edge_subgraph(d | n)
    s, smap = suppress(sub)
    free = frozenset().union(*smap.circuits) if smap.circuits else frozenset()
    cubic_ids = [e for e in s.edge_ids if e not in free]
    a, b = set(free), set()
    if cubic_ids:
        part, _ = s.edge_subgraph(cubic_ids)
        part = CubicGraph.from_multigraph(part)
        fa, fb = two_even_cover(part, [e for e in cubic_ids if e not in n], n)
        a |= smap.expand(fa)
        b |= smap.expand(fb)
    return frozenset(a), frozenset(b)


def two_factor_cover(g: CubicGraph, f: Iterable[int]) -> tuple[frozenset[int], ...]:
    """The 3-member cover {F, a u M, b u M} of a cubic graph with even 2-factor F."""
    f = frozenset(f)
    m = frozenset(g.edge_ids) - f
    a, b = two_even_cover(g, f, m)
    return f, a, b


def build_6cdc(g: CubicGraph, sk: SemiKotzigFrame, cert: StarCertificate | None = None) -> DoubleCover:
    """Double cover of `g` by at most six even subgraphs; empty members are dropped."""
    if not is_bridgeless(g):
        raise GraphError("graph has a bridge")
    frame = sk.frame
    members: list[frozenset[int]] = []
    sources: list[str] = []
    if frame.core is None:
        for m, label in zip(two_factor_cover(g, frame.h_edges), ("F", "F/a", "F/b")):
            members.append(m)
            sources.append(label)
    else:
        if cert is None:
            cert = solve_star(g, sk)
        problems = star_violations(g, frame, cert)
        if problems:
            raise StarInvariantError("; ".join(problems), cert.trace)
        for pair, (d, n) in pair_subgraphs(frame, cert).items():
            for m, half in zip(_pair_cover(g, d, n), "ab"):
                members.append(m)
                sources.append(f"G{pair}/{half}")
    kept = [(m, s) for m, s in zip(members, sources) if m]
    cover = DoubleCover(g, tuple(m for m, _ in kept), tuple(s for _, s in kept))
    problems = cover_violations(g, cover.members)
    if problems:
        raise StarInvariantError("constructed cover failed verification: " + "; ".join(problems))
    return cover


def cover_violations(g: MultiGraph, members: Iterable[Iterable[int]]) -> list[str]:
    problems = []
    count = {e: 0 for e in g.edge_ids}
    for i, m in enumerate(members):
        m = frozenset(m)
        unknown = m - count.keys()
        if unknown:
            problems.append(f"member {i} has unknown edges {sorted(unknown)}")
            continue
        odd = sorted(v for v, d in degrees(g, m).items() if d % 2)
        if odd:
            problems.append(f"member {i} is not even at vertex {odd[0]}")
        for e in m:
            count[e] += 1
    for e in sorted(count):
        if count[e] != 2:
            problems.append(f"edge {e} covered {count[e]} times")
    return problems


def verify_double_cover(g: MultiGraph, members: Iterable[Iterable[int]]) -> bool:
    return not cover_violations(g, members)
