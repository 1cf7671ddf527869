"""Named fixture graphs, the core catalog, planted instances and the cubic census."""
from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

from .coloring import iterated_kotzig_join
from .formats import FrameDoc, parse_graph6
from .graph import CubicGraph, GraphError, MultiGraph, is_connected, subdivide


def k4() -> CubicGraph:
    return CubicGraph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


# 0-1 / 2-3 colored 0, 0-2 / 1-3 colored 1, 0-3 / 1-2 colored 2
K4_COLORING = {0: 0, 5: 0, 1: 1, 4: 1, 2: 2, 3: 2}


def k33() -> CubicGraph:
    return CubicGraph.from_pairs(6, [(a, b) for a in range(3) for b in range(3, 6)])


def prism() -> CubicGraph:
    return CubicGraph.from_pairs(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    )


def petersen() -> CubicGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CubicGraph.from_pairs(10, outer + spokes + inner)


def theta() -> CubicGraph:
    return CubicGraph.from_pairs(2, [(0, 1)] * 3)


def two_k4_join(pairing: int = 0) -> tuple[CubicGraph, dict[int, int]]:
    """Iterated-Kotzig graph on 8 vertices built from two colored K4's."""
    return iterated_kotzig_join((k4(), K4_COLORING), (k4(), K4_COLORING), 0, 0, pairing)


def three_k4_join() -> tuple[CubicGraph, dict[int, int]]:
    g, c = two_k4_join()
    e = min(x for x in g.edge_ids if c[x] == 0)
    return iterated_kotzig_join((g, c), (k4(), K4_COLORING), e, 0, 0)


def core_catalog() -> list[tuple[str, CubicGraph, dict[int, int]]]:
    """Semi-Kotzig cores with known witness colorings, by catalog index."""
    return [
        ("K4", k4(), dict(K4_COLORING)),
        ("K4+K4", *two_k4_join()),
        ("K4+K4+K4", *three_k4_join()),
    ]


def generate_planted_instance(
    seed: int,
    catalog_index: int = 0,
    circuit_lengths: tuple[int, ...] | list[int] = (4,),
    extra_subdivisions: int | None = None,
    attempts: int = 200,
) -> tuple[CubicGraph, FrameDoc]:
    """Build a connected cubic graph with a planted semi-Kotzig frame.

    The core from the catalog is subdivided, the requested even circuits
    are added, and a random perfect matching on all degree-2 vertices
    supplies the non-frame edges.  Matching edges never join two vertices
    already adjacent in the frame, so the only parallel edges are those
    already present in the core.
    """
    lengths = list(circuit_lengths)
    bad = [x for x in lengths if x < 4 or x % 2]
    if bad:
        raise ValueError(f"circuit lengths must be even and at least 4, got {bad}")
    catalog = core_catalog()
    if not 0 <= catalog_index < len(catalog):
        raise ValueError(f"catalog index must be in 0..{len(catalog) - 1}")
    _, core, coloring = catalog[catalog_index]

    rng = random.Random(seed)
    if extra_subdivisions is None:
        extra_subdivisions = rng.randint(0, 2)
    subdivisions = 2 * (max(1, len(lengths)) + extra_subdivisions)
    for _ in range(attempts):
        counts: dict[int, int] = {}
        for _ in range(subdivisions):
            e = rng.choice(core.edge_ids)
            counts[e] = counts.get(e, 0) + 1
        sub, owner = subdivide(core, counts)

        n = sub.vertex_count
        next_id = max(sub.edge_ids) + 1
        edges = list(sub.edges)
        circuits = []
        for length in lengths:
            circ = []
            for j in range(length):
                edges.append((next_id, n + j, n + (j + 1) % length))
                circ.append(next_id)
                next_id += 1
            circuits.append(circ)
            n += length

        frame_graph = MultiGraph(n, tuple(edges))
        deg2 = [v for v in range(n) if frame_graph.degree(v) == 2]
        adjacent = {frozenset((u, v)) for _, u, v in edges}
        pairs = _random_matching(deg2, adjacent, rng)
        if pairs is None:
            continue
        m_edges = [(next_id + j, u, v) for j, (u, v) in enumerate(pairs)]
        g = CubicGraph(n, tuple(edges + m_edges))
        if is_connected(g):
            doc = FrameDoc(
                circuits=circuits,
                core=sorted(sub.edge_ids),
                colors={e: coloring[owner[e]] for e in sorted(sub.edge_ids)},
            )
            return g, doc
    raise GraphError(f"no connected planted instance found for seed {seed}")


def _random_matching(order, adjacent, rng, tries: int = 20):
    """Random perfect matching of `order` avoiding `adjacent` pairs, or None."""
    for _ in range(tries):
        pool = order[:]
        rng.shuffle(pool)
        pairs = []
        ok = True
        while pool:
            u = pool.pop()
            options = [w for w in pool if frozenset((u, w)) not in adjacent]
            if not options:
                ok = False
                break
            w = rng.choice(options)
            pool.remove(w)
            pairs.append((min(u, w), max(u, w)))
        if ok:
            return sorted(pairs)
    return None


def planted_corpus(count: int = 100) -> list[tuple[int, int, tuple[int, ...]]]:
    """Deterministic (seed, catalog index, circuit lengths) triples.

    Catalog index cycles through the three cores; circuit lengths are drawn
    from {4, 6, 8}, between zero and two circuits per instance.
    """
    out = []
    for seed in range(count):
        rng = random.Random(10_000 + seed)
        k = rng.randint(0, 2)
        lengths = tuple(rng.choice((4, 6, 8)) for _ in range(k))
        out.append((seed, seed % 3, lengths))
    return out


CENSUS_FILE = "cubic_census.g6"


@lru_cache(maxsize=None)
def cubic_census() -> dict[int, tuple[CubicGraph, ...]]:
    """All connected simple cubic graphs on up to 14 vertices, keyed by order."""
    text = resources.files(__package__).joinpath("data", CENSUS_FILE).read_text()
    out: dict[int, list[CubicGraph]] = {}
    for line in text.split():
        g = CubicGraph.from_multigraph(parse_graph6(line))
        out.setdefault(g.vertex_count, []).append(g)
    return {n: tuple(gs) for n, gs in sorted(out.items())}


def build_cubic_census(max_n: int = 14) -> dict[int, list[CubicGraph]]:
    """Regenerate the census from K4 (slow above 12 vertices; needs networkx).

    Graphs on n vertices come from those on n-2 by edge insertion and
    vertex-to-triangle expansion, from n-4 by diamond substitution, and from
    pairs of smaller graphs joined by a bridge.  Isomorphs are removed with
    networkx, bucketed by a walk/distance invariant.  The resulting counts
    1, 2, 5, 19, 85, 509 for n = 4..14 match the published enumeration.
    """
    import itertools

    import networkx as nx

    def invariant(h):
        tri = nx.triangles(h)
        sq = {v: sum(1 for a, b in itertools.combinations(h[v], 2) for w in set(h[a]) & set(h[b]) if w != v)
              for v in h}
        dist = sorted(tuple(sorted(d.values())) for _, d in nx.all_pairs_shortest_path_length(h))
        return tuple(sorted((tri[v], sq[v]) for v in h)), tuple(dist)

    def insert_edge(h, a, b, c, d):
        h = h.copy()
        h.remove_edge(a, b)
        h.remove_edge(c, d)
        x, y = h.number_of_nodes(), h.number_of_nodes() + 1
        h.add_edges_from([(a, x), (x, b), (c, y), (y, d), (x, y)])
        return h

    def grow(h):
        edges = sorted(tuple(sorted(e)) for e in h.edges())
        for (a, b), (c, d) in itertools.combinations(edges, 2):
            yield insert_edge(h, a, b, c, d)
        n = h.number_of_nodes()
        for v in sorted(h):
            nb = sorted(h[v])
            t = h.copy()
            t.remove_node(v)
            tri = [v, n, n + 1]
            t.add_edges_from([(tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])])
            t.add_edges_from(zip(tri, nb))
            yield t

    def diamonds(h):
        n = h.number_of_nodes()
        for a, b in sorted(tuple(sorted(e)) for e in h.edges()):
            t = h.copy()
            t.remove_edge(a, b)
            p, q, r, s = range(n, n + 4)
            t.add_edges_from([(p, q), (p, r), (q, r), (q, s), (r, s), (a, p), (s, b)])
            yield t

    def bridged(h1, h2):
        n1 = h1.number_of_nodes()
        for a, b in h1.edges():
            for c, d in h2.edges():
                t = nx.disjoint_union(h1, h2)
                yield insert_edge(t, a, b, c + n1, d + n1)

    levels = {4: [nx.complete_graph(4)]}
    for n in range(6, max_n + 1, 2):
        buckets: dict = {}
        out = []

        def consider(h):
            key = invariant(h)
            bucket = buckets.setdefault(key, [])
            if any(nx.is_isomorphic(h, k) for k in bucket):
                return
            bucket.append(h)
            out.append(h)

        for h in levels[n - 2]:
            for t in grow(h):
                consider(t)
        for h in levels.get(n - 4, []):
            for t in diamonds(h):
                consider(t)
        for n1 in range(4, n - 2, 2):
            n2 = n - 2 - n1
            if n2 >= n1:
                for h1 in levels[n1]:
                    for h2 in levels[n2]:
                        for t in bridged(h1, h2):
                            consider(t)
        levels[n] = out

    result = {}
    for n, hs in levels.items():
        if n <= max_n:
            result[n] = [
                CubicGraph.from_pairs(n, sorted(tuple(sorted(e)) for e in h.edges())) for h in hs
            ]
    return result
