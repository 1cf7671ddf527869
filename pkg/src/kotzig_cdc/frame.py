"""Frames and semi-Kotzig frames: verification and bounded search."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .coloring import (
    Budget,
    BudgetExhausted,
    SearchResult,
    SemiKotzigWitness,
    Status,
    as_budget,
    find_semi_kotzig_coloring,
    is_semi_kotzig,
    make_witness,
)
from .graph import (
    CIRCUIT,
    CubicGraph,
    GraphError,
    MultiGraph,
    SuppressionMap,
    classify_components,
    contract,
    degrees,
    suppress,
)


class FrameError(Exception):
    """An edge set fails to be a (semi-Kotzig) frame; `reason` is a short code."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class Frame:
    host: CubicGraph
    h_edges: frozenset[int]
    circuits: tuple[frozenset[int], ...]
    core: frozenset[int] | None = None
    core_graph: MultiGraph | None = None
    core_map: SuppressionMap | None = None

    @property
    def m_edges(self) -> frozenset[int]:
        return frozenset(self.host.edge_ids) - self.h_edges

    @property
    def core_vertices(self) -> frozenset[int]:
        if self.core is None:
            return frozenset()
        return frozenset(x for e in self.core for x in self.host.endpoints[e])

    @property
    def h_star(self) -> frozenset[int]:
        return frozenset().union(*self.circuits)


@dataclass(frozen=True)
class SemiKotzigFrame:
    frame: Frame
    witness: SemiKotzigWitness | None = None


def verify_frame(g: CubicGraph, h: Iterable[int]) -> Frame:
    """Classify `h` as a frame of `g` or raise FrameError with the first failed condition."""
    try:
        h = g.check_edges(h)
    except GraphError as exc:
        raise FrameError("unknown-edge", str(exc)) from None
    deg = degrees(g, h)
    uncovered = [v for v in range(g.vertex_count) if deg[v] == 0]
    if uncovered:
        raise FrameError("not-spanning", f"vertices {uncovered} meet no frame edge")
    low = [v for v in range(g.vertex_count) if deg[v] == 1]
    if low:
        raise FrameError("degree-one", f"vertices {low} have frame degree 1")

    circuits, others = [], []
    for edges, kind in classify_components(g, h):
        (circuits if kind == CIRCUIT else others).append(edges)
    odd_circuits = [sorted(c) for c in circuits if len(c) % 2]
    if odd_circuits:
        raise FrameError("odd-circuit", f"odd circuit components {odd_circuits}")

    quotient = contract(g, h)
    qdeg = degrees(quotient, quotient.edge_ids)
    odd = [v for v in range(quotient.vertex_count) if qdeg[v] % 2]
    if odd:
        raise FrameError("not-even", f"contracted graph has odd-degree vertices {odd}")
    if len(others) > 1:
        raise FrameError("multiple-cores", f"{len(others)} non-circuit components")
    if not others:
        return Frame(g, h, tuple(circuits))
    core = others[0]
    sub, _ = g.edge_subgraph(core)
    core_graph, smap = suppress(sub)
    return Frame(g, h, tuple(circuits), core, core_graph, smap)


def core_coloring_from_seed(frame: Frame, colors: Mapping[int, int]) -> dict[int, int]:
    """Turn colors given on host edges of the core into a coloring of the suppressed core."""
    out = {}
    for e, path in frame.core_map.paths.items():
        seen = {colors[x] for x in path if x in colors}
        if len(seen) != 1:
            raise FrameError(
                "bad-seed",
                f"core path {list(path)} carries colors {sorted(seen)}; need exactly one",
            )
        out[e] = seen.pop()
    return out


def verify_semi_kotzig_frame(
    g: CubicGraph,
    h: Iterable[int],
    budget: int | Budget | None = None,
    seed: Mapping[int, int] | None = None,
) -> SemiKotzigFrame:
    """Verify the frame, then certify the suppressed core as semi-Kotzig.

    `seed` optionally gives the core coloring on host edges; it is checked
    rather than searched for.  Raises FrameError when the answer is no and
    BudgetExhausted when the coloring search cannot decide.
    """
    frame = verify_frame(g, h)
    if frame.core is None:
        return SemiKotzigFrame(frame)
    core = frame.core_graph
    if core.has_loops() or any(core.degree(v) != 3 for v in range(core.vertex_count)):
        raise FrameError("core-not-semi-kotzig", "suppressed core is not a loopless cubic graph")
    core = CubicGraph.from_multigraph(core)
    frame = Frame(frame.host, frame.h_edges, frame.circuits, frame.core, core, frame.core_map)
    if seed:
        c = core_coloring_from_seed(frame, seed)
        if not is_semi_kotzig(core, c):
            raise FrameError("core-not-semi-kotzig", "seeded core coloring is not semi-Kotzig")
        return SemiKotzigFrame(frame, make_witness(core, c))
    res = find_semi_kotzig_coloring(core, budget)
    if res.status is Status.INDETERMINATE:
        raise BudgetExhausted("semi-Kotzig coloring search on the core ran out of budget")
    if res.status is Status.NONE:
        raise FrameError("core-not-semi-kotzig", "suppressed core has no semi-Kotzig coloring")
    return SemiKotzigFrame(frame, res.value)


def perfect_matchings(g: MultiGraph, budget: Budget | None = None):
    """Yield every perfect matching of `g` as a frozenset of edge ids."""
    yield from matchings_leaving(g, 0, budget)


def matchings_leaving(g: MultiGraph, unmatched: int, budget: Budget | None = None):
    """Yield every matching that leaves exactly `unmatched` vertices uncovered."""
    n = g.vertex_count
    if (n - unmatched) % 2 or unmatched > n:
        return
    taken = [False] * n
    chosen: list[int] = []

    def rec(v: int, spare: int):
        if budget is not None:
            budget.tick()
        while v < n and taken[v]:
            v += 1
        if v == n:
            if spare == 0:
                yield frozenset(chosen)
            return
        taken[v] = True
        for e in sorted(set(g.incidence[v])):
            w = g.other_end(e, v)
            if w != v and not taken[w]:
                taken[w] = True
                chosen.append(e)
                yield from rec(v + 1, spare)
                chosen.pop()
                taken[w] = False
        if spare > 0:
            yield from rec(v + 1, spare - 1)
        taken[v] = False

    yield from rec(0, unmatched)


def _try_frame(g: CubicGraph, h: frozenset[int], b: Budget, simple_core: bool) -> SemiKotzigFrame | None:
    try:
        frame = verify_frame(g, h)
        if simple_core and frame.core_graph is not None and _has_parallel(frame.core_graph):
            return None
        return verify_semi_kotzig_frame(g, h, b)
    except FrameError:
        return None


def _has_parallel(g: MultiGraph) -> bool:
    pairs = [tuple(sorted((u, v))) for _, u, v in g.edges]
    return len(pairs) != len(set(pairs))


def find_semi_kotzig_frame(
    g: CubicGraph,
    budget: int | Budget | None = None,
    max_core: int = 12,
    phases: tuple[str, ...] = ("two-factor", "core"),
    simple_core: bool = True,
) -> SearchResult:
    """Best-effort search for a semi-Kotzig frame with at most one non-circuit component.

    Phase "two-factor" tries complements of perfect matchings (even
    2-factors).  Phase "core" tries complements of matchings that leave
    2, 4, ..., `max_core` vertices unmatched; those vertices become the
    branch vertices of the core, which must suppress to a semi-Kotzig graph
    (a simple one unless `simple_core` is off).  NONE is definitive only
    relative to `max_core` and `simple_core`.
    """
    b = as_budget(budget)
    start = b.used
    all_edges = frozenset(g.edge_ids)
    try:
        for phase in phases:
            if phase == "two-factor":
                sizes = [0]
            elif phase == "core":
                sizes = range(2 if not simple_core else 4, min(max_core, g.vertex_count) + 1, 2)
            else:
                raise ValueError(f"unknown phase {phase!r}")
            for k in sizes:
                for m in matchings_leaving(g, k, b):
                    found = _try_frame(g, all_edges - m, b, simple_core)
                    if found is not None:
                        return SearchResult(Status.FOUND, found, b.used - start)
    except BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, None, b.used - start)
    return SearchResult(Status.NONE, None, b.used - start)
