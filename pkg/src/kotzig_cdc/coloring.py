"""Parity and proper 3-edge-colorings, Kotzig-type predicates and searches.

A coloring is a plain ``dict`` from edge id to a color in ``{0, 1, 2}``.
Color 0 is structurally distinguished: switching only ever exchanges 1 and 2.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping

from .graph import (
    CubicGraph,
    GraphError,
    MultiGraph,
    bfs_order,
    components,
    degrees,
    is_circuit,
)

COLORS = (0, 1, 2)
Coloring = Mapping[int, int]


class Status(enum.Enum):
    """Outcome of a budgeted search; the value doubles as the CLI exit code."""

    FOUND = 0
    NONE = 1
    INDETERMINATE = 2


@dataclass(frozen=True)
class SearchResult:
    status: Status
    value: Any = None
    steps: int = 0

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


class BudgetExhausted(Exception):
    """A budgeted search ran out of steps before reaching a verdict."""


class Budget:
    """Step counter shared by nested searches.  ``None`` means unlimited."""

    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(f"budget of {self.limit} steps exhausted")


def as_budget(budget: int | Budget | None) -> Budget:
    return budget if isinstance(budget, Budget) else Budget(budget)


def is_parity_coloring(g: MultiGraph, ids: Iterable[int], c: Coloring) -> bool:
    """Parity condition: at every vertex each color count has the parity of the H-degree."""
    ids = g.check_edges(ids)
    missing = [e for e in ids if e not in c]
    if missing:
        raise GraphError(f"coloring is not defined on edges {sorted(missing)}")
    deg = degrees(g, ids)
    per_color = {mu: degrees(g, (e for e in ids if c[e] == mu)) for mu in COLORS}
    for v, d in deg.items():
        for mu in COLORS:
            if (per_color[mu][v] - d) % 2:
                return False
    return True


def is_proper(g: MultiGraph, c: Coloring) -> bool:
    if any(c.get(e) not in COLORS for e in g.edge_ids):
        return False
    for v in range(g.vertex_count):
        seen = [c[e] for e in g.incidence[v]]
        if len(seen) != len(set(seen)):
            return False
    return True


def pair_is_hamilton(g: MultiGraph, c: Coloring, alpha: int, beta: int) -> bool:
    """True iff the edges colored alpha or beta form one circuit through every vertex."""
    pair = [e for e in g.edge_ids if c.get(e) in (alpha, beta)]
    if g.vertex_count == 0:
        return False
    deg = degrees(g, pair)
    if len(deg) != g.vertex_count:
        return False
    return is_circuit(g, pair)


def is_kotzig(g: CubicGraph, c: Coloring) -> bool:
    if not is_proper(g, c):
        return False
    return all(pair_is_hamilton(g, c, a, b) for a, b in ((0, 1), (0, 2), (1, 2)))


def has_star_property(g: MultiGraph, c: Coloring) -> bool:
    """Both 0-1 and 0-2 color classes induce Hamilton circuits."""
    return pair_is_hamilton(g, c, 0, 1) and pair_is_hamilton(g, c, 0, 2)


def f_circuits(g: MultiGraph, c: Coloring) -> list[frozenset[int]]:
    """Components of F = c^-1(1) u c^-1(2), ordered by least vertex.

    For the colorings handled here F is 2-regular wherever it is present,
    so its components are circuits.
    """
    f = [e for e in g.edge_ids if c.get(e) in (1, 2)]
    return [edges for _, edges in components(g, f)]


def switch(g: MultiGraph, c: Coloring, circuits: Iterable[Iterable[int]]) -> dict[int, int]:
    """Exchange colors 1 and 2 on the given circuits of F."""
    known = set(f_circuits(g, c))
    out = dict(c)
    for circ in circuits:
        circ = frozenset(circ)
        if circ not in known:
            raise GraphError(f"edge set {sorted(circ)} is not a circuit of F")
        for e in circ:
            out[e] = 3 - out[e]
    return out


def _switchings(g: MultiGraph, c: Coloring) -> Iterator[dict[int, int]]:
    circs = f_circuits(g, c)
    for mask in range(1 << len(circs)):
        chosen = [circs[i] for i in range(len(circs)) if mask >> i & 1]
        out = dict(c)
        for circ in chosen:
            for e in circ:
                out[e] = 3 - out[e]
        yield out


def is_semi_kotzig(g: CubicGraph, c: Coloring, budget: Budget | None = None) -> bool:
    """Proper, and every one of the 2^t switchings of F keeps the 0-1 / 0-2 Hamilton property."""
    if not is_proper(g, c):
        return False
    for d in _switchings(g, c):
        if budget is not None:
            budget.tick()
        if not has_star_property(g, d):
            return False
    return True


def is_switchable_cdc(g: CubicGraph, c: Coloring) -> bool:
    return is_semi_kotzig(g, c) and len(f_circuits(g, c)) <= 2


def iter_proper_colorings(g: MultiGraph, budget: Budget | None = None) -> Iterator[dict[int, int]]:
    """Proper 3-edge-colorings up to permutation of the three colors.

    Edges are colored in breadth-first order from vertex 0; the first
    vertex's edges are pinned to 0, 1, 2 (for a cubic, loopless graph this
    picks exactly one representative per color permutation class).
    """
    if g.has_loops():
        return
    order = bfs_order(g)
    if not order:
        yield {}
        return
    pinned = {e: i for i, e in enumerate(g.incidence[0])}
    c: dict[int, int] = {}

    def free(e: int) -> list[int]:
        u, v = g.endpoints[e]
        used = {c[x] for x in g.incidence[u] + g.incidence[v] if x in c}
        return [mu for mu in COLORS if mu not in used]

    def rec(i: int) -> Iterator[dict[int, int]]:
        if budget is not None:
            budget.tick()
        if i == len(order):
            yield dict(c)
            return
        e = order[i]
        choices = free(e)
        if e in pinned:
            choices = [pinned[e]] if pinned[e] in choices else []
        for mu in choices:
            c[e] = mu
            yield from rec(i + 1)
            del c[e]

    yield from rec(0)


@dataclass(frozen=True)
class SemiKotzigWitness:
    """A semi-Kotzig coloring together with the circuits of its F."""

    graph: CubicGraph
    coloring: dict[int, int]
    f_circuits: tuple[frozenset[int], ...]
    zero_class: int = 0  # which class of the enumerated coloring was relabelled to 0

    @property
    def t(self) -> int:
        return len(self.f_circuits)


def _with_zero(c: Mapping[int, int], zero: int) -> dict[int, int]:
    others = [mu for mu in COLORS if mu != zero]
    relabel = {zero: 0, others[0]: 1, others[1]: 2}
    return {e: relabel[mu] for e, mu in c.items()}


def make_witness(g: CubicGraph, c: Mapping[int, int], zero_class: int = 0) -> SemiKotzigWitness:
    return SemiKotzigWitness(g, dict(c), tuple(f_circuits(g, c)), zero_class)


def find_semi_kotzig_coloring(g: MultiGraph, budget: int | Budget | None = None) -> SearchResult:
    """Exhaustive search for a semi-Kotzig coloring.

    Every proper coloring (up to color permutation) is tried with each of
    its three classes in the role of color 0.
    """
    b = as_budget(budget)
    start = b.used
    try:
        if g.has_loops() or any(g.degree(v) != 3 for v in range(g.vertex_count)):
            return SearchResult(Status.NONE, None, 0)
        cg = CubicGraph.from_multigraph(g)
        for c in iter_proper_colorings(cg, b):
            for zero in COLORS:
                d = _with_zero(c, zero)
                if is_semi_kotzig(cg, d, b):
                    return SearchResult(Status.FOUND, make_witness(cg, d, zero), b.used - start)
    except BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, None, b.used - start)
    return SearchResult(Status.NONE, None, b.used - start)


def find_kotzig_coloring(g: MultiGraph, budget: int | Budget | None = None) -> SearchResult:
    b = as_budget(budget)
    start = b.used
    try:
        if g.has_loops() or any(g.degree(v) != 3 for v in range(g.vertex_count)):
            return SearchResult(Status.NONE, None, 0)
        cg = CubicGraph.from_multigraph(g)
        for c in iter_proper_colorings(cg, b):
            if is_kotzig(cg, c):
                return SearchResult(Status.FOUND, make_witness(cg, c), b.used - start)
    except BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, None, b.used - start)
    return SearchResult(Status.NONE, None, b.used - start)


def iterated_kotzig_join(
    first: tuple[CubicGraph, Coloring],
    second: tuple[CubicGraph, Coloring],
    e_first: int,
    e_second: int,
    pairing: int = 0,
) -> tuple[CubicGraph, dict[int, int]]:
    """Delete a 0-colored edge from each graph and reconnect the four stubs.

    With ``first`` edge ``a-b`` and ``second`` edge ``c-d`` (endpoints in
    stored order), pairing 0 joins a-c and b-d, pairing 1 joins a-d and b-c.
    Edge ids of ``first`` are kept; ``second``'s are shifted above them and
    the two new 0-colored edges come last.
    """
    g1, c1 = first
    g2, c2 = second
    for g, c, e in ((g1, c1, e_first), (g2, c2, e_second)):
        if e not in g.endpoints:
            raise GraphError(f"unknown edge {e}")
        if c[e] != 0:
            raise GraphError(f"edge {e} is colored {c[e]}, not 0")
        if not is_proper(g, c):
            raise GraphError("join requires proper colorings")
    if pairing not in (0, 1):
        raise ValueError("pairing must be 0 or 1")

    shift = max(g1.edge_ids) + 1
    n1 = g1.vertex_count
    edges = [x for x in g1.edges if x[0] != e_first]
    edges += [(e + shift, u + n1, v + n1) for e, u, v in g2.edges if e != e_second]
    coloring = {e: c1[e] for e, _, _ in g1.edges if e != e_first}
    coloring.update({e + shift: c2[e] for e, _, _ in g2.edges if e != e_second})

    a, b = g1.endpoints[e_first]
    c, d = (x + n1 for x in g2.endpoints[e_second])
    if pairing == 1:
        c, d = d, c
    nxt = max(e for e, _, _ in edges) + 1
    edges += [(nxt, a, c), (nxt + 1, b, d)]
    coloring[nxt] = coloring[nxt + 1] = 0
    return CubicGraph(n1 + g2.vertex_count, tuple(edges)), coloring
