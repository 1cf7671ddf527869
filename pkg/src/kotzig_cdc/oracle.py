"""Brute-force cycle-space machinery used to cross-check the construction.

Edge sets are bit masks over the graph's edges in stored order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .coloring import Budget, BudgetExhausted, SearchResult, Status, as_budget
from .graph import MultiGraph


@dataclass(frozen=True)
class CycleSpaceBasis:
    edge_order: tuple[int, ...]
    vectors: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def to_edges(self, mask: int) -> frozenset[int]:
        return frozenset(e for i, e in enumerate(self.edge_order) if mask >> i & 1)


def cycle_space_basis(g: MultiGraph) -> CycleSpaceBasis:
    """Fundamental circuits of a breadth-first spanning forest."""
    order = tuple(g.edge_ids)
    bit = {e: 1 << i for i, e in enumerate(order)}
    parent_edge: dict[int, int | None] = {}
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    tree: set[int] = set()
    for root in range(g.vertex_count):
        if root in depth:
            continue
        depth[root] = 0
        parent_edge[root] = None
        q = deque([root])
        while q:
            v = q.popleft()
            for e in g.incidence[v]:
                w = g.other_end(e, v)
                if w not in depth:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    parent_edge[w] = e
                    tree.add(e)
                    q.append(w)
    vectors = []
    for e in order:
        if e in tree:
            continue
        u, v = g.endpoints[e]
        mask = bit[e]
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            mask ^= bit[parent_edge[u]]
            u = parent[u]
        vectors.append(mask)
    return CycleSpaceBasis(order, tuple(vectors))


def _masks(basis: CycleSpaceBasis) -> Iterator[int]:
    """Every element of the span once, in Gray-code order starting from 0."""
    mask = 0
    yield mask
    for i in range(1, 1 << basis.dimension):
        mask ^= basis.vectors[(i & -i).bit_length() - 1]
        yield mask


def enumerate_even_subgraphs(g: MultiGraph, limit: int = 20) -> Iterator[frozenset[int]]:
    basis = cycle_space_basis(g)
    if basis.dimension > limit:
        raise ValueError(f"cycle space dimension {basis.dimension} exceeds limit {limit}")
    for mask in _masks(basis):
        yield basis.to_edges(mask)


def brute_force_kcdc(g: MultiGraph, k: int, budget: int | Budget | None = None, limit: int = 20) -> SearchResult:
    """Search for at most `k` nonempty even subgraphs covering every edge exactly twice.

    Depth-first: always branch on the lowest edge still covered fewer than
    twice, trying every even subgraph through it that avoids edges already
    covered twice.  When that edge is still uncovered the two members
    chosen for it are taken in nondecreasing index order, so each multiset
    is visited once.
    """
    b = as_budget(budget)
    start = b.used
    basis = cycle_space_basis(g)
    if basis.dimension > limit:
        raise ValueError(f"cycle space dimension {basis.dimension} exceeds limit {limit}")
    m = len(basis.edge_order)
    full = (1 << m) - 1
    if m == 0:
        return SearchResult(Status.FOUND, (), 0)
    elements = sorted({x for x in _masks(basis) if x}, key=lambda x: (-x.bit_count(), x))
    through = [[j for j, x in enumerate(elements) if x >> i & 1] for i in range(m)]
    index = {x: j for j, x in enumerate(elements)}
    biggest = max((x.bit_count() for x in elements), default=0)
    chosen: list[int] = []

    def rec(once: int, twice: int, slots: int, branch: int, lower: int) -> bool:
        b.tick()
        if twice == full:
            return True
        if slots == 0:
            return False
        short = full & ~twice
        deficit = short.bit_count() + (short & ~once).bit_count()
        if deficit > slots * biggest:
            return False
        if slots == 1:
            # the last member must be exactly the set of edges covered once
            if short & ~once:
                return False
            j = index.get(short)
            if j is None or (branch == (short & -short).bit_length() - 1 and j < lower):
                return False
            chosen.append(j)
            return True
        e = (short & -short).bit_length() - 1
        floor = lower if e == branch else 0
        for j in through[e]:
            if j < floor:
                continue
            x = elements[j]
            if x & twice:
                continue
            chosen.append(j)
            if rec(once | x, twice | (once & x), slots - 1, e, j):
                return True
            chosen.pop()
        return False

    try:
        ok = rec(0, 0, k, -1, 0)
    except BudgetExhausted:
        return SearchResult(Status.INDETERMINATE, None, b.used - start)
    if not ok:
        return SearchResult(Status.NONE, None, b.used - start)
    return SearchResult(Status.FOUND, tuple(basis.to_edges(elements[j]) for j in chosen), b.used - start)
