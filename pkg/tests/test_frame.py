import itertools

import pytest
from hypothesis import given, settings

from kotzig_cdc.coloring import BudgetExhausted, Status, is_semi_kotzig
from kotzig_cdc.frame import (
    FrameError,
    find_semi_kotzig_frame,
    matchings_leaving,
    perfect_matchings,
    verify_frame,
    verify_semi_kotzig_frame,
)
from kotzig_cdc.generate import k4, k33, petersen, prism, two_k4_join
from kotzig_cdc.graph import CubicGraph

from conftest import census_graphs, planted

K33_HAM6 = [0, 3, 4, 7, 8, 2]  # 0-3-1-4-2-5-0


def reason(g, h):
    with pytest.raises(FrameError) as info:
        verify_semi_kotzig_frame(g, h)
    return info.value.reason


def bridged_pair():
    # two copies of K4 with edge 0-1 subdivided, joined through the subdivision vertices
    pairs = []
    for off in (0, 5):
        pairs += [(off + 0, off + 4), (off + 4, off + 1), (off + 0, off + 2), (off + 0, off + 3),
                  (off + 1, off + 2), (off + 1, off + 3), (off + 2, off + 3)]
    pairs.append((4, 9))
    return CubicGraph.from_pairs(10, pairs)


def test_hamilton_circuit_frame_has_no_core():
    frame = verify_frame(k33(), K33_HAM6)
    assert frame.core is None
    assert frame.circuits == (frozenset(K33_HAM6),)
    assert frame.m_edges == frozenset({1, 5, 6})
    sk = verify_semi_kotzig_frame(k33(), K33_HAM6)
    assert sk.witness is None


def test_rejection_reasons():
    assert reason(k4(), [99]) == "unknown-edge"
    assert reason(k4(), []) == "not-spanning"
    assert reason(k4(), [0, 1, 5]) == "degree-one"
    assert reason(prism(), [0, 1, 2, 3, 4, 5]) == "odd-circuit"
    g = bridged_pair()
    assert reason(g, [e for e in g.edge_ids if e != 14]) == "not-even"
    j, c = two_k4_join()
    joins = [e for e in j.edge_ids if e > 11]
    assert reason(j, [e for e in j.edge_ids if e not in joins]) == "multiple-cores"
    assert reason(petersen(), petersen().edge_ids) == "core-not-semi-kotzig"


def test_whole_graph_as_core():
    g, c = two_k4_join()
    sk = verify_semi_kotzig_frame(g, g.edge_ids, seed=c)
    assert sk.frame.circuits == ()
    assert sk.frame.core_graph.vertex_count == 8
    assert is_semi_kotzig(sk.frame.core_graph, sk.witness.coloring)


def test_bad_seed():
    g = k4()
    bad = {e: 0 for e in g.edge_ids}
    assert reason_seed(g, g.edge_ids, bad) == "core-not-semi-kotzig"
    assert reason_seed(g, g.edge_ids, {0: 0}) == "bad-seed"


def reason_seed(g, h, seed):
    with pytest.raises(FrameError) as info:
        verify_semi_kotzig_frame(g, h, seed=seed)
    return info.value.reason


def test_core_search_budget():
    with pytest.raises(BudgetExhausted):
        verify_semi_kotzig_frame(petersen(), petersen().edge_ids, budget=3)


def brute_matchings(g, unmatched):
    size = (g.vertex_count - unmatched) // 2
    out = set()
    for combo in itertools.combinations(g.edge_ids, size):
        ends = [x for e in combo for x in g.endpoints[e]]
        if len(set(ends)) == len(ends):
            out.add(frozenset(combo))
    return out


def test_perfect_matching_counts():
    counts = [len(list(perfect_matchings(f()))) for f in (k4, k33, prism, petersen)]
    assert counts == [3, 6, 4, 6]


@settings(max_examples=25)
@given(census_graphs)
def test_matchings_agree_with_brute_force(g):
    for k in (0, 2, 4)[: 3 if g.vertex_count <= 10 else 2]:
        found = list(matchings_leaving(g, k))
        assert len(found) == len(set(found))
        assert set(found) == brute_matchings(g, k)


def test_find_frame_fixtures():
    for f in (k4, k33, prism):
        res = find_semi_kotzig_frame(f())
        assert res.status is Status.FOUND and res.value.frame.core is None


def test_find_frame_petersen():
    # Petersen has no even 2-factor; the search settles on a subdivided K4 core
    res = find_semi_kotzig_frame(petersen())
    assert res.status is Status.FOUND
    frame = res.value.frame
    assert frame.circuits == ()
    assert frame.core_graph.vertex_count == 4
    assert frame.m_edges == frozenset({0, 2, 13})
    assert res.steps == 82
    assert find_semi_kotzig_frame(petersen(), phases=("two-factor",)).status is Status.NONE
    assert find_semi_kotzig_frame(petersen(), budget=10).status is Status.INDETERMINATE


@given(planted())
def test_planted_instances_verify(instance):
    g, doc = instance
    sk = verify_semi_kotzig_frame(g, doc.h_edges, seed=doc.colors)
    assert sorted(map(sorted, sk.frame.circuits)) == sorted(map(sorted, doc.circuits))
    assert sk.frame.core == frozenset(doc.core)
    # the search from scratch agrees on the core
    assert verify_semi_kotzig_frame(g, doc.h_edges).frame.core == frozenset(doc.core)


def test_multigraph_core_allowed_when_requested():
    res = find_semi_kotzig_frame(petersen(), simple_core=False)
    assert res.status is Status.FOUND
    core = res.value.frame.core_graph
    assert core.vertex_count == 2 and core.edge_count == 3  # a theta


@given(planted())
def test_frame_vertex_accounting(instance):
    g, doc = instance
    frame = verify_frame(g, doc.h_edges)
    core_v = len(frame.core_vertices)
    assert sum(len(c) for c in frame.circuits) + core_v == g.vertex_count
    assert all(len(c) % 2 == 0 for c in frame.circuits)
