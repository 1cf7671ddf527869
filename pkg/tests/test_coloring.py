import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kotzig_cdc.coloring import (
    Budget,
    BudgetExhausted,
    Status,
    f_circuits,
    find_kotzig_coloring,
    find_semi_kotzig_coloring,
    has_star_property,
    is_kotzig,
    is_parity_coloring,
    is_proper,
    is_semi_kotzig,
    is_switchable_cdc,
    iter_proper_colorings,
    iterated_kotzig_join,
    switch,
)
from kotzig_cdc.generate import K4_COLORING, k4, k33, petersen, prism, theta, three_k4_join, two_k4_join
from kotzig_cdc.graph import GraphError

from conftest import all_census


def brute_proper_colorings(g):
    """All proper colorings by plain product enumeration."""
    ids = g.edge_ids
    for values in itertools.product(range(3), repeat=len(ids)):
        c = dict(zip(ids, values))
        if all(len({c[e] for e in g.incidence[v]}) == 3 for v in range(g.vertex_count)):
            yield c


def nx_hamilton(g, c, colors):
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from((u, v) for e, u, v in g.edges if c[e] in colors)
    return nx.is_connected(h) and all(d == 2 for _, d in h.degree())


def nx_semi_kotzig(g, c):
    """Independent check: switch every subset of F's components found by networkx."""
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.vertex_count))
    for e, u, v in g.edges:
        if c[e] in (1, 2):
            h.add_edge(u, v, key=e)
    comps = [{k for _, _, k in h.subgraph(cc).edges(keys=True)} for cc in nx.connected_components(h)]
    for r in range(len(comps) + 1):
        for chosen in itertools.combinations(comps, r):
            d = dict(c)
            for comp in chosen:
                for e in comp:
                    d[e] = 3 - d[e]
            if not (nx_hamilton(g, d, (0, 1)) and nx_hamilton(g, d, (0, 2))):
                return False
    return True


def test_k4_coloring_is_kotzig():
    g = k4()
    assert is_proper(g, K4_COLORING)
    assert is_kotzig(g, K4_COLORING)
    assert is_semi_kotzig(g, K4_COLORING)
    assert len(f_circuits(g, K4_COLORING)) == 1


def test_parity_coloring():
    g = k4()
    assert is_parity_coloring(g, g.edge_ids, K4_COLORING)
    # a 4-circuit colored 1 throughout is a parity coloring of that circuit
    assert is_parity_coloring(g, [1, 2, 3, 4], {e: 1 for e in (1, 2, 3, 4)})
    assert not is_parity_coloring(g, [1, 2, 3, 4], {1: 1, 2: 2, 3: 1, 4: 1})
    with pytest.raises(GraphError):
        is_parity_coloring(g, g.edge_ids, {0: 0})


def test_improper_colorings_are_rejected():
    c = dict(K4_COLORING)
    c[0] = 1
    assert not is_proper(k4(), c)
    assert not is_kotzig(k4(), c)
    assert not is_semi_kotzig(k4(), c)


@pytest.mark.parametrize("make", [k4, k33, prism, theta])
def test_colorings_up_to_permutation_match_brute_force(make):
    g = make()
    reps = list(iter_proper_colorings(g))
    assert all(is_proper(g, c) for c in reps)
    assert len(reps) * 6 == sum(1 for _ in brute_proper_colorings(g))


def test_known_coloring_counts():
    # frozen from brute_proper_colorings / 6
    assert [len(list(iter_proper_colorings(f()))) for f in (k4, k33, prism, theta)] == [1, 2, 1, 1]
    assert list(iter_proper_colorings(petersen())) == []


def test_switch_rejects_non_circuits():
    g = k4()
    (circ,) = f_circuits(g, K4_COLORING)
    d = switch(g, K4_COLORING, [circ])
    assert all(d[e] == 3 - K4_COLORING[e] for e in circ)
    with pytest.raises(GraphError):
        switch(g, K4_COLORING, [frozenset({1})])


def test_searches():
    res = find_semi_kotzig_coloring(k4())
    assert res.status is Status.FOUND and is_kotzig(k4(), res.value.coloring)
    assert find_kotzig_coloring(petersen()).status is Status.NONE
    assert find_semi_kotzig_coloring(petersen()).status is Status.NONE
    assert find_semi_kotzig_coloring(prism()).status is Status.FOUND
    assert find_kotzig_coloring(prism()).status is Status.FOUND


def test_search_budget_is_indeterminate():
    res = find_semi_kotzig_coloring(petersen(), budget=5)
    assert res.status is Status.INDETERMINATE
    b = Budget(2)
    b.tick(2)
    with pytest.raises(BudgetExhausted):
        b.tick()


@pytest.mark.parametrize("pairing", [0, 1])
def test_two_k4_join(pairing):
    g, c = two_k4_join(pairing)
    assert g.vertex_count == 8
    assert is_proper(g, c)
    assert is_semi_kotzig(g, c)
    assert nx_semi_kotzig(g, c)


def test_three_k4_join():
    g, c = three_k4_join()
    assert g.vertex_count == 12
    assert is_semi_kotzig(g, c) and nx_semi_kotzig(g, c)


def test_join_requires_zero_edge():
    with pytest.raises(GraphError):
        iterated_kotzig_join((k4(), K4_COLORING), (k4(), K4_COLORING), 1, 0)


SMALL = [g for g in all_census() if g.vertex_count <= 10] + [theta()]


def test_semi_kotzig_agrees_with_networkx_on_small_graphs():
    for g in SMALL:
        for c in iter_proper_colorings(g):
            for zero in range(3):
                d = {e: (mu - zero) % 3 for e, mu in c.items()}
                assert is_semi_kotzig(g, d) == nx_semi_kotzig(g, d)
                assert has_star_property(g, d) == (nx_hamilton(g, d, (0, 1)) and nx_hamilton(g, d, (0, 2)))


def test_inclusion_chain_on_small_graphs():
    for g in SMALL:
        for c in iter_proper_colorings(g):
            for perm in itertools.permutations(range(3)):
                d = {e: perm[mu] for e, mu in c.items()}
                if is_kotzig(g, d):
                    assert is_switchable_cdc(g, d)
                if is_switchable_cdc(g, d):
                    assert is_semi_kotzig(g, d)


@given(st.sampled_from(SMALL), st.data())
def test_switching_preserves_properness(g, data):
    reps = list(iter_proper_colorings(g))
    if not reps:
        return
    c = data.draw(st.sampled_from(reps))
    circs = f_circuits(g, c)
    chosen = data.draw(st.sets(st.sampled_from(circs)))
    d = switch(g, c, chosen)
    assert is_proper(g, d)
    assert {e for e in d if d[e] == 0} == {e for e in c if c[e] == 0}
