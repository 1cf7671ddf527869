import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kotzig_cdc.formats import (
    FormatError,
    FrameDoc,
    encode_graph6,
    parse_coloring,
    parse_cover,
    parse_frame,
    parse_graph,
    parse_graph6,
    serialize_coloring,
    serialize_cover,
    serialize_frame,
    serialize_graph,
)
from kotzig_cdc.generate import k4, petersen, theta
from kotzig_cdc.graph import CubicGraph, MultiGraph

from conftest import census_graphs, planted


def test_graph6_k4():
    g = parse_graph6("C~")
    assert g.vertex_count == 4
    assert {frozenset(p) for _, *p in g.edges} == {frozenset(p) for _, *p in k4().edges}
    assert parse_graph6(">>graph6<<C~").edges == g.edges


def test_graph6_empty_and_errors():
    g = parse_graph6("D??")
    assert g.vertex_count == 5 and g.edge_count == 0
    for bad in ("", "C", "C~~", "C\x7f", "~??"):
        with pytest.raises(FormatError):
            parse_graph6(bad)


def test_graph6_large_order_prefix():
    g = MultiGraph.from_pairs(70, [(i, i + 1) for i in range(69)])
    s = encode_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s).edges == g.edges


@given(census_graphs)
def test_graph6_agrees_with_networkx(g):
    s = encode_graph6(g)
    h = nx.from_graph6_bytes(s.encode())
    assert sorted(map(sorted, h.edges())) == sorted(sorted((u, v)) for _, u, v in g.edges)
    assert nx.to_graph6_bytes(h, header=False).strip().decode() == s
    assert encode_graph6(parse_graph6(s)) == s


def test_graph6_rejects_multigraphs():
    with pytest.raises(FormatError):
        encode_graph6(theta())


@given(census_graphs)
def test_edge_list_roundtrip(g):
    text = serialize_graph(g)
    back = parse_graph(text)
    assert isinstance(back, CubicGraph) and back == g
    assert serialize_graph(back) == text


def test_edge_list_errors():
    with pytest.raises(FormatError):
        parse_graph("")
    with pytest.raises(FormatError):
        parse_graph("cubic-multigraph 2 3\nedge 0 0 1\nedge 1 0 1\n")
    with pytest.raises(FormatError):
        parse_graph("cubic-multigraph 2 1\nedge 0 0 0\n")
    with pytest.raises(FormatError):
        parse_graph("cubic-multigraph 2 1\nedge 0 0 x\n")
    with pytest.raises(FormatError):
        parse_graph("cubic-multigraph 2 3\nedge 0 0 1\nedge 1 0 1\nedge 2 0 2\n")
    g = parse_graph("# theta\nmultigraph 2 1\nedge 5 0 1  # only one\n")
    assert g.edges == ((5, 0, 1),)


@given(planted())
def test_frame_roundtrip(instance):
    _, doc = instance
    doc.graph_ref = "x.graph"
    text = serialize_frame(doc)
    back = parse_frame(text)
    assert back == doc
    assert serialize_frame(back) == text


def test_frame_errors():
    with pytest.raises(FormatError):
        parse_frame("component h0 1 2\ncomponent h0 3 4\n")
    with pytest.raises(FormatError):
        parse_frame("component circuit 1 2\ncomponent circuit 2 3\n")
    with pytest.raises(FormatError):
        parse_frame("color 1 3\n")
    with pytest.raises(FormatError):
        parse_frame("bogus\n")
    assert parse_frame("component circuit 0 1 2 3\n").h_edges == {0, 1, 2, 3}


@given(st.lists(st.frozensets(st.integers(0, 40), min_size=1), max_size=6))
def test_cover_roundtrip(members):
    text = serialize_cover(members)
    back = parse_cover(text)
    assert back == [frozenset(m) for m in members]
    assert serialize_cover(back) == text


def test_cover_errors():
    with pytest.raises(FormatError):
        parse_cover("cover 2\neven 1 2\n")
    with pytest.raises(FormatError):
        parse_cover("even 1 2\n")


def test_coloring_roundtrip():
    c = {0: 0, 1: 2, 7: 1}
    assert parse_coloring(serialize_coloring(c)) == c
    with pytest.raises(FormatError):
        parse_coloring("component circuit 1 2\n")
    assert FrameDoc().h_edges == frozenset()
    assert parse_graph(serialize_graph(petersen())) == petersen()
