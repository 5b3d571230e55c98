import pytest

from constdepth.betti import depth
from constdepth.edge import (
    Graph,
    classify_edge_ideal,
    complete_bipartite,
    components,
    cycle,
    disjoint_union,
    edge_ideal,
    is_bipartite,
    is_complete_bipartite,
    isolated_vertices,
    odd_cycle,
    parse_graph,
    path,
    spread_edge,
    strip_isolated,
)
from constdepth.errors import ParseError, PreconditionError
from constdepth.spread import spread_exponent_rank


def test_edge_ideal_generators():
    assert len(edge_ideal(complete_bipartite(2, 3)).gens) == 6
    assert edge_ideal(Graph.from_edges([(1, 2)])).format() == "x1*x2"
    assert edge_ideal(cycle(3)).format() == "x1*x2, x1*x3, x2*x3"


def test_structure_predicates():
    assert is_bipartite(cycle(5)) is None
    assert odd_cycle(cycle(5)) is not None
    assert is_bipartite(path(4)) is not None
    assert not is_complete_bipartite(path(4))
    assert is_complete_bipartite(complete_bipartite(2, 3))
    G = Graph.from_edges([(1, 2)], vertices=[1, 2, 3])
    assert isolated_vertices(G) == [3]
    assert strip_isolated(G).vertices == frozenset({1, 2})
    assert len(components(disjoint_union(path(2), path(3)))) == 2


def test_spread_edge_values():
    assert spread_edge(complete_bipartite(2, 3)).value == 4
    assert spread_edge(cycle(3)).value == 3
    assert spread_edge(disjoint_union(path(2), path(2))).value == 2


def test_spread_edge_matches_exponent_rank():
    for G in (complete_bipartite(2, 3), cycle(5), path(5), disjoint_union(cycle(3), path(3))):
        assert spread_edge(G).value == spread_exponent_rank(edge_ideal(G)).value


def test_classifier_verdicts():
    v = classify_edge_ideal(complete_bipartite(2, 3))
    assert v.constant and v.factorization == [[["x1", "x2"], ["x3", "x4", "x5"]]]
    v = classify_edge_ideal(cycle(5))
    assert not v.constant and "odd cycle" in v.witness
    v = classify_edge_ideal(path(4))
    assert not v.constant and "missing edge" in v.witness
    assert classify_edge_ideal(disjoint_union(complete_bipartite(1, 2), complete_bipartite(2, 2))).constant


def test_non_complete_bipartite_has_depth_above_limit():
    # a bipartite graph which is not complete has depth S/I(G) >= 2 while the limit is the
    # number of bipartite components, 1
    I = edge_ideal(path(4))
    assert depth(I) >= 2
    assert depth(I) > len(path(4).vertices) - spread_edge(path(4)).value


def test_isolated_vertices_are_stripped_and_reported():
    G = Graph.from_edges([(1, 2), (2, 3), (1, 3)], vertices=[1, 2, 3, 4])
    v = classify_edge_ideal(G)
    assert v.stripped == [4] and not v.constant


def test_parse_graph():
    G = parse_graph("graph: 1-2, 2-3, 5")
    assert G.vertices == frozenset({1, 2, 3, 5})
    assert parse_graph(G.format()) == G
    with pytest.raises(ParseError) as e:
        parse_graph("graph: 1-2, 2-x")
    assert e.value.column == 13
    with pytest.raises(ParseError):
        parse_graph("graph: 1-1")


def test_edgeless_graph_is_rejected():
    with pytest.raises(PreconditionError):
        classify_edge_ideal(Graph.from_edges([], vertices=[1, 2]))
