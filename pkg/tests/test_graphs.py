import networkx as nx
import pytest

from gdmagic.graphs import (
    Graph,
    GraphError,
    circulant,
    complete,
    complete_multipartite,
    components,
    cycle,
    degree_residue_class,
    direct_product_with_cycle,
    empty,
    generate,
    petersen,
    two_adic_valuation,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_generator_examples():
    c4 = generate("cycle:4")
    assert c4.n == 4 and set(c4.edges) == {(0, 1), (1, 2), (2, 3), (0, 3)}
    k19 = generate("bipartite:1,9")
    assert k19.degrees == [9] + [1] * 9
    assert generate("tripartite:1,1,3").degrees == [4, 4, 2, 2, 2]


@pytest.mark.parametrize(
    "spec, reference",
    [
        ("cycle:7", nx.cycle_graph(7)),
        ("complete:5", nx.complete_graph(5)),
        ("bipartite:2,3", nx.complete_bipartite_graph(2, 3)),
        ("tripartite:1,3,3", nx.complete_multipartite_graph(1, 3, 3)),
        ("petersen", nx.petersen_graph()),
        ("circulant:6;1,2", nx.circulant_graph(6, [1, 2])),
        ("circulant:10;1,2", nx.circulant_graph(10, [1, 2])),
        ("circulant:8;4", nx.circulant_graph(8, [4])),
    ],
)
def test_generators_match_networkx(spec, reference):
    g = generate(spec)
    assert g.spec == spec
    assert nx.is_isomorphic(to_nx(g), reference)


def test_partite_numbering_is_consecutive():
    g = complete_multipartite(1, 2, 3)
    parts = [{0}, {1, 2}, {3, 4, 5}]
    for part in parts:
        for u in part:
            assert set(g.neighbors(u)) == set(range(6)) - part


@pytest.mark.parametrize(
    "bad", ["cycle:2", "bipartite:0,3", "tripartite:1,1", "complete:0", "circulant:6;4", "circulant:6", "foo:3", "cycle"]
)
def test_generator_errors(bad):
    with pytest.raises(GraphError):
        generate(bad)


def test_graph_rejects_loops_and_range():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    assert Graph.from_edges(3, [(2, 0)]).edges == frozenset({(0, 2)})


def test_edge_list_round_trip_and_errors():
    g = petersen()
    assert Graph.parse_edge_list(g.to_edge_list()) == g
    assert Graph.parse_edge_list("3\n0 1\n\n1 2\n").sorted_edges() == [(0, 1), (1, 2)]
    for bad in ["3\n0 1\n1 0\n", "3\n0 0\n", "3\n0 5\n", "x\n", "3\n0 1 2\n", "3\n0 a\n", ""]:
        with pytest.raises(GraphError):
            Graph.parse_edge_list(bad)


def test_json_round_trip():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert Graph.from_json(g.to_json()) == g
    assert Graph.from_json(cycle(5).to_json()) == cycle(5)


# -- products ----------------------------------------------------------------


def test_product_examples():
    k12 = generate("bipartite:1,2")
    prod = direct_product_with_cycle(k12, 4)
    assert nx.is_isomorphic(
        to_nx(prod), nx.disjoint_union(nx.complete_bipartite_graph(2, 4), nx.complete_bipartite_graph(2, 4))
    )
    c3c4 = direct_product_with_cycle(cycle(3), 4)
    # connected, and 4-regular: every G-neighbour shows up at positions j-1 and j+1
    assert c3c4.n == 12 and len(components(c3c4)) == 1 and set(c3c4.degrees) == {4}
    assert nx.is_isomorphic(to_nx(c3c4), nx.circulant_graph(12, [1, 5]))
    k2c4 = direct_product_with_cycle(complete(2), 4)
    assert sorted(map(len, components(k2c4))) == [4, 4]
    assert nx.is_isomorphic(to_nx(k2c4), nx.disjoint_union(nx.cycle_graph(4), nx.cycle_graph(4)))


CORPUS = [cycle(3), cycle(5), complete(4), petersen(), generate("bipartite:1,9"), generate("tripartite:1,1,3"),
          circulant(6, [1, 2]), empty(3), Graph.from_edges(5, [(0, 1), (1, 2)])]


@pytest.mark.parametrize("g", CORPUS, ids=lambda g: g.spec or f"inline{g.n}")
@pytest.mark.parametrize("k", [3, 4, 5, 8])
def test_product_against_networkx(g, k):
    prod = direct_product_with_cycle(g, k)
    ref = nx.tensor_product(to_nx(g), nx.cycle_graph(k))
    mapping = {(i, j): i * k + j for i, j in ref.nodes()}
    assert set(prod.edges) == {tuple(sorted((mapping[a], mapping[b]))) for a, b in ref.edges()}
    assert prod.n == k * g.n
    for i in range(g.n):
        for j in range(k):
            assert prod.degree(i * k + j) == 2 * g.degree(i)
    flipped = {tuple(sorted((i * k + (-j) % k, i2 * k + (-j2) % k))) for (a, b) in prod.edges
               for (i, j), (i2, j2) in [(divmod(a, k), divmod(b, k))]}
    assert flipped == set(prod.edges)


@pytest.mark.parametrize("m, n", [(1, 2), (3, 2), (1, 4), (2, 2)])
def test_bipartite_product_disconnected(m, n):
    prod = direct_product_with_cycle(complete_multipartite(m, n), 4)
    assert len(components(prod)) == 2


def test_product_rejects_short_cycle():
    with pytest.raises(GraphError):
        direct_product_with_cycle(cycle(3), 2)


# -- invariants -----------------------------------------------------------------


def test_degree_residue_class_examples():
    assert degree_residue_class(generate("bipartite:1,9"), 8) == 1
    assert degree_residue_class(petersen(), 8) == 3
    assert degree_residue_class(generate("bipartite:1,5"), 8) is None
    assert degree_residue_class(generate("bipartite:2,18"), 16) == 2
    assert degree_residue_class(generate("bipartite:2,18"), 32) is None


@pytest.mark.parametrize("n, p", [(10, 1), (12, 2), (7, 0), (1, 0), (96, 5)])
def test_two_adic_valuation(n, p):
    assert two_adic_valuation(n) == p


def test_components_examples():
    assert len(components(empty(3))) == 3
    for g in CORPUS:
        ours = sorted(sorted(c) for c in components(g))
        ref = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
        assert ours == ref
