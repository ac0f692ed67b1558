import json
import random

import pytest

from gdmagic.abelian import GroupSpec
from gdmagic.constructions import c4_bipartite_z2z2, c4_cyclic2, c4_z2z2, construct
from gdmagic.graphs import Graph, complete, cycle, empty, generate, petersen
from gdmagic.labeling import (
    Labeling,
    LabelingError,
    deserialize,
    from_json,
    pair_sums,
    serialize,
    to_json,
    verify,
    weight,
    weights,
)

G = GroupSpec.parse


def constructed(g, k, group):
    rep = construct(g, k, G(group))
    assert rep.constructed, rep.reason
    return rep.labeling


SAMPLES = [
    (complete(2), 4, "4x2"),
    (complete(3), 4, "2x2x3"),
    (petersen(), 4, "8x5"),
    (generate("bipartite:1,9"), 4, "4x2x5"),
    (cycle(3), 8, "8x3"),
    (cycle(3), 8, "4x2x3"),
    (cycle(5), 8, "2x2x2x5"),
]


def test_weight_examples():
    lab = c4_z2z2(complete(3), G("2x2x3")).labeling
    assert {weight(lab, v) for v in range(12)} == {(0, 0, 0)}

    lab = c4_cyclic2(complete(2), G("4x2"), 2).labeling
    assert str(lab.group) == "2x4"  # (A, Z_4) coordinates
    assert set(weights(lab)) == {(0, 3)}
    assert verify(lab).magic_constant == (0, 3)

    # an isolated base vertex gives isolated product vertices
    g = Graph.from_edges(3, [(1, 2)])
    lab = Labeling(G("12"), g, 4, tuple((i,) for i in range(12)))
    assert weight(lab, (0, 2)) == (0,)


def test_bipartite_example_constant():
    lab = c4_bipartite_z2z2(1, 2, G("2x2x3")).labeling
    rep = verify(lab)
    assert rep.ok and rep.magic_constant == (0, 0, 1)


def test_verify_size_mismatch():
    with pytest.raises(LabelingError):
        Labeling(G("8"), complete(2), 4, tuple((i,) for i in range(7)))
    lab = Labeling(G("9"), complete(2), 4, tuple((i,) for i in range(8)))
    with pytest.raises(LabelingError):
        verify(lab)


def test_verify_reports_duplicates_and_weights():
    lab = Labeling(G("8"), complete(2), 4, ((0,),) * 8)
    rep = verify(lab)
    assert not rep.is_bijection and rep.magic_constant is None and rep.offending_vertices
    ident = Labeling(G("8"), complete(2), 4, tuple((i,) for i in range(8)))
    rep = verify(ident)
    assert rep.is_bijection and not rep.is_constant_weight and rep.magic_constant is None


def test_disconnected_product_needs_global_constant():
    # two C_4 components, each internally constant but with different constants
    base = complete(2)
    labels = [None] * 8
    # component A = {(0,0),(1,1),(0,2),(1,3)}, component B = the rest
    comp_a = [0, 5, 2, 7]
    comp_b = [1, 4, 3, 6]
    for v, x in zip(comp_a, [0, 1, 2, 3]):
        labels[v] = (x,)
    for v, x in zip(comp_b, [4, 5, 6, 7]):
        labels[v] = (x,)
    lab = Labeling(G("8"), base, 4, tuple(labels))
    ws = weights(lab)
    assert len(set(ws)) == 2
    assert not verify(lab).ok


@pytest.mark.parametrize("g, k, group", SAMPLES, ids=lambda x: str(x) if isinstance(x, (int, str)) else None)
def test_negation_symmetry(g, k, group):
    lab = constructed(g, k, group)
    rep = verify(lab)
    neg = verify(lab.negated())
    assert neg.ok and neg.magic_constant == lab.group.neg(rep.magic_constant)


@pytest.mark.parametrize("g, k, group", SAMPLES, ids=lambda x: str(x) if isinstance(x, (int, str)) else None)
def test_swap_mutation_breaks_constant(g, k, group):
    lab = constructed(g, k, group)
    rng = random.Random(7)
    broken = 0
    for _ in range(20):
        a, b = rng.sample(range(len(lab.labels)), 2)
        labels = list(lab.labels)
        labels[a], labels[b] = labels[b], labels[a]
        mutated = Labeling(lab.group, lab.base_graph, lab.cycle_len, tuple(labels))
        rep = verify(mutated)
        assert rep.is_bijection
        broken += not rep.is_constant_weight
    # a swap keeps the constant only when the two vertices have identical neighbourhood structure
    assert broken >= 10


@pytest.mark.parametrize("g, k, group", SAMPLES, ids=lambda x: str(x) if isinstance(x, (int, str)) else None)
def test_pair_sum_shortcut_agrees(g, k, group):
    # weight of (i, j) = sum over G-neighbours u of f(u, j-1) + f(u, j+1)
    lab = constructed(g, k, group)
    sums = pair_sums(lab)
    gr = lab.group
    for i in range(g.n):
        for j in range(k):
            shortcut = gr.total(sums[u][(j - 1) % k] for u in g.neighbors(i))
            assert shortcut == weight(lab, (i, j))


@pytest.mark.parametrize("g, k, group", SAMPLES, ids=lambda x: str(x) if isinstance(x, (int, str)) else None)
def test_transport_preserves_magic(g, k, group):
    lab = constructed(g, k, group)
    target = G(group)
    moved = lab.transported(target)
    rep = verify(moved)
    assert rep.ok and str(moved.group) == group


@pytest.mark.parametrize("g, k, group", SAMPLES, ids=lambda x: str(x) if isinstance(x, (int, str)) else None)
def test_serialization_round_trip(g, k, group):
    lab = constructed(g, k, group)
    back = deserialize(serialize(lab))
    assert back.labels == lab.labels and back.group == lab.group and back.cycle_len == k
    assert back.base_graph == lab.base_graph
    assert weights(back) == weights(lab)
    assert back.coordinates == lab.coordinates


def test_round_trip_inline_graph_and_shuffled_entries():
    g = Graph.from_edges(2, [(0, 1)])
    lab = constructed(g, 4, "2x2x2")
    obj = to_json(lab)
    assert obj["graph"] == {"n": 2, "edges": [[0, 1]]}
    random.Random(1).shuffle(obj["labels"])
    assert from_json(obj).labels == lab.labels


def test_plain_labeling_round_trip():
    lab = Labeling(G("3"), empty(3), None, ((0,), (1,), (2,)))
    obj = to_json(lab)
    assert obj["cycle"] is None and obj["labels"][1] == {"v": 1, "e": [1]}
    assert from_json(obj).labels == lab.labels
    assert verify(lab).magic_constant == (0,)


def _base_obj():
    return json.loads(serialize(constructed(complete(2), 4, "4x2")))


def test_deserialize_errors():
    obj = _base_obj()
    obj["labels"].pop()
    with pytest.raises(LabelingError, match="incomplete"):
        from_json(obj)

    obj = _base_obj()
    obj["labels"][0]["e"] = [5, 0]
    with pytest.raises(LabelingError, match="element out of range"):
        from_json(obj)

    obj = _base_obj()
    obj["labels"][1]["v"] = obj["labels"][0]["v"]
    with pytest.raises(LabelingError, match="duplicate vertex"):
        from_json(obj)

    for bad in ["not json", "[]", '{"graph": "cycle:3"}']:
        with pytest.raises(LabelingError, match="malformed"):
            deserialize(bad)

    obj = _base_obj()
    obj["labels"][0]["v"] = [9, 0]
    with pytest.raises(LabelingError, match="out of range"):
        from_json(obj)
