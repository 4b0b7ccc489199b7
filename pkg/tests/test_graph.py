import json

import pytest
from hypothesis import given, strategies as st

from gbs.covering import covering_from_permutations, lift_labels, bouquet, SubgroupDescriptor
from gbs.graph import (
    Edge,
    GbsGraph,
    GraphValidationError,
    betti_number,
    find_proper_plateau,
    graph_from_json,
    graph_to_json,
    is_plateau,
    is_reduced,
    sign_normalize,
    validate,
)

FIG1 = covering_from_permutations(2, 4, [[1, 2, 3, 0], [1, 0, 3, 2]])


def loop(a, w):
    return GbsGraph.build(["v"], [("t", "v", "v", a, w)])


def two_cycle(e0, e1):
    return GbsGraph.build(["u", "v"], [("e0", "u", "v", *e0), ("e1", "v", "u", *e1)])


# -- validation -----------------------------------------------------------

def test_single_loop_is_valid():
    g = validate({"vertices": ["v"], "edges": [{"id": "t", "from": "v", "to": "v", "a": "2", "omega": "3"}]})
    assert g.edge("t") == Edge("t", "v", "v", 2, 3)


def test_zero_label_rejected():
    with pytest.raises(GraphValidationError) as exc:
        validate({"vertices": ["v"], "edges": [{"id": "t", "from": "v", "to": "v", "a": "0", "omega": "3"}]})
    assert any("zero label" in v for v in exc.value.violations)


def test_disconnected_rejected():
    raw = {"vertices": ["u", "v"], "edges": [
        {"id": "a", "from": "u", "to": "u", "a": "1", "omega": "2"},
        {"id": "b", "from": "v", "to": "v", "a": "1", "omega": "2"},
    ]}
    with pytest.raises(GraphValidationError) as exc:
        validate(raw)
    assert any("disconnected" in v for v in exc.value.violations)


def test_dangling_endpoint_and_zero_reported_together():
    raw = {"vertices": ["u"], "edges": [{"id": "a", "from": "u", "to": "w", "a": "0", "omega": "2"}]}
    with pytest.raises(GraphValidationError) as exc:
        validate(raw)
    msgs = " | ".join(exc.value.violations)
    assert "dangling endpoint" in msgs and "zero label" in msgs


def test_json_round_trip_is_exact_with_big_labels():
    big = 3 ** 200
    g = GbsGraph.build(["v0", "v1"], [("e", "v0", "v1", big, -7), ("f", "v1", "v1", 1, 5)])
    text = graph_to_json(g)
    assert graph_to_json(graph_from_json(text)) == text
    assert json.loads(text)["edges"][0]["a"] == str(big)
    assert graph_from_json(text) == g


# -- reducedness ------------------------------------------------------------

def test_loops_are_exempt_from_reducedness():
    assert is_reduced(loop(1, 4))


def test_edge_with_label_one_is_not_reduced():
    assert not is_reduced(GbsGraph.build(["u", "v"], [("e", "u", "v", 1, 3)]))


def test_reduced_two_vertex_graph():
    g = GbsGraph.build(["u", "v"], [("e", "u", "v", 2, 3), ("x", "u", "u", 1, 2), ("y", "v", "v", 1, 2)])
    assert is_reduced(g)


@given(st.integers(-9, 9).filter(bool), st.integers(-9, 9).filter(bool))
def test_reducedness_ignores_signs(a, w):
    g = GbsGraph.build(["u", "v"], [("e", "u", "v", a, w)])
    h = GbsGraph.build(["u", "v"], [("e", "u", "v", -a, w)])
    assert is_reduced(g) == is_reduced(h)


# -- signs ------------------------------------------------------------------

def test_sign_normalize_negative_loop():
    assert sign_normalize(loop(-2, -3)) == loop(2, 3)


def test_sign_normalize_index_two_cycle_with_negative_labels():
    g = two_cycle((-2, 5), (-2, 5))
    assert sign_normalize(g) == two_cycle((2, 5), (2, 5))


def test_sign_normalize_cannot_change_cycle_modulus_sign():
    # (-m,n),(m,n) has a negative cycle modulus, so it can never become all positive
    h = sign_normalize(two_cycle((-2, 5), (2, 5)))
    assert any(x < 0 for x in h.labels())


def test_sign_normalize_fixes_positive_graph():
    g = lift_labels(FIG1, 1, 3)
    assert sign_normalize(g) == g


def signed_graphs():
    @st.composite
    def build(draw):
        n = draw(st.integers(1, 4))
        verts = [f"v{i}" for i in range(n)]
        edges = []
        for i in range(1, n):
            edges.append((f"t{i}", verts[draw(st.integers(0, i - 1))], verts[i]))
        for j in range(draw(st.integers(0, 3))):
            edges.append((f"c{j}", draw(st.sampled_from(verts)), draw(st.sampled_from(verts))))
        lab = st.integers(-6, 6).filter(bool)
        return GbsGraph.build(verts, [(eid, s, t, draw(lab), draw(lab)) for eid, s, t in edges])
    return build()


@given(signed_graphs())
def test_sign_normalize_properties(g):
    h = sign_normalize(g)
    assert sign_normalize(h) == h
    assert [(abs(e.a), abs(e.omega)) for e in h.edges] == [(abs(e.a), abs(e.omega)) for e in g.edges]
    assert betti_number(h) == betti_number(g)


# -- betti ------------------------------------------------------------------

def test_betti_examples():
    assert betti_number(bouquet(SubgroupDescriptor(4, 1, 2))) == 4
    cyc = GbsGraph.build(["a", "b", "c"], [("x", "a", "b", 2, 3), ("y", "b", "c", 2, 3), ("z", "c", "a", 2, 3)])
    assert betti_number(cyc) == 1
    assert betti_number(lift_labels(FIG1, 1, 2)) == 5


# -- plateaus -----------------------------------------------------------------

def test_coprime_bouquet_has_no_proper_plateau():
    for d, p, q in [(1, 2, 3), (2, 1, 4), (3, 3, 5)]:
        assert find_proper_plateau(bouquet(SubgroupDescriptor(d, p, q))) is None


def test_loop_two_four_has_plateau():
    pl = find_proper_plateau(loop(2, 4))
    assert pl is not None
    assert (pl.prime, pl.vertices, pl.edges) == (2, ("v",), ())
    assert is_plateau(loop(2, 4), pl)


def test_loop_one_two_has_no_proper_plateau():
    assert find_proper_plateau(loop(1, 2)) is None


@given(signed_graphs())
def test_returned_plateaus_satisfy_definition(g):
    pl = find_proper_plateau(g)
    if pl is not None:
        assert is_plateau(g, pl)
