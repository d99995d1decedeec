import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dsfm.cutapprox import (CutGraph, approximation_factor, combine_graphs, graph_approx_shifted,
                            prefix_cut_values)
from dsfm.generators import random_table
from dsfm.oracles import (HyperedgeCutOracle, OracleError, TableOracle,
                          greedy_base_vertex, in_base_polytope)
from dsfm.preprocess import normalize_instance
from dsfm.penalties import make_quadratic

import reference as ref


def normalized(o):
    return normalize_instance([o], make_quadratic([0] * max(o.support), [1] * max(o.support))).oracles[0]


def test_edge_cut_graph_is_exact():
    g = graph_approx_shifted(HyperedgeCutOracle((1, 2), 1))
    assert g.capacity(1, 2) == 1 and g.capacity(2, 1) == 1
    assert g.cut({1}) == 1


def test_zero_function_gives_zero_graph():
    g = graph_approx_shifted(TableOracle((1, 2, 3), [0] * 8))
    assert g.arcs == {}
    assert all(g.capacity(u, v) == 0 for u in (1, 2, 3) for v in (1, 2, 3))


def test_triangle_sandwich():
    o = HyperedgeCutOracle((1, 2, 3), 1)
    g = graph_approx_shifted(o, check=True)
    assert g.arcs == {(u, v): 1 for u in (1, 2, 3) for v in (1, 2, 3) if u != v}
    assert g.cut({1}) == 2 and o({1}) == 1
    for S in ref.subsets((1, 2, 3)):
        assert o(S) <= g.cut(S) <= Fraction(9, 4) * o(S)


def test_rejects_unnormalized():
    with pytest.raises(OracleError):
        graph_approx_shifted(TableOracle((1, 2), [0, 1, 0, 1]))


def test_combine_examples():
    e = graph_approx_shifted(HyperedgeCutOracle((1, 2), 1))
    assert combine_graphs([e, e]).arcs == {(1, 2): 2, (2, 1): 2}
    f = graph_approx_shifted(HyperedgeCutOracle((2, 3), 1))
    both = combine_graphs([e, f])
    assert len(both.arcs) == 4 and both.cut({2}) == 2
    assert combine_graphs([]).arcs == {}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_sandwich_and_integrality(seed, k):
    o = normalized(random_table(random.Random(seed), range(1, k + 1), max_abs=30))
    g = graph_approx_shifted(o, check=True)
    factor = approximation_factor(k)
    assert all(isinstance(c, int) and c > 0 for c in g.arcs.values())
    for S in ref.subsets(range(1, k + 1)):
        assert o(S) <= g.cut(S) <= factor * o(S)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_scaled_graph_base_polytope_inside(seed, k):
    rng = random.Random(seed)
    o = normalized(random_table(rng, range(1, k + 1), max_abs=30))
    g = graph_approx_shifted(o).floor_divided(approximation_factor(k))
    as_oracle = TableOracle(range(1, k + 1), [g.cut(o.set_of(m)) for m in range(1 << k)])
    for _ in range(20):
        w = greedy_base_vertex(as_oracle, [rng.randint(-9, 9) for _ in range(k)])
        assert in_base_polytope(o, w)


def test_prefix_cut_examples():
    g = CutGraph((1, 2, 3), {(1, 2): 3, (2, 3): 2})
    assert prefix_cut_values(g, [1, 2, 3]) == [3, 2, 0]
    assert prefix_cut_values(CutGraph((1, 2, 3), {}), [3, 1, 2]) == [0, 0, 0]
    g = CutGraph((1, 2), {(2, 1): 5})
    assert prefix_cut_values(g, [1, 2]) == [0, 0]
    assert prefix_cut_values(g, [2, 1]) == [5, 0]
    with pytest.raises(ValueError):
        prefix_cut_values(g, [1, 1])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_prefix_cuts_match_direct_cuts(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 7)
    arcs = {(u, v): rng.randint(1, 9) for u in range(1, k + 1) for v in range(1, k + 1)
            if u != v and rng.random() < 0.4}
    g = CutGraph(tuple(range(1, k + 1)), arcs)
    order = list(range(1, k + 1))
    rng.shuffle(order)
    triples = [(u, v, c) for (u, v), c in arcs.items()]
    assert prefix_cut_values(g, order) == [ref.arc_cut(triples, set(order[:j + 1]))
                                           for j in range(k)]
