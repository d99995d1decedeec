from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dsfm.flow import (SINK_SIDE, SOURCE_SIDE, Capacity, FlowNetwork, LinearCapacity,
                       NetworkError, ParametricNetwork, bruteforce_min_cut, constant, contract,
                       evaluate_at, make_network, max_flow, min_cut_at, minimal_min_cut,
                       parametric)
from dsfm.generators import random_flow_network, random_parametric_network

import reference as ref

DIAMOND = make_network("sabt", "s", "t",
                       [("s", "a", 3), ("s", "b", 2), ("a", "t", 2), ("b", "t", 3)])


def test_path_network():
    net = make_network("sat", "s", "t", [("s", "a", 5), ("a", "t", 5)])
    assert max_flow(net).value == 5


def test_diamond():
    res = max_flow(DIAMOND)
    assert res.value == 4
    assert res.reachable == {"s", "a"}
    assert minimal_min_cut(DIAMOND) == {"s", "a"}


def test_zero_and_bottleneck_networks():
    net = make_network("sabt", "s", "t", [("s", "a", 0), ("a", "b", 4), ("b", "t", 1)])
    res = max_flow(net)
    assert res.value == 0 and res.reachable == {"s"}
    net = make_network("sat", "s", "t", [("s", "a", 9), ("a", "t", 0)])
    assert max_flow(net).value == 0 and minimal_min_cut(net) == {"s", "a"}


def test_source_sink_arc_dropped():
    net = FlowNetwork(("s", "t"), "s", "t", {("s", "t"): 4})
    assert net.arcs == {} and max_flow(net).value == 0


def test_rejects_bad_capacities():
    with pytest.raises(NetworkError):
        FlowNetwork(("s", "t"), "s", "s", {})
    with pytest.raises(NetworkError):
        FlowNetwork(("s", "a", "t"), "s", "t", {("s", "a"): -1})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_flow_is_feasible_and_optimal(seed):
    net = random_flow_network(seed, max_vertices=9)
    res = max_flow(net)
    for e, f in res.flow.items():
        assert 0 <= f <= net.arcs[e]
    for v in net.vertices:
        if v in (net.source, net.sink):
            continue
        out = sum(f for (a, _), f in res.flow.items() if a == v)
        inn = sum(f for (_, b), f in res.flow.items() if b == v)
        assert out == inn
    val, side = ref.min_cut(net.vertices, "s", "t",
                            [(u, v, c) for (u, v), c in net.arcs.items()])
    assert res.value == val == net.cut_capacity(res.reachable)
    assert res.reachable == side
    assert "s" in res.reachable and "t" not in res.reachable


def test_evaluate_at_examples():
    up = parametric(LinearCapacity(Fraction(0), Fraction(1)), SOURCE_SIDE)
    down = Capacity(LinearCapacity(Fraction(0), Fraction(-1)), Fraction(1), SINK_SIDE)
    net = ParametricNetwork(("s", "a", "t"), "s", "t", {("s", "a"): up, ("a", "t"): down})
    assert evaluate_at(net, Fraction(3, 2), scale=2).arcs[("s", "a")] == 3
    assert evaluate_at(net, -2, scale=2).arcs[("a", "t")] == 6
    k = ParametricNetwork(("s", "a", "t"), "s", "t", {("s", "a"): constant(7)})
    assert evaluate_at(k, Fraction(5, 7), scale=3).arcs[("s", "a")] == 21
    with pytest.raises(NetworkError):
        evaluate_at(net, Fraction(1, 3), scale=2)


def test_monotonicity_tags_enforced():
    f = LinearCapacity(Fraction(0), Fraction(1))
    with pytest.raises(NetworkError):
        ParametricNetwork(("s", "a", "t"), "s", "t", {("a", "t"): parametric(f, SOURCE_SIDE)})
    with pytest.raises(NetworkError):
        ParametricNetwork(("s", "a", "b", "t"), "s", "t", {("a", "b"): parametric(f, SINK_SIDE)})


def _pdiamond():
    arcs = {("s", "a"): constant(3), ("s", "b"): constant(2),
            ("a", "t"): constant(2), ("b", "t"): constant(3)}
    return ParametricNetwork(tuple("sabt"), "s", "t", arcs)


def test_contract_diamond():
    minor = contract(_pdiamond(), {"s", "a"})
    assert set(minor.vertices) == {"s", "b", "t"}
    assert ("s", "t") not in minor.arcs
    # a -> t became a direct source-to-sink arc and is carried as an offset
    assert minor.offset_at(0) == 2
    assert min_cut_at(minor, 0)[0] == 4 == DIAMOND.cut_capacity({"s", "a"})
    assert minor.minor


def test_contract_sink_alone_is_identity():
    net = _pdiamond()
    minor = contract(net, {"t"})
    assert set(minor.vertices) == set(net.vertices)
    assert {e: c(0) for e, c in minor.arcs.items()} == {e: c(0) for e, c in net.arcs.items()}


def test_parallel_arcs_fold_into_shift():
    g = LinearCapacity(Fraction(0), Fraction(-1))
    arcs = {("u", "t"): parametric(g, SINK_SIDE, shift=1), ("u", "w"): constant(2),
            ("s", "u"): constant(1)}
    net = ParametricNetwork(("s", "u", "w", "t"), "s", "t", arcs)
    minor = contract(net, {"w", "t"})
    cap = minor.arcs[("u", "t")]
    assert cap.func is g and cap.shift == 3


def test_contract_errors():
    net = _pdiamond()
    with pytest.raises(NetworkError):
        contract(net, {"s", "t"})
    with pytest.raises(NetworkError):
        contract(net, set())
    with pytest.raises(NetworkError):
        contract(net, {"a"})


def test_stranded_sink_component_is_deleted():
    # b hangs off a with zero capacity at lambda = 0 and is cut from t
    f = LinearCapacity(Fraction(0), Fraction(1))
    arcs = {("s", "a"): constant(1), ("a", "t"): constant(5), ("s", "b"): parametric(f, SOURCE_SIDE),
            ("b", "c"): constant(2)}
    net = ParametricNetwork(("s", "a", "b", "c", "t"), "s", "t", arcs)
    assert minimal_min_cut(evaluate_at(net, 0)) == {"s"}
    minor = contract(net, {"b", "c", "t"}, lam=0)
    assert set(minor.vertices) == {"s", "a", "t"}
    assert minor.minor and minor.origin == net.origin
    assert min_cut_at(minor, 0)[0] == min_cut_at(net, 0)[0] == 1
    merged = contract(net, {"a", "b", "c", "t"}, lam=0)
    assert set(merged.vertices) == {"s", "t"} and merged.offset_at(0) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_minimal_cuts_are_nested(seed):
    net = random_parametric_network(seed, max_vertices=10)
    prev = None
    for k in range(-16, 17):
        S = min_cut_at(net, Fraction(k, 4))[1]
        if prev is not None:
            assert prev <= S
        prev = S


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(-16, 16), st.integers(0, 16))
def test_contraction_preserves_capacity(seed, k, gap):
    net = random_parametric_network(seed, max_vertices=10)
    lam, hi = Fraction(k, 4), Fraction(k + gap, 4)
    S = min_cut_at(net, lam)[1]
    assert min_cut_at(net, hi)[0] == min_cut_at(contract(net, S), hi)[0]
    T = set(net.vertices) - min_cut_at(net, hi)[1]
    assert min_cut_at(net, lam)[0] == min_cut_at(contract(net, T, hi), lam)[0]


def test_bruteforce_agrees_on_small_corpus():
    for seed in range(30):
        net = random_flow_network(seed, max_vertices=10)
        assert bruteforce_min_cut(net) == (max_flow(net).value, max_flow(net).reachable)
