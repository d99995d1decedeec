from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dsfm.generators import random_table
from dsfm.oracles import (DirectedCutOracle, HyperedgeCutOracle, OracleError, ResidualOracle,
                          TableOracle, bruteforce_parametric_min, evaluate, greedy_base_vertex,
                          in_base_polytope, is_submodular_bruteforce, level_set_integral,
                          lovasz_extension, minimize_with_linear)
from dsfm.penalties import make_quadratic

import random
import reference as ref

EDGE = HyperedgeCutOracle((1, 2), 1)
ARC = DirectedCutOracle((1, 2), [(1, 2, 2)])
TRIANGLE = HyperedgeCutOracle((1, 2, 3), 1)
ZERO = TableOracle((1, 2), [0, 0, 0, 0])


def test_evaluate_examples():
    assert evaluate(EDGE, {1}) == 1
    assert evaluate(TRIANGLE, {1, 2}) == 1
    assert evaluate(EDGE, set()) == 0
    assert evaluate(EDGE, {1, 5}) == 1          # restricted to the support


def test_evaluate_rejects_bad_ids():
    with pytest.raises(OracleError):
        evaluate(EDGE, {0})
    with pytest.raises(OracleError):
        evaluate(EDGE, {3}, n=2)


def test_oracle_kinds_match_reference():
    arcs = [(1, 3, 2), (3, 2, 1), (2, 1, 4)]
    d = DirectedCutOracle((1, 2, 3), arcs)
    h = HyperedgeCutOracle((1, 2, 3, 4), 3)
    for S in ref.subsets(range(1, 5)):
        assert d(S) == ref.arc_cut(arcs, S)
        assert h(S) == ref.hyperedge_cut((1, 2, 3, 4), 3, S)


def test_submodularity_examples():
    assert is_submodular_bruteforce(EDGE)
    assert not is_submodular_bruteforce(TableOracle((1, 2), [0, 0, 0, 1]))
    assert is_submodular_bruteforce(ZERO)


def test_submodularity_refuses_large_support():
    with pytest.raises(OracleError):
        is_submodular_bruteforce(HyperedgeCutOracle(range(1, 14), 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.lists(st.integers(-3, 3), min_size=16, max_size=16))
def test_local_submodularity_test_agrees_with_pairwise(k, vals):
    o = TableOracle(range(1, k + 1), vals[:1 << k])
    assert is_submodular_bruteforce(o) == ref.is_submodular(o, range(1, k + 1))


def test_greedy_examples():
    assert greedy_base_vertex(EDGE, [2, 1]) == [1, -1]
    assert greedy_base_vertex(ZERO, [5, -3]) == [0, 0]
    assert greedy_base_vertex(ARC, [0, 0]) == [2, -2]


def test_greedy_pads_outside_support():
    o = HyperedgeCutOracle((2, 4), 1)
    assert greedy_base_vertex(o, [0, 1, 0, 3]) == [0, -1, 0, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 6))
def test_greedy_vertex_is_feasible_and_optimal(seed, k):
    rng = random.Random(seed)
    o = random_table(rng, range(1, k + 1), max_abs=20, offset=False)
    x = [rng.randint(-5, 5) for _ in range(k)]
    w = greedy_base_vertex(o, x)
    assert in_base_polytope(o, w)
    assert ref.in_base(o, range(1, k + 1), {u: w[u - 1] for u in range(1, k + 1)})
    best = sum(a * b for a, b in zip(w, x))
    for v in ref.greedy_vertices(o, range(1, k + 1)):
        assert best >= sum(v[u] * x[u - 1] for u in range(1, k + 1))


def test_lovasz_examples():
    assert lovasz_extension(EDGE, [Fraction(7, 10), Fraction(3, 10)]) == Fraction(2, 5)
    assert lovasz_extension(EDGE, [Fraction(17, 10), Fraction(13, 10)]) == Fraction(2, 5)
    for S in ref.subsets((1, 2, 3)):
        x = [1 if u in S else 0 for u in (1, 2, 3)]
        assert lovasz_extension(TRIANGLE, x) == TRIANGLE(S)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 5),
       st.lists(st.floats(-10, 10), min_size=5, max_size=5))
def test_lovasz_matches_level_set_integral(seed, k, xs):
    o = random_table(random.Random(seed), range(1, k + 1), offset=False)
    x = xs[:k]
    expect = ref.lovasz_by_levels(o, range(1, k + 1), {u: x[u - 1] for u in range(1, k + 1)})
    assert abs(lovasz_extension(o, x) - expect) <= 1e-9
    assert abs(level_set_integral(o, x) - expect) <= 1e-9


def test_minimize_with_linear_examples():
    assert minimize_with_linear(EDGE, [0, 0], forced_in=1, forced_out=2) == ({1}, 1)
    assert minimize_with_linear(EDGE, [0, 0]) == (frozenset(), 0)
    # the directed arc 1->2 of capacity 2 with w = (-3, 0): {1,2} scores -3, {1} scores -1
    assert minimize_with_linear(ARC, [-3, 0], forced_in=1) == ({1, 2}, -3)


def test_minimize_with_linear_errors():
    with pytest.raises(OracleError):
        minimize_with_linear(EDGE, None, forced_in=1, forced_out=1)
    with pytest.raises(OracleError):
        minimize_with_linear(EDGE, None, forced_in=3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_minimize_with_linear_is_minimal_minimizer(seed, k):
    rng = random.Random(seed)
    o = random_table(rng, range(1, k + 1))
    w = [rng.randint(-4, 4) for _ in range(k)]
    A, val = minimize_with_linear(o, w)
    vals = {S: o(S) + sum(w[u - 1] for u in S) for S in ref.subsets(range(1, k + 1))}
    best = min(vals.values())
    assert val == best
    assert min(len(S) for S, v in vals.items() if v == best) == len(A)


def test_bruteforce_parametric_examples():
    p = make_quadratic([0, 0], [1, 1])
    assert bruteforce_parametric_min([EDGE], p, Fraction(1, 2)) == (frozenset(), 0)
    assert bruteforce_parametric_min([EDGE], p, -2) == ({1, 2}, -4)
    # psi' vanishes at alpha = a: the answer is the minimal minimizer of F itself
    p = make_quadratic([3, 3], [1, 2])
    assert bruteforce_parametric_min([ARC], p, 3) == (frozenset(), 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_minimal_minimizers_are_nested(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    oracles = [random_table(rng, sorted(rng.sample(range(1, n + 1), rng.randint(1, min(4, n)))))
               for _ in range(rng.randint(1, 3))]
    p = make_quadratic([Fraction(rng.randint(-8, 8), 2) for _ in range(n)],
                       [rng.choice((1, 2)) for _ in range(n)])
    f = lambda S: sum(o(S) for o in oracles)
    for k in range(-12, 13):
        alpha = Fraction(k, 2)
        A, val = bruteforce_parametric_min(oracles, p, alpha)
        best, mins = ref.parametric_minimizers(f, n, lambda u: p.derivative(u - 1, alpha))
        assert val == best
        assert all(A <= M for M in mins)
    # larger alpha gives a smaller minimal minimizer
    sets = [bruteforce_parametric_min(oracles, p, Fraction(k, 2))[0] for k in range(-12, 13)]
    assert all(b <= a for a, b in zip(sets, sets[1:]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 5))
def test_residual_nonnegative_on_base_points(seed, k):
    rng = random.Random(seed)
    o = random_table(rng, range(1, k + 1), offset=False)
    w = greedy_base_vertex(o, [rng.randint(-3, 3) for _ in range(k)])
    r = ResidualOracle(o, shift={u: w[u - 1] for u in o.support})
    assert min(r.table()) >= 0
