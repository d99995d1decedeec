"""Seeded random instances and parametric networks for tests and benchmarks.

Set functions are built as mixtures of directed cuts, hyperedge cuts,
modular terms and a constant, so they are submodular by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .flow import (SINK_SIDE, SOURCE_SIDE, LinearCapacity, ParametricNetwork, constant,
                   make_network, parametric)
from .oracles import DirectedCutOracle, HyperedgeCutOracle, TableOracle
from .penalties import make_quadratic

DENOMINATORS = (1, 2, 3, 4, 5, 8)


def random_rational(rng: random.Random, lo, hi, denominators=DENOMINATORS) -> Fraction:
    q = rng.choice(denominators)
    return Fraction(rng.randint(int(lo * q), int(hi * q)), q)


def random_table(rng: random.Random, support, max_abs=8, modular=True, offset=True):
    """Truth table of a random cut mixture with all |values| <= max_abs."""
    support = tuple(support)
    k = len(support)
    while True:
        arcs = [(u, v, rng.randint(0, 2)) for u in support for v in support
                if u != v and rng.random() < 0.5]
        dcut = DirectedCutOracle(support, arcs)
        hcut = HyperedgeCutOracle(support, rng.randint(0, 2) if k > 1 else 0)
        lin = [rng.randint(-2, 2) if modular else 0 for _ in support]
        const = rng.randint(-2, 2) if offset else 0
        values = []
        for m in range(1 << k):
            s = sum(lin[j] for j in range(k) if m >> j & 1)
            values.append(dcut.table()[m] + hcut.table()[m] + s + const)
        if max(abs(v) for v in values) <= max_abs:
            return TableOracle(support, values)


def random_oracle(rng: random.Random, support, max_abs=8):
    kind = rng.random()
    support = tuple(support)
    if kind < 0.15 and len(support) >= 2:
        return HyperedgeCutOracle(support, rng.randint(1, 3))
    if kind < 0.3 and len(support) >= 2:
        u, v = rng.sample(support, 2)
        return DirectedCutOracle(support, [(u, v, rng.randint(1, 4))])
    return random_table(rng, support, max_abs)


def random_instance(seed: int, n_max=8, r_max=3, support_max=4, max_abs=8):
    """(oracles, penalty) with the size limits used by the acceptance suite."""
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    r = rng.randint(1, r_max)
    oracles = []
    for _ in range(r):
        k = rng.randint(1, min(support_max, n))
        oracles.append(random_oracle(rng, sorted(rng.sample(range(1, n + 1), k)), max_abs))
    a = [random_rational(rng, -4, 4) for _ in range(n)]
    c = [rng.choice((1, 2)) for _ in range(n)]
    return oracles, make_quadratic(a, c)


def random_parametric_network(seed: int, max_vertices=20, lam_bound=4):
    """Network on s, t and up to max_vertices - 2 inner vertices.

    Source arcs are max(0, base + slope*lam) with slope >= 0, sink arcs the
    same with slope <= 0; inner arcs are constants.
    """
    rng = random.Random(seed)
    m = rng.randint(1, max_vertices - 2)
    inner = list(range(1, m + 1))
    density = rng.uniform(0.1, 0.5)
    arcs = {}
    for u in inner:
        for v in inner:
            if u != v and rng.random() < density:
                arcs[(u, v)] = constant(rng.randint(1, 5))
    for u in inner:
        if rng.random() < 0.85:
            arcs[("s", u)] = parametric(
                LinearCapacity(random_rational(rng, -lam_bound, lam_bound),
                               random_rational(rng, 0, 3)), SOURCE_SIDE)
        elif rng.random() < 0.5:
            arcs[("s", u)] = constant(rng.randint(0, 3))
        if rng.random() < 0.85:
            arcs[(u, "t")] = parametric(
                LinearCapacity(random_rational(rng, -lam_bound, lam_bound),
                               -random_rational(rng, 0, 3)), SINK_SIDE)
        elif rng.random() < 0.5:
            arcs[(u, "t")] = constant(rng.randint(0, 3))
    return ParametricNetwork(("s",) + tuple(inner) + ("t",), "s", "t", arcs)


def random_flow_network(seed: int, max_vertices=14):
    rng = random.Random(seed)
    m = rng.randint(0, max_vertices - 2)
    verts = ["s"] + list(range(1, m + 1)) + ["t"]
    density = rng.uniform(0.1, 0.6)
    arcs = [(u, v, rng.randint(0, 9)) for u in verts for v in verts
            if u != v and u != "t" and v != "s" and rng.random() < density]
    return make_network(verts, "s", "t", arcs)
