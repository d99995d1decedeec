"""Exact integer max-flow, minimal minimum cuts and parametric networks.

A ``FlowNetwork`` carries non-negative integer capacities. A
``ParametricNetwork`` carries one ``Capacity`` descriptor per arc: a constant,
or one original capacity function of lambda plus a rational shift. Only arcs
leaving the source may increase with lambda and only arcs entering the sink
may decrease. Evaluating a parametric network at a rational lambda and
scaling by a common denominator gives a ``FlowNetwork``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Optional

SOURCE_SIDE = "source"
SINK_SIDE = "sink"


class NetworkError(ValueError):
    pass


@dataclass(frozen=True)
class FlowNetwork:
    vertices: tuple
    source: Hashable
    sink: Hashable
    arcs: dict          # (u, v) -> non-negative int
    scale: int = 1      # capacities are ``scale`` times the true values

    def __post_init__(self):
        if self.source == self.sink:
            raise NetworkError("source and sink coincide")
        vs = set(self.vertices)
        if self.source not in vs or self.sink not in vs:
            raise NetworkError("terminals must be vertices")
        for (u, v), c in self.arcs.items():
            if u not in vs or v not in vs:
                raise NetworkError(f"arc {(u, v)} has an unknown endpoint")
            if not isinstance(c, int) or c < 0:
                raise NetworkError(f"arc {(u, v)} needs a non-negative integer capacity, got {c!r}")
        if (self.source, self.sink) in self.arcs:
            arcs = dict(self.arcs)
            del arcs[(self.source, self.sink)]
            object.__setattr__(self, "arcs", arcs)

    def cut_capacity(self, S: Iterable) -> int:
        S = frozenset(S)
        return sum(c for (u, v), c in self.arcs.items() if u in S and v not in S)


def make_network(vertices, source, sink, arcs: Iterable[tuple]) -> FlowNetwork:
    """Build from ``(u, v, capacity)`` triples, summing parallel arcs."""
    caps = {}
    for u, v, c in arcs:
        if u == v:
            continue
        caps[(u, v)] = caps.get((u, v), 0) + c
    return FlowNetwork(tuple(vertices), source, sink, caps)


@dataclass(frozen=True)
class MaxFlowResult:
    value: int
    reachable: frozenset
    flow: dict = field(repr=False)


def max_flow(net: FlowNetwork) -> MaxFlowResult:
    """Dinic's algorithm with current-arc pointers on exact integers."""
    index = {v: k for k, v in enumerate(net.vertices)}
    nv = len(index)
    s, t = index[net.source], index[net.sink]
    adj = [[] for _ in range(nv)]
    to = []
    cap = []
    keys = []
    for (u, v), c in net.arcs.items():
        if c == 0:
            continue
        a, b = index[u], index[v]
        adj[a].append(len(to))
        to.append(b)
        cap.append(c)
        adj[b].append(len(to))
        to.append(a)
        cap.append(0)
        keys.append((u, v))
    original = cap[0::2]

    value = 0
    while True:
        level = [-1] * nv
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in adj[u]:
                if cap[e] > 0 and level[to[e]] < 0:
                    level[to[e]] = level[u] + 1
                    queue.append(to[e])
        if level[t] < 0:
            break
        it = [0] * nv
        while True:
            pushed = _augment(s, t, adj, to, cap, level, it)
            if not pushed:
                break
            value += pushed

    seen = [False] * nv
    seen[s] = True
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for e in adj[u]:
            if cap[e] > 0 and not seen[to[e]]:
                seen[to[e]] = True
                queue.append(to[e])
    reachable = frozenset(v for v, k in index.items() if seen[k])
    flow = {key: original[j] - cap[2 * j] for j, key in enumerate(keys)}
    return MaxFlowResult(value, reachable, flow)


def _augment(s, t, adj, to, cap, level, it) -> int:
    """One augmenting path in the level graph; 0 when blocked."""
    path = []
    u = s
    while u != t:
        edges = adj[u]
        i = it[u]
        while i < len(edges):
            e = edges[i]
            if cap[e] > 0 and level[to[e]] == level[u] + 1:
                break
            i += 1
        it[u] = i
        if i == len(edges):
            if u == s:
                return 0
            level[u] = -1
            e = path.pop()
            u = to[e ^ 1]
            it[u] += 1
            continue
        path.append(e)
        u = to[e]
    f = min(cap[e] for e in path)
    for e in path:
        cap[e] -= f
        cap[e ^ 1] += f
    return f


def minimal_min_cut(net: FlowNetwork) -> frozenset:
    """Source side of the inclusion-minimal minimum cut."""
    return max_flow(net).reachable


def bruteforce_min_cut(net: FlowNetwork):
    """(value, minimal source side) by enumerating every cut."""
    inner = [v for v in net.vertices if v not in (net.source, net.sink)]
    if len(inner) > 20:
        raise NetworkError("too many vertices for exhaustive cuts")
    best = None
    best_side = None
    for k in range(len(inner) + 1):
        for extra in itertools.combinations(inner, k):
            S = frozenset((net.source,) + extra)
            val = net.cut_capacity(S)
            if best is None or val < best:
                best, best_side = val, S
    return best, best_side


# -- parametric capacities ---------------------------------------------------

@dataclass(frozen=True)
class LinearCapacity:
    """lambda -> max(0, base + slope * lambda)."""
    base: Fraction
    slope: Fraction

    def __call__(self, lam):
        v = self.base + self.slope * lam
        return v if v > 0 else 0 * v


@dataclass(frozen=True)
class Capacity:
    func: Optional[Callable] = None
    shift: Fraction = Fraction(0)
    side: Optional[str] = None

    @property
    def is_constant(self) -> bool:
        return self.func is None

    def __call__(self, lam):
        if self.func is None:
            return self.shift
        return self.func(lam) + self.shift

    def merge(self, other: "Capacity") -> "Capacity":
        if self.func is not None and other.func is not None:
            raise AssertionError("two parametric arcs merged into one")
        if self.func is None:
            return Capacity(other.func, self.shift + other.shift, other.side)
        return Capacity(self.func, self.shift + other.shift, self.side)


def constant(c) -> Capacity:
    c = Fraction(c)
    if c < 0:
        raise NetworkError("negative capacity")
    return Capacity(None, c, None)


def parametric(func: Callable, side: str, shift=0) -> Capacity:
    if side not in (SOURCE_SIDE, SINK_SIDE):
        raise NetworkError(f"unknown monotonicity side {side!r}")
    return Capacity(func, Fraction(shift), side)


_origins = itertools.count()


@dataclass(frozen=True)
class ParametricNetwork:
    vertices: tuple
    source: Hashable
    sink: Hashable
    arcs: dict                      # (u, v) -> Capacity
    origin: int = -1                # shared by a network and all its minors
    minor: bool = False             # produced by contraction/deletion
    dropped: tuple = ()             # capacities of removed source-to-sink arcs

    def __post_init__(self):
        if self.source == self.sink:
            raise NetworkError("source and sink coincide")
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise NetworkError("duplicate vertices")
        if self.source not in vs or self.sink not in vs:
            raise NetworkError("terminals must be vertices")
        arcs = {}
        dropped = list(self.dropped)
        for (u, v), c in self.arcs.items():
            if u not in vs or v not in vs:
                raise NetworkError(f"arc {(u, v)} has an unknown endpoint")
            if u == v:
                continue
            if (u, v) == (self.source, self.sink):
                dropped.append(c)
                continue
            if not c.is_constant:
                if c.side == SOURCE_SIDE and u != self.source:
                    raise NetworkError(f"nondecreasing arc {(u, v)} must leave the source")
                if c.side == SINK_SIDE and v != self.sink:
                    raise NetworkError(f"nonincreasing arc {(u, v)} must enter the sink")
                if c.side not in (SOURCE_SIDE, SINK_SIDE):
                    raise NetworkError(f"parametric arc {(u, v)} lacks a monotonicity tag")
            arcs[(u, v)] = c
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "dropped", tuple(dropped))
        if self.origin < 0:
            object.__setattr__(self, "origin", next(_origins))

    @property
    def inner(self) -> list:
        return [v for v in self.vertices if v not in (self.source, self.sink)]

    def capacities_at(self, lam) -> dict:
        return {e: c(lam) for e, c in self.arcs.items()}

    def offset_at(self, lam):
        """Capacity of removed source-to-sink arcs; it is part of every cut."""
        return sum((Fraction(c(lam)) for c in self.dropped), Fraction(0))


def evaluate_at(pnet: ParametricNetwork, lam, scale: int | None = None) -> FlowNetwork:
    """Integer network at ``lam``; capacities multiplied by ``scale``.

    Without an explicit scale the lcm of all capacity denominators is used.
    """
    vals = {e: Fraction(c) for e, c in pnet.capacities_at(lam).items()}
    for e, v in vals.items():
        if v < 0:
            raise NetworkError(f"arc {e} has negative capacity {v} at {lam}")
    if scale is None:
        scale = 1
        for v in vals.values():
            scale = scale * v.denominator // math.gcd(scale, v.denominator)
    arcs = {}
    for e, v in vals.items():
        q = v * scale
        if q.denominator != 1:
            raise NetworkError(f"capacity {v} of arc {e} not representable at scale {scale}")
        arcs[e] = int(q)
    return FlowNetwork(pnet.vertices, pnet.source, pnet.sink, arcs, scale)


def min_cut_at(pnet: ParametricNetwork, lam):
    """(exact min-cut capacity, minimal source side) at ``lam``.

    The capacity includes arcs that contractions turned into direct
    source-to-sink arcs, so it is comparable across minors.
    """
    net = evaluate_at(pnet, lam)
    res = max_flow(net)
    return Fraction(res.value, net.scale) + pnet.offset_at(lam), res.reachable


def _components(vertices: set, arcs: dict, lam) -> list:
    adj = {v: [] for v in vertices}
    for (u, v), c in arcs.items():
        if u in vertices and v in vertices and c(lam) > 0:
            adj[u].append(v)
            adj[v].append(u)
    comps = []
    seen = set()
    for v in vertices:
        if v in seen:
            continue
        comp = {v}
        seen.add(v)
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.add(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def contract(pnet: ParametricNetwork, X: Iterable, lam=None) -> ParametricNetwork:
    """Merge X into the terminal it contains.

    When X holds the sink and ``lam`` is given, the parts of X not connected
    to the sink through arcs of positive capacity at ``lam`` are deleted
    instead of merged; they receive no capacity from outside X at ``lam``.
    """
    X = set(X)
    s, t = pnet.source, pnet.sink
    if not X:
        raise NetworkError("cannot contract an empty set")
    if s in X and t in X:
        raise NetworkError("contracted set contains both terminals")
    if s not in X and t not in X:
        raise NetworkError("contracted set contains no terminal")
    if not X <= set(pnet.vertices):
        raise NetworkError("contracted set has unknown vertices")
    term = s if s in X else t
    deleted = set()
    if term == t and lam is not None:
        for comp in _components(X, pnet.arcs, lam):
            if t in comp:
                continue
            inflow = sum(c(lam) for (u, v), c in pnet.arcs.items()
                         if v in comp and u not in X)
            assert inflow == 0, "stranded sink-side component receives capacity"
            deleted |= comp
        X -= deleted

    arcs = {}
    dropped = list(pnet.dropped)
    for (u, v), c in pnet.arcs.items():
        if u in deleted or v in deleted:
            continue
        a = term if u in X else u
        b = term if v in X else v
        if (a, b) == (s, t):
            dropped.append(c)
            continue
        if a == b or b == s or a == t:
            continue
        arcs[(a, b)] = arcs[(a, b)].merge(c) if (a, b) in arcs else c
    verts = tuple(v for v in pnet.vertices if v == term or (v not in X and v not in deleted))
    return ParametricNetwork(verts, s, t, arcs, origin=pnet.origin, minor=True,
                             dropped=tuple(dropped))
