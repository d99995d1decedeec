"""Parametric minimum cuts by divide and conquer over lambda.

The solver works on an integer index space ``k`` whose lambda values come
from a map: ``lam_min + k * eps`` on an eps-grid, or ``domain[k]`` on a finite
domain. Each recursive call either contracts a large terminal side, or binary
searches the index at which the minimal cut passes half of the vertices and
splits into two contracted minors on either side of it. Every flow runs on a
minor of the input network.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .flow import ParametricNetwork, contract, evaluate_at, max_flow, min_cut_at

INF = math.inf


@dataclass(frozen=True)
class ParametricCut:
    breakpoints: tuple
    tau: dict
    lam_min: Fraction
    lam_max: Fraction
    eps: Fraction | None = None

    def side(self, z) -> frozenset:
        """S(z): vertices embedded at or below ``z``."""
        return frozenset(v for v, lam in self.tau.items() if lam <= z)

    def is_strictly_nested(self) -> bool:
        sides = [self.side(self.lam_min)] + [self.side(b) for b in self.breakpoints]
        return all(a < b for a, b in zip(sides, sides[1:]))


@dataclass
class RecursionStats:
    """Counters over calls with more than two vertices ("non-trivial")."""
    level_vertices: dict = field(default_factory=lambda: defaultdict(int))
    level_edges: dict = field(default_factory=lambda: defaultdict(int))
    level_flows: dict = field(default_factory=lambda: defaultdict(int))
    base_calls: int = 0
    calls: int = 0
    depth: int = 0
    maxflow_calls: int = 0
    foreign_flows: int = 0
    root_vertices: int = 0
    root_edges: int = 0

    def check(self) -> list:
        """Violated accounting bounds as readable strings (empty when fine)."""
        n = self.root_vertices
        bad = []
        for lvl, tot in sorted(self.level_vertices.items()):
            if tot > 3 * n:
                bad.append(f"level {lvl} holds {tot} vertices > 3n = {3 * n}")
        for lvl, tot in sorted(self.level_edges.items()):
            if tot > self.root_edges + Fraction(3, 2) * lvl * n:
                bad.append(f"level {lvl} holds {tot} arcs")
        if n >= 1 and self.depth > math.log2(max(n, 1)) + 1:
            bad.append(f"depth {self.depth} > log2({n}) + 1")
        if self.foreign_flows:
            bad.append(f"{self.foreign_flows} flows ran on networks that are not minors")
        return bad


class _Solver:
    def __init__(self, root: ParametricNetwork, value: Callable, stats: RecursionStats):
        self.value = value
        self.stats = stats
        self.origin = root.origin
        stats.root_vertices = len(root.vertices)
        stats.root_edges = len(root.arcs)

    def cut(self, net, k, depth) -> frozenset:
        st = self.stats
        st.maxflow_calls += 1
        st.level_flows[depth] += 1
        if net.origin != self.origin:
            st.foreign_flows += 1
        return max_flow(evaluate_at(net, self.value(k))).reachable

    def solve(self, net: ParametricNetwork, lo: int, hi: int, depth: int = 1):
        st = self.stats
        st.calls += 1
        s, t = net.source, net.sink
        V = set(net.vertices)
        if len(V) <= 2:
            st.base_calls += 1
            return [], {s: lo, t: INF}
        st.level_vertices[depth] += len(V)
        st.level_edges[depth] += len(net.arcs)
        st.depth = max(st.depth, depth)
        half = Fraction(len(V), 2)

        S_lo = self.cut(net, lo, depth)
        if len(S_lo) > half:
            brk, tau = self.solve(contract(net, S_lo), lo, hi, depth + 1)
            for v in S_lo:
                tau[v] = lo
            return brk, tau
        S_hi = self.cut(net, hi, depth)
        if len(S_hi) < half:
            T = V - S_hi
            brk, tau = self.solve(contract(net, T, self.value(hi)), lo, hi, depth + 1)
            for v in T:
                tau[v] = INF
            tau[s] = lo
            return brk, tau

        k1, k2, S1, S2 = lo, hi, S_lo, S_hi
        while k2 - k1 > 1:
            mid = k1 + (k2 - k1) // 2
            Sm = self.cut(net, mid, depth)
            if len(Sm) >= half:
                k2, S2 = mid, Sm
            else:
                k1, S1 = mid, Sm

        left = contract(net, V - S1, self.value(k1))
        right = contract(net, S2)
        brk1, tau1 = self.solve(left, lo, k1, depth + 1)
        brk2, tau2 = self.solve(right, k2, hi, depth + 1)
        brk = brk1 + ([] if len(S1) == len(S2) else [k2]) + brk2
        tau = {}
        for v in S1:
            tau[v] = tau1[v]
        for v in S2 - S1:
            tau[v] = k2
        for v in V - S2:
            tau[v] = tau2[v]
        tau[s] = lo
        tau[t] = INF
        return brk, tau


def _finish(brk, tau, value, lam_min, lam_max, eps) -> ParametricCut:
    out = {v: (INF if k == INF else value(k)) for v, k in tau.items()}
    return ParametricCut(tuple(value(k) for k in brk), out, lam_min, lam_max, eps)


def apx_parametric_min_cut(pnet: ParametricNetwork, lam_min, lam_max, eps,
                           stats: RecursionStats | None = None) -> ParametricCut:
    """eps-approximate parametric minimal min cut over [lam_min, lam_max]."""
    lam_min, lam_max, eps = Fraction(lam_min), Fraction(lam_max), Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if lam_max < lam_min:
        raise ValueError("empty lambda range")
    steps = (lam_max - lam_min) / eps
    if steps.denominator != 1:
        raise ValueError(f"range {lam_max - lam_min} is not a multiple of eps = {eps}")

    def value(k):
        return lam_min + k * eps

    stats = stats if stats is not None else RecursionStats()
    brk, tau = _Solver(pnet, value, stats).solve(pnet, 0, int(steps))
    return _finish(brk, tau, value, lam_min, lam_max, eps)


def exact_parametric_min_cut_discrete(pnet: ParametricNetwork, domain: Sequence,
                                      stats: RecursionStats | None = None) -> ParametricCut:
    """Exact parametric minimal min cut over a finite sorted domain."""
    domain = [Fraction(d) for d in domain]
    if not domain:
        raise ValueError("empty domain")
    if any(a >= b for a, b in zip(domain, domain[1:])):
        raise ValueError("domain must be strictly increasing")
    stats = stats if stats is not None else RecursionStats()
    brk, tau = _Solver(pnet, domain.__getitem__, stats).solve(pnet, 0, len(domain) - 1)
    return _finish(brk, tau, domain.__getitem__, domain[0], domain[-1], None)


def grid_sweep(pnet: ParametricNetwork, lam_min, lam_max, step) -> ParametricCut:
    """Reference answer: a minimal min cut at every grid point."""
    lam_min, lam_max, step = Fraction(lam_min), Fraction(lam_max), Fraction(step)
    count = (lam_max - lam_min) / step
    if count.denominator != 1:
        raise ValueError("range is not a multiple of the sweep step")
    tau = {v: INF for v in pnet.vertices}
    brk = []
    prev = None
    for k in range(int(count) + 1):
        lam = lam_min + k * step
        S = max_flow(evaluate_at(pnet, lam)).reachable
        if prev is not None:
            if not prev <= S:
                raise AssertionError(f"minimal cuts not nested at {lam}")
            if S != prev:
                brk.append(lam)
        for v in S:
            if tau[v] == INF:
                tau[v] = lam
        prev = S
    return ParametricCut(tuple(brk), tau, lam_min, lam_max, None)


def compare_to_exact(cut_eps: ParametricCut, cut_exact: ParametricCut, eps=None):
    """Largest tau_eps(v) - tau(v); raises when outside [0, eps]."""
    eps = Fraction(eps if eps is not None else cut_eps.eps)
    if cut_eps.lam_min != cut_exact.lam_min:
        raise ValueError("cuts start at different lambda")
    if set(cut_eps.tau) != set(cut_exact.tau):
        raise ValueError("cuts cover different vertices")
    worst = Fraction(0)
    for v, a in cut_eps.tau.items():
        b = cut_exact.tau[v]
        if (a == INF) != (b == INF):
            raise ValueError(f"vertex {v!r}: finite/infinite mismatch ({a} vs {b})")
        if a == INF:
            continue
        d = a - b
        if d < 0 or d > eps:
            raise ValueError(f"vertex {v!r}: deviation {d} outside [0, {eps}]")
        worst = max(worst, d)
    return worst


def definition_violations(pnet: ParametricNetwork, cut: ParametricCut) -> list:
    """Grid points where the reported cut is not the minimal min cut.

    Checks every grid point of each window [lambda_i, lambda_{i+1} - eps) and
    the right end of the range, comparing both the set and its capacity.
    """
    eps = cut.eps
    starts = [cut.lam_min] + list(cut.breakpoints)
    ends = list(cut.breakpoints) + [cut.lam_max + eps]
    bad = []
    points = []
    for a, b in zip(starts, ends):
        lam = a
        while lam < b - eps:
            points.append((lam, a))
            lam += eps
    points.append((cut.lam_max, starts[-1]))
    for lam, anchor in points:
        net = evaluate_at(pnet, lam)
        res = max_flow(net)
        S = cut.side(anchor)
        if S != res.reachable or net.cut_capacity(S) != res.value:
            bad.append(lam)
    return bad


def min_cut_value(pnet: ParametricNetwork, lam):
    return min_cut_at(pnet, lam)[0]
