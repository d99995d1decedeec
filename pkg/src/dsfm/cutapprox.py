"""Directed-graph cut approximations of non-negative submodular functions.

For a non-negative F with F(empty) = F(V) = 0 the graph with capacities

    c_uv = min { F(A) : u in A, v not in A }

has a cut function satisfying F <= cut <= (|V|^2 / 4) F.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .oracles import OracleError, SubmodularOracle, minimize_with_linear


@dataclass(frozen=True)
class CutGraph:
    vertices: tuple
    arcs: dict = field(default_factory=dict)   # (u, v) -> positive integer

    def capacity(self, u, v) -> int:
        return self.arcs.get((u, v), 0)

    def cut(self, A: Iterable[int]) -> int:
        A = frozenset(A)
        return sum(c for (u, v), c in self.arcs.items() if u in A and v not in A)

    def total_capacity(self) -> int:
        return sum(self.arcs.values())

    def floor_divided(self, alpha) -> "CutGraph":
        """Capacities floor(c / alpha); ``alpha`` may be a Fraction."""
        alpha = Fraction(alpha)
        arcs = {}
        for e, c in self.arcs.items():
            q = (c * alpha.denominator) // alpha.numerator
            if q:
                arcs[e] = q
        return CutGraph(self.vertices, arcs)


def approximation_factor(support_size: int) -> Fraction:
    """max(|V|^2 / 4, 1) as an exact rational."""
    return max(Fraction(support_size * support_size, 4), Fraction(1))


def graph_approx_shifted(oracle: SubmodularOracle, check: bool = False) -> CutGraph:
    """Pairwise-minimum cut graph of a normalized non-negative oracle.

    With ``check`` the construction verifies, for every A, that the union over
    u in A of the intersections over v outside A of the minimizing sets is A
    and that the subadditivity bounds hold for those sets.
    """
    sup = oracle.support
    t = oracle.table()
    if t[0] != 0 or t[-1] != 0 or min(t) < 0:
        raise OracleError("graph approximation needs F >= 0 with F(empty) = F(V) = 0")
    arcs = {}
    witness = {}
    for u in sup:
        for v in sup:
            if u == v:
                continue
            T, val = minimize_with_linear(oracle, None, forced_in=u, forced_out=v)
            witness[(u, v)] = T
            if val:
                arcs[(u, v)] = val
    if check:
        _check_witnesses(oracle, witness)
    return CutGraph(tuple(sup), arcs)


def _check_witnesses(oracle, witness) -> None:
    sup = oracle.support
    full = frozenset(sup)
    for mask in range(1, (1 << len(sup)) - 1):
        A = oracle.set_of(mask)
        rest = full - A
        union = frozenset()
        total = 0
        for u in A:
            inter = full
            part = 0
            for v in rest:
                inter = inter & witness[(u, v)]
                part += oracle(witness[(u, v)])
            assert oracle(inter) <= part, "intersection subadditivity failed"
            union = union | inter
            total += part
        assert union == A, "witness sets do not rebuild A"
        assert oracle(union) <= total, "union subadditivity failed"


def combine_graphs(graphs: Sequence[CutGraph]) -> CutGraph:
    verts = []
    seen = set()
    arcs = {}
    for g in graphs:
        for u in g.vertices:
            if u not in seen:
                seen.add(u)
                verts.append(u)
        for e, c in g.arcs.items():
            arcs[e] = arcs.get(e, 0) + c
    return CutGraph(tuple(sorted(verts)), {e: c for e, c in arcs.items() if c})


def prefix_cut_values(graph: CutGraph, order: Sequence) -> list:
    """Cut values of every prefix of ``order`` via the incremental identity."""
    verts = set(graph.vertices)
    if len(order) != len(verts) or set(order) != verts:
        raise ValueError(f"{order} is not a permutation of {sorted(verts)}")
    pos = {u: k for k, u in enumerate(order)}
    out_after = [0] * len(order)   # sum of c_uv with v later than u
    in_before = [0] * len(order)   # sum of c_vu with v earlier than u
    for (u, v), c in graph.arcs.items():
        if pos[v] > pos[u]:
            out_after[pos[u]] += c
            in_before[pos[v]] += c
    vals = []
    cur = 0
    for k in range(len(order)):
        cur += out_after[k] - in_before[k]
        vals.append(cur)
    return vals
