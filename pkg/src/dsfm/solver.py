"""Dual iteration for decomposable submodular minimization with penalties.

The solver minimizes sum_u psi*_u(-y_u) over y in B(F), F = sum_i F_i, and
recovers x_u = (psi*_u)'(-y_u). Thresholding x at alpha yields minimizers of
F(A) + sum_{u in A} psi'_u(alpha) for every alpha at once.

Working representation
----------------------
After normalization every F_i is non-negative with F_i(empty) = F_i(V_i) = 0.
The instance is then multiplied by a power of two D: functions become D*F_i
and curvatures D*c, offsets unchanged. The dual objective scales by D, the
primal point is unchanged, and the dual iterate is kept as integer vectors
in these units (1/D in original units). Each step:

1. forms residuals R_i = D*F_i - y^i (non-negative while y^i in B(D*F_i)),
2. approximates each by a cut graph c^i and keeps floor(c^i / a_i) with
   a_i = max(|V_i|^2/4, 1), so the graph's base polytope stays inside
   B(R_i),
3. solves one parametric cut on the summed graph and turns the breakpoints
   into a target point of the summed base polytope,
4. decomposes that point per function (greedy prefix cuts, or an exact
   flow projection when the rounded target is not a greedy vertex),
5. accepts the step only if the dual objective does not increase.

The loop stops after the iteration budget, at a fixed point, or when the
duality-gap certificate f(x) - <y, x> drops to the target dual accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cutapprox import (CutGraph, approximation_factor, combine_graphs, graph_approx_shifted,
                        prefix_cut_values)
from .flow import (SINK_SIDE, SOURCE_SIDE, FlowNetwork, LinearCapacity, ParametricNetwork,
                   constant, max_flow, parametric)
from .oracles import (ResidualOracle, SubmodularOracle, greedy_order,
                      in_base_polytope, lovasz_extension)
from .parametric import INF, ParametricCut, RecursionStats, apx_parametric_min_cut
from .penalties import QuadraticPenalty
from .preprocess import NormalizedInstance, normalize_instance

SRC = "s"
SNK = "t"


# -- conversions ---------------------------------------------------------------

def dual_to_primal(y: Sequence, penalty: QuadraticPenalty) -> list:
    return [penalty.conjugate_derivative(u, -y[u]) for u in range(penalty.n)]


def threshold_set(x: Sequence, alpha) -> frozenset:
    return frozenset(u + 1 for u, v in enumerate(x) if v >= alpha)


def error_budget(zeta, M, n, L, sigma) -> float:
    """Set-objective error implied by dual accuracy ``zeta``."""
    zeta, M, L, sigma = float(zeta), float(M), float(L), float(sigma)
    return (math.sqrt(zeta) * M * n ** 1.5 * math.sqrt(2 * L / sigma ** 2)
            + zeta * (L / sigma) ** 2)


def invert_error_budget(target, M, n, L, sigma) -> float:
    """Largest zeta with error_budget(zeta, ...) <= target."""
    target, M, L, sigma = float(target), float(M), float(L), float(sigma)
    lin = M * n ** 1.5 * math.sqrt(2 * L / sigma ** 2)
    quad = (L / sigma) ** 2
    root = 2 * target / (lin + math.sqrt(lin * lin + 4 * quad * target))
    zeta = root * root
    while zeta > 0 and error_budget(zeta, M, n, L, sigma) > target:
        zeta *= 1 - 1e-9
    return zeta


@dataclass(frozen=True)
class ShiftedPenalty:
    """phi(x) = psi(x) + <y, x> for a quadratic psi and fixed vector y."""
    penalty: QuadraticPenalty
    y: tuple

    @property
    def n(self):
        return self.penalty.n

    def derivative(self, u, x):
        return self.penalty.derivative(u, x) + self.y[u]

    def conjugate_derivative(self, u, z):
        return self.penalty.conjugate_derivative(u, z - self.y[u])

    @property
    def sigma(self):
        return self.penalty.sigma

    @property
    def smoothness(self):
        return self.penalty.smoothness

    @property
    def rho(self):
        return max(abs(self.derivative(u, 0)) for u in range(self.n))


# -- one parametric cut ----------------------------------------------------------

def lambda_range(graph: CutGraph, phi: ShiftedPenalty, eps_cut) -> tuple:
    """Symmetric range on the eps_cut grid outside which all cuts are trivial."""
    bound = 2 * (phi.rho + graph.total_capacity()) / phi.sigma
    top = (math.floor(bound / eps_cut) + 1) * eps_cut
    return -top, top


def extended_network(graph: CutGraph, phi: ShiftedPenalty) -> ParametricNetwork:
    """Source arcs max(0, -phi'_u(-lam)), sink arcs max(0, phi'_u(-lam))."""
    n = phi.n
    arcs = {}
    for u in range(n):
        c = phi.penalty.c[u]
        at_zero = phi.derivative(u, 0)      # phi'_u(-lam) = at_zero - c * lam
        arcs[(SRC, u + 1)] = parametric(LinearCapacity(-at_zero, c), SOURCE_SIDE)
        arcs[(u + 1, SNK)] = parametric(LinearCapacity(at_zero, -c), SINK_SIDE)
    for e, cap in graph.arcs.items():
        arcs[e] = constant(cap)
    verts = (SRC,) + tuple(range(1, n + 1)) + (SNK,)
    return ParametricNetwork(verts, SRC, SNK, arcs)


def _solve_cut(graph, phi, eps_cut, stats=None):
    eps_cut = Fraction(eps_cut)
    lo, hi = lambda_range(graph, phi, eps_cut)
    cut = apx_parametric_min_cut(extended_network(graph, phi), lo, hi, eps_cut, stats)
    for u in range(1, phi.n + 1):
        lam = cut.tau[u]
        assert lam != INF, f"element {u} never joins the source side; range too small"
        assert lam > lo, f"element {u} starts on the source side; range too small"
    return cut


def find_min_cuts(graph: CutGraph, phi: ShiftedPenalty, eps_cut,
                  stats: RecursionStats | None = None) -> list:
    """Approximate minimizer of phi*(-w) over B(graph), as -grad phi(x~)."""
    cut = _solve_cut(graph, phi, eps_cut, stats)
    return [-phi.derivative(u, -cut.tau[u + 1]) for u in range(phi.n)]


def round_half_up(v: Fraction) -> int:
    return math.floor(v + Fraction(1, 2))


def cut_to_dual(cut: ParametricCut, phi: ShiftedPenalty, graphs: Sequence[CutGraph]):
    """Rounded dual target and its greedy decomposition over ``graphs``.

    The decomposition is the greedy vertex of each graph for the order of
    the primal point matching the rounded target. Its sum equals the target
    exactly when the target is that vertex of the summed base polytope.
    """
    n = phi.n
    w_hat = [-phi.derivative(u, -cut.tau[u + 1]) for u in range(n)]
    target = [round_half_up(w) for w in w_hat]
    x_star = [phi.conjugate_derivative(u, -target[u]) for u in range(n)]
    order = greedy_order(range(1, n + 1), x_star)
    parts = []
    for g in graphs:
        local = [u for u in order if u in set(g.vertices)]
        z = [0] * n
        prev = 0
        for u, val in zip(local, prefix_cut_values(g, local)):
            z[u - 1] = val - prev
            prev = val
        parts.append(z)
    return target, parts


def project_to_graphs(graphs: Sequence[CutGraph], target: Sequence[int]) -> list:
    """Integral per-graph points z^i in B(graph_i) with sum closest to target in l1.

    Points of a cut function's base polytope are net outflows of feasible
    flows, so a max flow from the positive to the negative target entries
    gives the projection; arc flows are then split among the graphs.
    """
    n = len(target)
    S, T = ("super", 0), ("super", 1)
    arcs = {}
    for g in graphs:
        for e, c in g.arcs.items():
            arcs[e] = arcs.get(e, 0) + c
    for u in range(1, n + 1):
        t = target[u - 1]
        if t > 0:
            arcs[(S, u)] = t
        elif t < 0:
            arcs[(u, T)] = -t
    net = FlowNetwork((S,) + tuple(range(1, n + 1)) + (T,), S, T, arcs)
    flow = max_flow(net).flow
    parts = []
    remaining = {e: f for e, f in flow.items() if S not in e and T not in e}
    for g in graphs:
        z = [0] * n
        for e, c in g.arcs.items():
            f = min(remaining.get(e, 0), c)
            if f:
                remaining[e] -= f
                z[e[0] - 1] += f
                z[e[1] - 1] -= f
        parts.append(z)
    assert not any(remaining.values()), "flow not covered by graph capacities"
    return parts


# -- the outer loop --------------------------------------------------------------

@dataclass
class DualState:
    parts: tuple            # per function, integer vectors in scaled units
    t: int = 0
    n: int | None = None    # ground set size; needed only when there are no parts

    @property
    def y(self) -> list:
        n = self.n if self.n is not None else len(self.parts[0])
        return [sum(p[k] for p in self.parts) for k in range(n)]


@dataclass
class IterationRecord:
    objective: Fraction     # dual objective, original units
    certificate: Fraction   # duality-gap bound, original units
    parts: tuple            # per-function duals after the step (scaled units)
    path: str               # "greedy", "projection" or "none"
    stats: RecursionStats | None = None


@dataclass
class SolveResult:
    x: list
    y: list
    y_scaled: list
    decomposition: list
    scale: int
    constant_offset: int
    trace: list
    delta: float
    zeta: float
    epsilon: float
    iterations: int
    iteration_bound: int
    alpha: Fraction
    certificate: Fraction
    history: list = field(repr=False, default_factory=list)
    final_cut: ParametricCut | None = field(repr=False, default=None)
    normalized: NormalizedInstance | None = field(repr=False, default=None)

    def threshold(self, alpha) -> frozenset:
        return threshold_set(self.x, alpha)


class _Problem:
    """Scaled normalized instance plus the step machinery."""

    def __init__(self, norm: NormalizedInstance, scale: int):
        self.norm = norm
        self.n = norm.n
        self.D = scale
        self.base = [ResidualOracle(o, scale=scale) for o in norm.oracles]
        self.factors = [approximation_factor(len(o.support)) for o in norm.oracles]
        self.pen = norm.penalty.scaled(scale)

    def objective(self, y) -> Fraction:
        """Dual objective in scaled units."""
        return self.pen.total_conjugate([-v for v in y])

    def primal(self, y) -> list:
        return dual_to_primal(y, self.pen)

    def certificate(self, y) -> Fraction:
        """f(x) - <y, x> at x = primal(y), scaled units; bounds the dual gap."""
        x = self.primal(y)
        f = sum((lovasz_extension(o, x) for o in self.base), Fraction(0))
        return f - sum(a * b for a, b in zip(y, x))

    def step(self, state: DualState):
        n = self.n
        y = state.y
        graphs = []
        for o, p, a in zip(self.base, state.parts, self.factors):
            resid = ResidualOracle(o, shift={u: p[u - 1] for u in o.support})
            graphs.append(graph_approx_shifted(resid).floor_divided(a))
        total = combine_graphs(graphs)
        phi = ShiftedPenalty(self.pen, tuple(y))
        eps_cut = Fraction(1) / (3 * self.pen.smoothness)
        stats = RecursionStats()
        cut = _solve_cut(total, phi, eps_cut, stats)
        target, greedy_parts = cut_to_dual(cut, phi, graphs)

        candidates = [("greedy", greedy_parts)]
        summed = [sum(p[k] for p in greedy_parts) for k in range(n)]
        if summed != target:
            candidates.append(("projection", project_to_graphs(graphs, target)))
        current = self.objective(y)
        best = ("none", None, current)
        for name, parts in candidates:
            z = [sum(p[k] for p in parts) for k in range(n)]
            if not any(z):
                continue
            val = self.objective([a + b for a, b in zip(y, z)])
            if val < best[2]:
                best = (name, parts, val)
        name, parts, _ = best
        if parts is None:
            return DualState(state.parts, state.t + 1, n), name, cut, stats
        new = tuple(tuple(a + b for a, b in zip(p, q)) for p, q in zip(state.parts, parts))
        return DualState(new, state.t + 1, n), name, cut, stats


def choose_scale(norm: NormalizedInstance, alpha, zeta) -> int:
    """Power of two making the dual lattice fine enough for accuracy ``zeta``."""
    n = norm.n
    pen = norm.penalty
    fmax = sum(max(o.table()) for o in norm.oracles)
    xbound = float(max(abs(a) for a in pen.a)) + 2 * n * fmax / float(pen.sigma)
    lattice = 4 * n + sum(len(o.support) ** 2 for o in norm.oracles)
    need = max(2 * float(alpha) * lattice * (xbound + 1) / zeta, lattice / float(pen.sigma), 1.0)
    return 1 << max(0, math.ceil(math.log2(need)))


def iteration_bound(alpha, surrogate, zeta) -> int:
    if surrogate <= zeta:
        return 0
    return math.ceil(float(alpha) * math.log(float(surrogate) / zeta))


def solve(oracles: Sequence[SubmodularOracle], penalty: QuadraticPenalty, epsilon,
          keep_history: bool = True, check_feasibility: bool = False) -> SolveResult:
    epsilon = float(epsilon)
    if not epsilon > 0 or not math.isfinite(epsilon):
        raise ValueError("epsilon must be a positive finite number")
    norm = normalize_instance(oracles, penalty)
    n = norm.n
    pen = norm.penalty
    alpha = max([approximation_factor(len(o.support)) for o in norm.oracles],
                default=Fraction(1))
    fmax = sum(max(o.table()) for o in norm.oracles)
    zeta = invert_error_budget(epsilon / 2, fmax, n, pen.smoothness, pen.sigma)
    delta = error_budget(zeta, fmax, n, pen.smoothness, pen.sigma)
    surrogate = pen.total_conjugate([0] * n) + pen.total([0] * n)
    T = iteration_bound(alpha, surrogate, zeta)
    D = choose_scale(norm, alpha, zeta)
    prob = _Problem(norm, D)
    zeta_scaled = Fraction(zeta) * D

    state = DualState(tuple(tuple([0] * n) for _ in norm.oracles), 0, n)
    obj = prob.objective(state.y)
    cert = prob.certificate(state.y)
    trace = [obj / D]
    history = []
    final_cut = None
    while state.t < T and cert > zeta_scaled:
        state, path, final_cut, stats = prob.step(state)
        obj = prob.objective(state.y)
        cert = prob.certificate(state.y)
        trace.append(obj / D)
        if keep_history:
            history.append(IterationRecord(obj / D, cert / D, state.parts, path, stats))
        if check_feasibility:
            for o, p in zip(prob.base, state.parts):
                assert in_base_polytope(o, p), "iterate left the base polytope"
        if path == "none":
            break

    y_scaled = [v + D * s for v, s in zip(state.y, norm.total_shift)]
    y = [Fraction(v, D) for v in y_scaled]
    decomposition = [[v + D * s for v, s in zip(p, w)]
                     for p, w in zip(state.parts, norm.shift_vectors)]
    x = dual_to_primal(y, penalty)
    return SolveResult(x=x, y=y, y_scaled=y_scaled, decomposition=decomposition, scale=D,
                       constant_offset=norm.constant_offset, trace=trace, delta=delta,
                       zeta=zeta, epsilon=epsilon, iterations=state.t, iteration_bound=T,
                       alpha=alpha, certificate=cert / D, history=history,
                       final_cut=final_cut, normalized=norm)


def progress_step(state: DualState, norm: NormalizedInstance, scale: int = 1) -> DualState:
    """One dual step on a normalized instance at lattice scale ``scale``."""
    return _Problem(norm, scale).step(state)[0]
