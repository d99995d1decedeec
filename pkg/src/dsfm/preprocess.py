"""Normalization of a decomposable instance.

Each F_i is replaced by a residual G_i(S) = F_i(S) - F_i(empty) - w_i(S)
where w_i is the greedy vertex of F_i - F_i(empty) for the zero direction.
G_i is non-negative and vanishes on the empty set and on its support. The
linear parts are absorbed into the penalty, so for every A and alpha

    F_alpha(A) = sum_i G_i(A) + sum_{u in A} (psi'_u(alpha) + s_u) + offset

with s = sum_i w_i and offset = sum_i F_i(empty).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .oracles import (OracleError, ResidualOracle, SubmodularOracle, MAX_EXHAUSTIVE_SUPPORT,
                      greedy_base_vertex, is_submodular_bruteforce)
from .penalties import QuadraticPenalty


@dataclass(frozen=True)
class NormalizedInstance:
    oracles: tuple
    shift_vectors: tuple
    constant_offset: int
    penalty: QuadraticPenalty
    original_penalty: QuadraticPenalty

    @property
    def n(self) -> int:
        return self.penalty.n

    @property
    def total_shift(self) -> list:
        s = [0] * self.n
        for w in self.shift_vectors:
            for k, v in enumerate(w):
                s[k] += v
        return s

    def objective(self, A, alpha):
        """Normalized objective; add ``constant_offset`` to recover F_alpha(A)."""
        A = frozenset(A)
        s = self.total_shift
        return (sum(o(A) for o in self.oracles)
                + sum(self.original_penalty.derivative(u - 1, alpha) + s[u - 1] for u in A))


def check_instance(oracles: Sequence[SubmodularOracle], n: int) -> None:
    for i, o in enumerate(oracles):
        if any(u > n for u in o.support):
            raise OracleError(f"function {i} has support {o.support} outside 1..{n}")
        if len(o.support) <= MAX_EXHAUSTIVE_SUPPORT and not is_submodular_bruteforce(o):
            raise OracleError(f"function {i} is not submodular")


def normalize_instance(oracles: Sequence[SubmodularOracle],
                       penalty: QuadraticPenalty) -> NormalizedInstance:
    n = penalty.n
    check_instance(oracles, n)
    zero = [0] * n
    normalized = []
    shifts = []
    offset = 0
    for o in oracles:
        empty = o(())
        centered = ResidualOracle(o, offset=empty)
        w = greedy_base_vertex(centered, zero)
        normalized.append(ResidualOracle(o, shift={u: w[u - 1] for u in o.support},
                                         offset=empty))
        shifts.append(tuple(w))
        offset += empty
    total = [sum(w[k] for w in shifts) for k in range(n)]
    return NormalizedInstance(tuple(normalized), tuple(shifts), offset,
                              penalty.shifted(total), penalty)
