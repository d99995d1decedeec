"""Brute-force check of thresholded solutions over a grid of alpha values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .oracles import bruteforce_parametric_min, ground_table
from .solver import threshold_set


@dataclass(frozen=True)
class AlphaCheck:
    alpha: Fraction
    chosen: frozenset
    value: Fraction
    optimum: Fraction

    @property
    def excess(self) -> Fraction:
        return self.value - self.optimum


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple
    delta: float

    @property
    def max_excess(self) -> Fraction:
        return max((c.excess for c in self.checks), default=Fraction(0))

    @property
    def passed(self) -> bool:
        return self.max_excess <= Fraction(self.delta)

    @property
    def worst(self) -> AlphaCheck | None:
        return max(self.checks, key=lambda c: c.excess, default=None)


def alpha_grid(lo, hi, count: int) -> list:
    lo, hi = Fraction(lo), Fraction(hi)
    if count < 1:
        raise ValueError("alpha grid needs at least one point")
    if count == 1:
        return [lo]
    return [lo + (hi - lo) * k / (count - 1) for k in range(count)]


def verify_thresholds(oracles: Sequence, penalty, x: Sequence, delta: float,
                      alphas: Sequence) -> VerifyReport:
    table = ground_table(oracles, penalty.n)
    checks = []
    for alpha in alphas:
        alpha = Fraction(alpha)
        chosen = threshold_set(x, alpha)
        mask = sum(1 << (u - 1) for u in chosen)
        value = table[mask] + sum(penalty.derivative(u - 1, alpha) for u in chosen)
        _, best = bruteforce_parametric_min(oracles, penalty, alpha, table=table)
        checks.append(AlphaCheck(alpha, chosen, value, best))
    return VerifyReport(tuple(checks), delta)
