"""Separable quadratic penalties psi_u(x) = c_u (x - a_u)^2 / 2.

All accessors take a 0-based element position ``u`` and work on ints,
Fractions or floats; exact inputs give exact outputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class PenaltyError(ValueError):
    pass


def _exact(v) -> Fraction:
    if isinstance(v, float):
        raise PenaltyError(f"penalty parameters must be exact rationals, got float {v!r}")
    return Fraction(v)


@dataclass(frozen=True)
class QuadraticPenalty:
    a: tuple
    c: tuple

    def __post_init__(self):
        if len(self.a) != len(self.c):
            raise PenaltyError("offset and curvature vectors differ in length")
        if not self.a:
            raise PenaltyError("empty ground set")
        if any(ci <= 0 for ci in self.c):
            raise PenaltyError("curvatures must be positive")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def sigma(self) -> Fraction:
        return min(self.c)

    @property
    def smoothness(self) -> Fraction:
        return max(self.c)

    @property
    def rho(self) -> Fraction:
        """max_u |psi'_u(0)|."""
        return max(abs(ci * ai) for ai, ci in zip(self.a, self.c))

    def value(self, u: int, t):
        d = t - self.a[u]
        return self.c[u] * d * d / 2

    def derivative(self, u: int, t):
        return self.c[u] * (t - self.a[u])

    def conjugate(self, u: int, z):
        return z * z / (2 * self.c[u]) + self.a[u] * z

    def conjugate_derivative(self, u: int, z):
        return z / self.c[u] + self.a[u]

    def total(self, x: Sequence):
        return sum(self.value(u, x[u]) for u in range(self.n))

    def total_conjugate(self, z: Sequence):
        return sum(self.conjugate(u, z[u]) for u in range(self.n))

    def shifted(self, s: Sequence) -> "QuadraticPenalty":
        """Penalty whose derivative is psi'_u + s_u (moves each offset)."""
        return QuadraticPenalty(
            tuple(ai - Fraction(si) / ci for ai, ci, si in zip(self.a, self.c, s)), self.c)

    def scaled(self, factor) -> "QuadraticPenalty":
        """Curvatures multiplied by ``factor``; offsets unchanged."""
        return QuadraticPenalty(self.a, tuple(ci * factor for ci in self.c))


def make_quadratic(a: Sequence, c: Sequence) -> QuadraticPenalty:
    a = tuple(_exact(v) for v in a)
    c = tuple(_exact(v) for v in c)
    if any(ci <= 0 for ci in c):
        raise PenaltyError("curvatures must be positive")
    return QuadraticPenalty(a, c)


def conjugate_pair_check(p: QuadraticPenalty, samples: int = 1000, seed: int = 0,
                         tol: float = 1e-9) -> bool:
    """Float spot-check of conjugate inversion and Fenchel-Young equality."""
    rng = random.Random(seed)
    a = [float(v) for v in p.a]
    c = [float(v) for v in p.c]
    for _ in range(samples):
        u = rng.randrange(p.n)
        t = rng.uniform(-100.0, 100.0)
        z = c[u] * (t - a[u])
        back = z / c[u] + a[u]
        if abs(back - t) > tol:
            return False
        psi = c[u] * (t - a[u]) ** 2 / 2
        conj = z * z / (2 * c[u]) + a[u] * z
        gap = psi + conj - t * z
        if not (-tol <= gap <= tol):
            return False
    return True
