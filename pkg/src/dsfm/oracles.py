"""Submodular set-function oracles and exhaustive reference routines.

Elements of the ground set are the integers 1..n. Vectors over the ground
set (``SetVector``) are plain sequences of length n where position ``u - 1``
holds the entry for element ``u``.

Every oracle has a declared ``support`` and evaluates ``F(S & support)``.
Oracles are immutable; ``table()`` caches the full value table indexed by
the bitmask of a subset of the support (bit ``k`` <-> ``support[k]``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

MAX_TABLE_SUPPORT = 20
MAX_EXHAUSTIVE_SUPPORT = 12
MAX_BRUTEFORCE_N = 20


class OracleError(ValueError):
    """Raised for malformed oracles or out-of-range queries."""


class SubmodularOracle:
    """Base class. Subclasses implement ``_value(mask)`` over support bitmasks."""

    kind = "abstract"

    def __init__(self, support: Iterable[int]):
        support = tuple(support)
        if len(set(support)) != len(support):
            raise OracleError(f"duplicate elements in support {support}")
        if any((not isinstance(u, int)) or u < 1 for u in support):
            raise OracleError(f"support elements must be positive integers: {support}")
        if len(support) > MAX_TABLE_SUPPORT:
            raise OracleError(f"support of size {len(support)} exceeds {MAX_TABLE_SUPPORT}")
        self.support = support
        self._index = {u: k for k, u in enumerate(support)}

    def _value(self, mask: int):
        raise NotImplementedError

    @cached_property
    def _table(self) -> tuple:
        return tuple(self._value(m) for m in range(1 << len(self.support)))

    def table(self) -> tuple:
        return self._table

    def mask_of(self, S: Iterable[int]) -> int:
        m = 0
        for u in S:
            k = self._index.get(u)
            if k is not None:
                m |= 1 << k
        return m

    def set_of(self, mask: int) -> frozenset:
        return frozenset(u for k, u in enumerate(self.support) if mask >> k & 1)

    def __call__(self, S: Iterable[int]):
        return self._table[self.mask_of(S)]

    @property
    def max_value(self):
        return max(self._table)

    def __repr__(self):
        return f"{type(self).__name__}(support={self.support})"


class TableOracle(SubmodularOracle):
    """Explicit truth table over the 2^|support| subsets of the support."""

    kind = "table"

    def __init__(self, support: Iterable[int], values: Sequence[int]):
        super().__init__(support)
        if len(values) != 1 << len(self.support):
            raise OracleError(
                f"table needs {1 << len(self.support)} values, got {len(values)}")
        for v in values:
            if int(v) != v:
                raise OracleError(f"table values must be integers, got {v!r}")
        self.values = tuple(int(v) for v in values)

    def _value(self, mask):
        return self.values[mask]


class HyperedgeCutOracle(SubmodularOracle):
    """``weight`` if the set splits the hyperedge (its support), else 0."""

    kind = "hyperedge_cut"

    def __init__(self, support: Iterable[int], weight: int):
        super().__init__(support)
        if int(weight) != weight or weight < 0:
            raise OracleError(f"hyperedge weight must be a non-negative integer, got {weight!r}")
        self.weight = int(weight)

    def _value(self, mask):
        full = (1 << len(self.support)) - 1
        return self.weight if 0 < mask < full else 0


class DirectedCutOracle(SubmodularOracle):
    """Directed cut function of a small weighted digraph on the support.

    ``arcs`` is a sequence of ``(u, v, capacity)``; F(S) sums capacities of
    arcs leaving S.
    """

    kind = "directed_edge"

    def __init__(self, support: Iterable[int], arcs: Iterable[tuple]):
        super().__init__(support)
        self.arcs = tuple((u, v, int(c)) for u, v, c in arcs)
        for u, v, c in self.arcs:
            if u not in self._index or v not in self._index or u == v:
                raise OracleError(f"arc {(u, v)} must join distinct support elements")
            if c < 0:
                raise OracleError(f"arc capacity must be non-negative, got {c}")

    def _value(self, mask):
        idx = self._index
        return sum(c for u, v, c in self.arcs
                   if mask >> idx[u] & 1 and not mask >> idx[v] & 1)


class ResidualOracle(SubmodularOracle):
    """``scale * base(S) - offset - shift(S)``.

    ``shift`` maps support elements to integers; ``scale`` is a positive
    integer used to move an instance onto a finer dual lattice.
    """

    kind = "residual"

    def __init__(self, base: SubmodularOracle, shift=None, offset=0, scale=1):
        super().__init__(base.support)
        self.base = base
        self.shift = {u: int((shift or {}).get(u, 0)) for u in base.support}
        self.offset = int(offset)
        self.scale = int(scale)
        if self.scale < 1:
            raise OracleError("scale must be a positive integer")

    @cached_property
    def _table(self) -> tuple:
        base = self.base.table()
        coef = [self.shift[u] for u in self.support]
        out = []
        for m, v in enumerate(base):
            s = 0
            k = 0
            mm = m
            while mm:
                if mm & 1:
                    s += coef[k]
                mm >>= 1
                k += 1
            out.append(self.scale * v - self.offset - s)
        return tuple(out)


def _check_set(S: Iterable[int], n: int | None) -> frozenset:
    S = frozenset(S)
    for u in S:
        if not isinstance(u, int) or u < 1 or (n is not None and u > n):
            raise OracleError(f"element id {u!r} out of range")
    return S


def evaluate(oracle: SubmodularOracle, S: Iterable[int], n: int | None = None):
    """F(S & support). ``n`` optionally bounds valid element ids."""
    return oracle(_check_set(S, n))


def is_submodular_bruteforce(oracle: SubmodularOracle) -> bool:
    k = len(oracle.support)
    if k > MAX_EXHAUSTIVE_SUPPORT:
        raise OracleError(f"support of size {k} too large for exhaustive check")
    t = oracle.table()
    size = 1 << k
    # Local form: F(A+u) + F(A+v) >= F(A+u+v) + F(A) is equivalent to the
    # pairwise inequality and needs only O(k^2 2^k) comparisons.
    for a in range(size):
        for i in range(k):
            bi = 1 << i
            if a & bi:
                continue
            for j in range(i + 1, k):
                bj = 1 << j
                if a & bj:
                    continue
                if t[a | bi] + t[a | bj] < t[a | bi | bj] + t[a]:
                    return False
    return True


def greedy_order(support: Sequence[int], x: Sequence) -> list:
    """Support sorted by x descending, ties by ascending element id."""
    return sorted(support, key=lambda u: (-x[u - 1], u))


def greedy_base_vertex(oracle: SubmodularOracle, x: Sequence, order=None) -> list:
    """Greedy vertex of B(F) for direction ``x`` as a length-n list.

    Entries outside the support are 0. ``order`` overrides the sort when a
    specific permutation of the support is wanted.
    """
    n = len(x)
    if order is None:
        order = greedy_order(oracle.support, x)
    t = oracle.table()
    w = [0] * n
    mask = 0
    prev = t[0]
    for u in order:
        mask |= 1 << oracle._index[u]
        cur = t[mask]
        w[u - 1] = cur - prev
        prev = cur
    return w


def lovasz_extension(oracle: SubmodularOracle, x: Sequence):
    w = greedy_base_vertex(oracle, x)
    return sum(wi * xi for wi, xi in zip(w, x) if wi)


def level_set_integral(oracle: SubmodularOracle, x: Sequence):
    """Lovasz extension through the sorted level-set sum (independent path)."""
    order = greedy_order(oracle.support, x)
    if not order:
        return 0
    base = oracle(())
    vals = [x[u - 1] for u in order]
    total = 0
    for k in range(len(order)):
        nxt = vals[k + 1] if k + 1 < len(order) else 0
        total += (oracle(order[:k + 1]) - base) * (vals[k] - nxt)
    return total


def in_base_polytope(oracle: SubmodularOracle, w: Sequence) -> bool:
    """Exhaustive membership of the n-vector ``w`` in B(F)."""
    sup = oracle.support
    idx = set(sup)
    if any(w[i] != 0 for i in range(len(w)) if (i + 1) not in idx):
        return False
    t = oracle.table()
    coef = [w[u - 1] for u in sup]
    for m in range(1 << len(sup)):
        s = sum(coef[k] for k in range(len(sup)) if m >> k & 1)
        if s > t[m]:
            return False
    return sum(coef) == t[-1]


def _sort_key(mask: int, support) -> tuple:
    elems = sorted(u for k, u in enumerate(support) if mask >> k & 1)
    return (len(elems), elems)


def minimize_with_linear(oracle: SubmodularOracle, w: Sequence | None = None,
                         forced_in: int | None = None, forced_out: int | None = None):
    """Exhaustive minimizer of F(A) + w(A) over subsets of the support.

    ``w`` is a length-n vector or None for zero. Ties prefer smaller
    cardinality, then the lexicographically smallest sorted element tuple.
    """
    sup = oracle.support
    if forced_in is not None and forced_in == forced_out:
        raise OracleError("forced_in and forced_out coincide")
    for u in (forced_in, forced_out):
        if u is not None and u not in oracle._index:
            raise OracleError(f"forced element {u} outside support {sup}")
    t = oracle.table()
    coef = [w[u - 1] for u in sup] if w is not None else [0] * len(sup)
    need = 0 if forced_in is None else 1 << oracle._index[forced_in]
    ban = 0 if forced_out is None else 1 << oracle._index[forced_out]
    best = None
    best_mask = None
    for m in range(1 << len(sup)):
        if m & need != need or m & ban:
            continue
        val = t[m] + sum(coef[k] for k in range(len(sup)) if m >> k & 1)
        if (best is None or val < best
                or (val == best and _sort_key(m, sup) < _sort_key(best_mask, sup))):
            best, best_mask = val, m
    return oracle.set_of(best_mask), best


def total_value(oracles: Sequence[SubmodularOracle], S: Iterable[int]):
    S = frozenset(S)
    return sum(o(S) for o in oracles)


@lru_cache(maxsize=None)
def _minimality_order(n: int) -> tuple:
    """Ground-set bitmasks by cardinality, then lexicographic element tuple."""
    return tuple(sum(1 << (u - 1) for u in A)
                 for k in range(n + 1) for A in combinations(range(1, n + 1), k))


def ground_table(oracles: Sequence[SubmodularOracle], n: int) -> list:
    """Sum of all oracles on every subset of {1..n}, indexed by bitmask."""
    if n > MAX_BRUTEFORCE_N:
        raise OracleError(f"ground set of size {n} too large for brute force")
    out = [0] * (1 << n)
    for o in oracles:
        t = o.table()
        pos = [u - 1 for u in o.support]
        for m in range(1 << n):
            local = 0
            for k, p in enumerate(pos):
                if m >> p & 1:
                    local |= 1 << k
            out[m] += t[local]
    return out


def _mask_to_set(mask: int) -> frozenset:
    return frozenset(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def bruteforce_parametric_min(oracles: Sequence[SubmodularOracle], penalty, alpha,
                              minimal: bool = True, table: list | None = None):
    """Exhaustive minimizer of F(A) + sum_{u in A} psi'_u(alpha).

    The scan visits sets by cardinality and then lexicographically, so the
    first minimizer found is the inclusion-minimal one (minimizers of a
    submodular function form a lattice). ``minimal=False`` returns the
    largest minimizer instead. ``table`` may carry a precomputed
    ``ground_table`` for repeated calls.
    """
    n = penalty.n
    if table is None:
        table = ground_table(oracles, n)
    slopes = [penalty.derivative(u, alpha) for u in range(n)]
    order = _minimality_order(n)
    if not minimal:
        order = order[::-1]
    best = None
    best_mask = 0
    for m in order:
        val = table[m]
        mm, k = m, 0
        while mm:
            if mm & 1:
                val += slopes[k]
            mm >>= 1
            k += 1
        if best is None or val < best:
            best, best_mask = val, m
    return _mask_to_set(best_mask), best


def parametric_objective(oracles, penalty, A: Iterable[int], alpha):
    A = frozenset(A)
    return total_value(oracles, A) + sum(penalty.derivative(u - 1, alpha) for u in A)


def as_fraction_vector(x: Sequence) -> list:
    return [Fraction(v) for v in x]
