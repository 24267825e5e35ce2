"""Smith normal form over the integers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd
from typing import Optional

from .linalg import IntMatrix, _as_int_matrix, det_rational, identity

__all__ = [
    "SmithDecomposition",
    "smith_normal_form",
    "determinantal_factors",
    "minor_gcd_oracle",
    "is_smith_form",
    "MINOR_CAP",
]

MINOR_CAP = 10**6


@dataclass(frozen=True)
class SmithDecomposition:
    """Invariant factors ``d`` of an integer matrix.

    When transforms were requested, ``P @ M @ Q`` equals the
    ``rows x cols`` matrix with ``d`` on its diagonal, and ``P`` and ``Q``
    are unimodular.
    """

    d: tuple[int, ...]
    shape: tuple[int, int]
    P: Optional[IntMatrix] = None
    Q: Optional[IntMatrix] = None

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)

    def rank_mod(self, p: int) -> int:
        """Rank over the field with ``p`` elements (``p`` prime)."""
        return sum(1 for x in self.d if x % p != 0)

    def diagonal(self) -> IntMatrix:
        rows, cols = self.shape
        D = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(self.d):
            D[i][i] = x
        return IntMatrix(D, cols=cols)

    def determinantal_factors(self) -> list[int]:
        return determinantal_factors(self)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for x in self.d:
            out[x] = out.get(x, 0) + 1
        return out


def is_smith_form(d) -> bool:
    """Nonnegative with ``d[i] | d[i+1]`` (``0 | 0`` allowed)."""
    if any(x < 0 for x in d):
        return False
    for a, b in zip(d, d[1:]):
        if a == 0:
            if b != 0:
                return False
        elif b % a:
            return False
    return True


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


class _Work:
    """Mutable working copy; mirrors row ops into P and column ops into Q."""

    def __init__(self, M: IntMatrix, keep: bool):
        self.a = M.tolist()
        self.m, self.n = M.shape
        self.P = identity(self.m).tolist() if keep else None
        self.Q = identity(self.n).tolist() if keep else None

    def swap_rows(self, i, j):
        if i == j:
            return
        a = self.a
        a[i], a[j] = a[j], a[i]
        if self.P is not None:
            self.P[i], self.P[j] = self.P[j], self.P[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for r in self.a:
            r[i], r[j] = r[j], r[i]
        if self.Q is not None:
            for r in self.Q:
                r[i], r[j] = r[j], r[i]

    def add_row(self, dst, src, k):
        # row[dst] += k * row[src]
        for mat in (self.a, self.P):
            if mat is not None:
                rd, rs = mat[dst], mat[src]
                for c, x in enumerate(rs):
                    if x:
                        rd[c] += k * x

    def add_col(self, dst, src, k):
        for mat in (self.a, self.Q):
            if mat is not None:
                for r in mat:
                    if r[src]:
                        r[dst] += k * r[src]

    def negate_row(self, i):
        for mat in (self.a, self.P):
            if mat is not None:
                mat[i] = [-x for x in mat[i]]

    def combine_rows(self, i, j, s, t, u, v):
        # (row_i, row_j) <- (s row_i + t row_j, u row_i + v row_j)
        for mat in (self.a, self.P):
            if mat is not None:
                ri, rj = mat[i], mat[j]
                mat[i] = [s * x + t * y for x, y in zip(ri, rj)]
                mat[j] = [u * x + v * y for x, y in zip(ri, rj)]

    def combine_cols(self, i, j, s, t, u, v):
        # (col_i, col_j) <- (s col_i + t col_j, u col_i + v col_j)
        for mat in (self.a, self.Q):
            if mat is not None:
                for r in mat:
                    x, y = r[i], r[j]
                    r[i], r[j] = s * x + t * y, u * x + v * y


def _smallest_nonzero(a, t, m, n):
    best = None
    best_abs = 0
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            x = row[j]
            if x and (best is None or abs(x) < best_abs):
                best, best_abs = (i, j), abs(x)
                if best_abs == 1:
                    return best
    return best


def smith_normal_form(M, keep_transforms: bool = False) -> SmithDecomposition:
    """Invariant factors of an integer matrix (rectangular allowed).

    Elimination picks the smallest nonzero entry of the remaining block as
    pivot and clears its row and column by Euclidean reduction. The
    resulting diagonal is then repaired into a divisibility chain with
    2x2 gcd/lcm steps.
    """
    M = _as_int_matrix(M)
    w = _Work(M, keep_transforms)
    a, m, n = w.a, w.m, w.n
    r = 0
    for t in range(min(m, n)):
        piv = _smallest_nonzero(a, t, m, n)
        if piv is None:
            break
        w.swap_rows(t, piv[0])
        w.swap_cols(t, piv[1])
        while True:
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    w.add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    w.add_col(j, t, -(a[t][j] // p))
            # any leftover remainder is smaller than |p|: make it the pivot
            cand = None
            for i in range(t + 1, m):
                if a[i][t] and (cand is None or abs(a[i][t]) < abs(cand[2])):
                    cand = (i, "r", a[i][t])
            for j in range(t + 1, n):
                if a[t][j] and (cand is None or abs(a[t][j]) < abs(cand[2])):
                    cand = (j, "c", a[t][j])
            if cand is None:
                break
            if cand[1] == "r":
                w.swap_rows(t, cand[0])
            else:
                w.swap_cols(t, cand[0])
        if a[t][t] < 0:
            w.negate_row(t)
        r = t + 1

    # divisibility fix-up on the nonzero diagonal
    for i in range(r):
        for j in range(i + 1, r):
            x, y = a[i][i], a[j][j]
            if y % x == 0:
                continue
            g, s, tt = _xgcd(x, y)
            w.combine_rows(i, j, s, tt, -(y // g), x // g)
            w.combine_cols(i, j, 1, 1, -(tt * y // g), s * x // g)
            if a[j][j] < 0:
                w.negate_row(j)

    d = tuple(a[i][i] for i in range(min(m, n)))
    P = IntMatrix(w.P, cols=m) if keep_transforms else None
    Q = IntMatrix(w.Q, cols=n) if keep_transforms else None
    return SmithDecomposition(d=d, shape=(m, n), P=P, Q=Q)


def determinantal_factors(s: SmithDecomposition | tuple[int, ...] | list[int]) -> list[int]:
    """``[Delta_0, Delta_1, ...]`` with ``Delta_0 = 1`` and ``Delta_i = d_1 ... d_i``."""
    d = s.d if isinstance(s, SmithDecomposition) else tuple(s)
    out = [1]
    for x in d:
        out.append(out[-1] * x)
    return out


def minor_gcd_oracle(M, i: int, cap: int = MINOR_CAP) -> int:
    """gcd of all ``i x i`` minors, by exhaustive enumeration.

    Each minor is evaluated by rational Gaussian elimination, so this shares
    no code with the elimination in :func:`smith_normal_form`.
    """
    M = _as_int_matrix(M)
    if not 0 <= i <= min(M.rows, M.cols):
        raise ValueError(f"minor size {i} out of range for {M.rows}x{M.cols}")
    if i == 0:
        return 1
    count = comb(M.rows, i) * comb(M.cols, i)
    if count > cap:
        raise ValueError(f"{count} minors of size {i} exceed the enumeration cap {cap}")
    g = 0
    for rows in combinations(range(M.rows), i):
        for cols in combinations(range(M.cols), i):
            g = gcd(g, det_rational(M.submatrix(rows, cols)))
            if g == 1:
                return 1
    return g
