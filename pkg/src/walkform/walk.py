"""Walk matrices ``[e, Ae, ..., A^(m-1) e]``."""

from __future__ import annotations

from .graphs import Graph, dynkin_d
from .linalg import BitMatrix, IntMatrix, _as_int_matrix, rank_f2

__all__ = [
    "WalkMatrix",
    "walk_columns",
    "walk_matrix",
    "walk_matrix_of_matrix",
    "truncated_walk_dynkin",
    "rank2_walk",
]


class WalkMatrix(IntMatrix):
    """An :class:`IntMatrix` that remembers where it came from.

    ``source`` is ``"graph"`` or ``"matrix"``.
    """

    __slots__ = ("source",)

    def __init__(self, data, cols=None, source: str = "matrix"):
        super().__init__(data, cols=cols)
        self.source = source


def walk_columns(M, count: int) -> list[tuple[int, ...]]:
    """The vectors ``e, Me, ..., M^(count-1) e`` by repeated mat-vec."""
    M = _as_int_matrix(M)
    if not M.is_square():
        raise ValueError(f"walk matrix needs a square matrix, got {M.rows}x{M.cols}")
    v = (1,) * M.rows
    cols = []
    for _ in range(count):
        cols.append(v)
        v = M.apply(v)
    return cols


def _from_columns(cols, m, source):
    return WalkMatrix([[c[i] for c in cols] for i in range(m)], cols=len(cols), source=source)


def walk_matrix_of_matrix(M) -> WalkMatrix:
    """``W(M) = [e, Me, ..., M^(m-1) e]`` for a square integer matrix."""
    M = _as_int_matrix(M)
    return _from_columns(walk_columns(M, M.rows), M.rows, "matrix")


def walk_matrix(G: Graph) -> WalkMatrix:
    """Walk matrix of a graph; entry ``(i, j)`` counts walks of length ``j`` from ``i``."""
    A = G.adjacency_matrix()
    return _from_columns(walk_columns(A, G.n), G.n, "graph")


def truncated_walk_dynkin(n: int) -> IntMatrix:
    """``[e, Ae, ..., A^(n-3) e]`` for D_n with first and last rows removed."""
    if n < 4 or n % 4:
        raise ValueError(f"truncated walk matrix needs 4 | n and n >= 4, got n={n}")
    cols = walk_columns(dynkin_d(n).adjacency_matrix(), n - 2)
    return IntMatrix([[c[i] for c in cols] for i in range(1, n - 1)], cols=n - 2)


def rank2_walk(G: Graph) -> int:
    """Rank of ``W(G)`` over GF(2).

    Works on reduced columns throughout, so no big integers are formed.
    """
    A = BitMatrix.from_int_matrix(G.adjacency_matrix())
    v = (1 << G.n) - 1
    cols = []
    for _ in range(G.n):
        cols.append(v)
        v = A.apply(v)
    # rows of this matrix are the columns of W mod 2
    return rank_f2(BitMatrix(cols, G.n))
