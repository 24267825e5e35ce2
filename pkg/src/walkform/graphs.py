"""Simple undirected graphs: the Dynkin family D_n, paths, random graphs, graph6.

Vertices are 0-based internally. In the D_n labeling, vertex ``v`` here is
vertex ``v + 1`` of the usual 1-based picture: the two pendant vertices are
0 and 1, both attached to vertex 2, and vertices 2, 3, ..., n-1 form a path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .linalg import IntMatrix

__all__ = [
    "MAX_VERTICES",
    "Graph",
    "dynkin_d",
    "path",
    "complete",
    "random_graph",
    "parse_graph6",
    "emit_graph6",
]

MAX_VERTICES = 4096


@dataclass(frozen=True)
class Graph:
    """An immutable simple graph on vertices ``0..n-1``.

    ``edges`` holds pairs ``(i, j)`` with ``i < j``; the constructor
    normalizes orientation and rejects loops.
    """

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(edges))

    @classmethod
    def from_adjacency(cls, A) -> "Graph":
        rows = A.tolist() if hasattr(A, "tolist") else [list(r) for r in A]
        n = len(rows)
        edges = set()
        for i in range(n):
            if rows[i][i]:
                raise ValueError(f"nonzero diagonal at {i}")
            for j in range(i + 1, n):
                if bool(rows[i][j]) != bool(rows[j][i]):
                    raise ValueError(f"adjacency not symmetric at ({i}, {j})")
                if rows[i][j]:
                    edges.add((i, j))
        return cls(n, frozenset(edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def neighbors(self, v: int) -> list[int]:
        return sorted({j for e in self.edges if v in e for j in e if j != v})

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return tuple(deg)

    def adjacency_matrix(self) -> IntMatrix:
        a = [[0] * self.n for _ in range(self.n)]
        for i, j in self.edges:
            a[i][j] = a[j][i] = 1
        return IntMatrix(a, cols=self.n)

    def relabel(self, perm) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        return Graph(self.n, frozenset((perm[i], perm[j]) for i, j in self.edges))


def dynkin_d(n: int) -> Graph:
    """The Dynkin tree D_n (n >= 4)."""
    if n < 4:
        raise ValueError(f"D_n needs n >= 4, got {n}")
    if n > MAX_VERTICES:
        raise ValueError(f"n={n} exceeds the {MAX_VERTICES}-vertex cap")
    edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)]
    return Graph(n, frozenset(edges))


def path(n: int) -> Graph:
    """The path P_n on ``n`` vertices."""
    if n < 1:
        raise ValueError(f"path needs n >= 1, got {n}")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    return Graph(n, frozenset(combinations(range(n), 2)))


def random_graph(n: int, p: float | Fraction, seed: int) -> Graph:
    """Erdos-Renyi G(n, p), reproducible from ``seed``."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= p <= 1:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    rng = random.Random(seed)
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return Graph(n, frozenset(edges))


# graph6: https://users.cecs.anu.edu.au/~bdm/data/formats.txt

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def _six_bit_values(text: str) -> list[int]:
    out = []
    for pos, ch in enumerate(text):
        v = ord(ch) - 63
        if not 0 <= v <= 63:
            raise ValueError(f"invalid graph6 character {ch!r} at offset {pos}")
        out.append(v)
    return out


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph in graph6 format (optional ``>>graph6<<`` header)."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    text = text.strip()
    if text.startswith(_HEADER):
        text = text[len(_HEADER):]
    if not text:
        raise ValueError("empty graph6 string")
    vals = _six_bit_values(text)
    if vals[0] == 63:
        if len(vals) >= 2 and vals[1] == 63:
            if len(vals) < 8:
                raise ValueError("truncated graph6 size field")
            n = 0
            for v in vals[2:8]:
                n = (n << 6) | v
            body = vals[8:]
        else:
            if len(vals) < 4:
                raise ValueError("truncated graph6 size field")
            n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
            body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    if n > MAX_VERTICES:
        raise ValueError(f"graph6 encodes n={n}, above the {MAX_VERTICES}-vertex cap")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) < need:
        raise ValueError(f"truncated graph6 data: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise ValueError(f"trailing graph6 data: expected {need} bytes, got {len(body)}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, frozenset(edges))


def emit_graph6(G: Graph) -> str:
    """Encode ``G`` in graph6 format, without header or newline."""
    bits = [int(G.has_edge(i, j)) for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chunks = []
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        chunks.append(chr(v + 63))
    return _encode_n(G.n) + "".join(chunks)
