"""Exact integer and GF(2) linear algebra.

Integer matrices hold plain Python ints, so entries never overflow. GF(2)
matrices pack each row into a single int used as a bitset (bit ``j`` is
column ``j``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "BitMatrix",
    "Polynomial",
    "identity",
    "zeros",
    "mat_mul",
    "det_bareiss",
    "det_cofactor",
    "det_rational",
    "det_mod_p",
    "rank_exact",
    "rank_mod_p",
    "charpoly_berkowitz",
    "charpoly_path",
    "charpoly_dynkin",
    "poly_at_matrix",
    "rank_f2",
    "kernel_f2",
    "column_space_f2",
    "intersect_f2",
    "sum_f2",
]


class IntMatrix:
    """Dense, immutable matrix of arbitrary-precision integers."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, data: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row width")
        else:
            width = 0 if cols is None else cols
        self._rows = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntMatrix":
        if not columns:
            return cls([[] for _ in range(rows or 0)])
        return cls(zip(*columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> "IntMatrix":
        if self.rows == 0:
            return IntMatrix([], cols=0)
        return IntMatrix(zip(*self._rows))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def to_numpy(self, dtype=object):
        import numpy as np

        return np.array(self.tolist(), dtype=dtype).reshape(self.rows, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[self._rows[i][j] for j in cols] for i in rows], cols=len(cols))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        return tuple(sum(a * b for a, b in zip(r, v) if a) for r in self._rows)

    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self._rows[i][j]
        return self._rows[key]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self, other)], cols=self.cols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self, other)], cols=self.cols)

    def __mul__(self, k: int) -> "IntMatrix":
        return IntMatrix([[k * a for a in r] for r in self._rows], cols=self.cols)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"


def identity(n: int) -> IntMatrix:
    return IntMatrix([[int(i == j) for j in range(n)] for i in range(n)], cols=n)


def zeros(rows: int, cols: int) -> IntMatrix:
    return IntMatrix([[0] * cols for _ in range(rows)], cols=cols)


def _as_int_matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    if hasattr(M, "tolist"):
        M = M.tolist()
    return IntMatrix(M)


def mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Exact product ``A @ B``."""
    A, B = _as_int_matrix(A), _as_int_matrix(B)
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    bcols = [B.column(j) for j in range(B.cols)]
    return IntMatrix(
        [[sum(a * b for a, b in zip(r, c) if a) for c in bcols] for r in A],
        cols=B.cols,
    )


def _require_square(M: IntMatrix) -> None:
    if not M.is_square():
        raise ValueError(f"expected a square matrix, got {M.rows}x{M.cols}")


def det_bareiss(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    The pivot is the first nonzero entry at or below the diagonal in the
    current column; every row swap flips the sign.
    """
    M = _as_int_matrix(M)
    _require_square(M)
    n = M.rows
    if n == 0:
        return 1
    a = M.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_cofactor(M: IntMatrix) -> int:
    """Determinant by Laplace expansion along the first row.

    Exponential cost; meant as a brute-force reference for small matrices.
    """
    M = _as_int_matrix(M)
    _require_square(M)

    def rec(rows: tuple[tuple[int, ...], ...]) -> int:
        if not rows:
            return 1
        if len(rows) == 1:
            return rows[0][0]
        total = 0
        for j, a in enumerate(rows[0]):
            if a:
                minor = tuple(r[:j] + r[j + 1:] for r in rows[1:])
                total += (-1) ** j * a * rec(minor)
        return total

    return rec(tuple(M))


def det_rational(M: IntMatrix) -> int:
    """Determinant by Gaussian elimination over the rationals."""
    M = _as_int_matrix(M)
    _require_square(M)
    n = M.rows
    a = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    assert det.denominator == 1
    return int(det)


def det_mod_p(M: IntMatrix, p: int) -> int:
    """Determinant modulo a prime ``p``, in ``[0, p)``."""
    M = _as_int_matrix(M)
    _require_square(M)
    n = M.rows
    a = [[x % p for x in r] for r in M]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k] % p
        inv = pow(a[k][k], -1, p)
        for i in range(k + 1, n):
            f = a[i][k] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return det % p


def rank_mod_p(M: IntMatrix, p: int) -> int:
    """Rank over the prime field with ``p`` elements."""
    M = _as_int_matrix(M)
    if p == 2:
        return rank_f2(BitMatrix.from_int_matrix(M))
    a = [[x % p for x in r] for r in M]
    rank = 0
    for col in range(M.cols):
        piv = next((i for i in range(rank, M.rows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, p)
        for i in range(rank + 1, M.rows):
            f = a[i][col] * inv % p
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def rank_exact(M: IntMatrix) -> int:
    """Rank over the rationals, via fraction-free elimination."""
    M = _as_int_matrix(M)
    a = M.tolist()
    rank = 0
    prev = 1
    for col in range(M.cols):
        piv = next((i for i in range(rank, M.rows) if a[i][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, M.rows):
            f = a[i][col]
            a[i] = [(p * x - f * y) // prev for x, y in zip(a[i], a[rank])]
        prev = p
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of ``x**i``.

    Trailing zeros are stripped on construction so the zero polynomial is
    always ``Polynomial(())``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def mod(self, p: int) -> "Polynomial":
        return Polynomial(tuple(c % p for c in self.coeffs))

    def shift(self, k: int) -> "Polynomial":
        """Multiply by ``x**k``."""
        if self.is_zero():
            return self
        return Polynomial((0,) * k + self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return Polynomial(tuple(other * c for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def charpoly_berkowitz(M: IntMatrix) -> Polynomial:
    """Characteristic polynomial ``det(xI - M)`` without division.

    Samuelson-Berkowitz: the coefficient vector of the leading ``k x k``
    principal block is obtained from the ``(k-1) x (k-1)`` one by a
    lower-triangular Toeplitz matrix built from ``R A^i C``.
    """
    M = _as_int_matrix(M)
    _require_square(M)
    n = M.rows
    a = M.tolist()
    # descending coefficients of the current block's charpoly
    v = [1]
    for k in range(n):
        # block a[:k][:k], new row R = a[k][:k], new column C = a[:k][k]
        R = a[k][:k]
        col = [a[i][k] for i in range(k)]
        toeplitz = [1, -a[k][k]]
        w = col
        for _ in range(k):
            toeplitz.append(-sum(r * x for r, x in zip(R, w)))
            w = [sum(a[i][j] * w[j] for j in range(k) if a[i][j]) for i in range(k)]
        # new vector has length k + 2: (T @ v) with T of shape (k+2) x (k+1)
        v = [
            sum(toeplitz[i - j] * v[j] for j in range(min(i, k) + 1))
            for i in range(k + 2)
        ]
    return Polynomial(tuple(reversed(v)))


def charpoly_path(n: int) -> Polynomial:
    """Characteristic polynomial of the ``n``-vertex path.

    Uses ``rho_n = x rho_{n-1} - rho_{n-2}`` with ``rho_0 = 1``, ``rho_1 = x``.
    """
    if n < 1:
        raise ValueError(f"path needs at least one vertex, got n={n}")
    prev, cur = Polynomial.const(1), Polynomial.x()
    for _ in range(n - 1):
        prev, cur = cur, cur.shift(1) - prev
    return cur


def charpoly_dynkin(n: int) -> Polynomial:
    """Characteristic polynomial of D_n as ``x rho_{n-1} - x rho_{n-3}``."""
    if n < 4:
        raise ValueError(f"D_n is defined for n >= 4, got n={n}")
    return (charpoly_path(n - 1) - charpoly_path(n - 3)).shift(1)


def poly_at_matrix(f: Polynomial, M: IntMatrix) -> IntMatrix:
    """Evaluate ``f(M)`` by Horner's rule."""
    M = _as_int_matrix(M)
    _require_square(M)
    n = M.rows
    acc = zeros(n, n)
    eye = identity(n)
    for c in reversed(f.coeffs):
        acc = mat_mul(acc, M) + eye * c
    return acc


# ---------------------------------------------------------------------------
# GF(2)


class BitMatrix:
    """Matrix over GF(2) with each row packed into an int."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, rows: Iterable[int], cols: int):
        mask = (1 << cols) - 1
        packed = tuple(int(r) for r in rows)
        if any(r < 0 or r & ~mask for r in packed):
            raise ValueError(f"row has bits beyond column {cols}")
        self._rows = packed
        self.rows = len(packed)
        self.cols = cols

    @classmethod
    def from_int_matrix(cls, M) -> "BitMatrix":
        M = _as_int_matrix(M)
        return cls((sum(1 << j for j, x in enumerate(r) if x & 1) for r in M), M.cols)

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], dim: int) -> "BitMatrix":
        """Stack 0/1 vectors of length ``dim`` as rows."""
        rows = []
        for v in vectors:
            if len(v) != dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {dim}")
            rows.append(pack_bits(v))
        return cls(rows, dim)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def packed_rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def T(self) -> "BitMatrix":
        cols = [0] * self.cols
        for i, r in enumerate(self._rows):
            while r:
                low = r & -r
                j = low.bit_length() - 1
                cols[j] |= 1 << i
                r ^= low
        return BitMatrix(cols, self.rows)

    def to_int_matrix(self) -> IntMatrix:
        return IntMatrix([unpack_bits(r, self.cols) for r in self._rows], cols=self.cols)

    def vectors(self) -> list[tuple[int, ...]]:
        return [tuple(unpack_bits(r, self.cols)) for r in self._rows]

    def apply(self, v: int) -> int:
        """Product with a packed column vector, returned packed."""
        out = 0
        for i, r in enumerate(self._rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __getitem__(self, key):
        i, j = key
        return (self._rows[i] >> j) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.cols, self._rows))

    def __repr__(self) -> str:
        body = "\n ".join("".join(str((r >> j) & 1) for j in range(self.cols)) for r in self._rows)
        return f"BitMatrix({self.rows}x{self.cols}\n {body})"


def pack_bits(v: Sequence[int]) -> int:
    return sum(1 << j for j, x in enumerate(v) if int(x) & 1)


def unpack_bits(r: int, n: int) -> list[int]:
    return [(r >> j) & 1 for j in range(n)]


def _rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form in place; returns (nonzero rows, pivot columns)."""
    rows = list(rows)
    pivots = []
    r = 0
    for col in range(ncols):
        bit = 1 << col
        piv = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= pr
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_f2(M: BitMatrix) -> int:
    """Rank over GF(2)."""
    if not isinstance(M, BitMatrix):
        M = BitMatrix.from_int_matrix(M)
    return len(_rref(list(M.packed_rows), M.cols)[1])


def kernel_f2(M: BitMatrix) -> BitMatrix:
    """Basis of the right kernel ``{x : Mx = 0}``, one vector per row."""
    if not isinstance(M, BitMatrix):
        M = BitMatrix.from_int_matrix(M)
    rows, pivots = _rref(list(M.packed_rows), M.cols)
    pivset = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivset:
            continue
        v = 1 << free
        for r, pc in zip(rows, pivots):
            if (r >> free) & 1:
                v |= 1 << pc
        basis.append(v)
    return BitMatrix(basis, M.cols)


def column_space_f2(M: BitMatrix) -> BitMatrix:
    """Basis of the column span, one vector (of length ``M.rows``) per row."""
    if not isinstance(M, BitMatrix):
        M = BitMatrix.from_int_matrix(M)
    rows, _ = _rref(list(M.T.packed_rows), M.rows)
    return BitMatrix(rows, M.rows)


def sum_f2(U: BitMatrix, V: BitMatrix) -> BitMatrix:
    """Basis of ``U + V``."""
    if U.cols != V.cols:
        raise ValueError(f"ambient dimensions differ: {U.cols} vs {V.cols}")
    rows, _ = _rref(list(U.packed_rows) + list(V.packed_rows), U.cols)
    return BitMatrix(rows, U.cols)


def intersect_f2(U: BitMatrix, V: BitMatrix) -> BitMatrix:
    """Basis of ``span(U) & span(V)`` by the Zassenhaus algorithm.

    Rows ``(u, u)`` and ``(v, 0)`` are reduced with the first block taking
    pivot priority; rows whose first block vanishes carry the intersection.
    """
    if U.cols != V.cols:
        raise ValueError(f"ambient dimensions differ: {U.cols} vs {V.cols}")
    d = U.cols
    stacked = [u | (u << d) for u in U.packed_rows] + list(V.packed_rows)
    rows, _ = _rref(stacked, 2 * d)
    low = (1 << d) - 1
    basis = [r >> d for r in rows if r & low == 0]
    return BitMatrix(basis, d)

