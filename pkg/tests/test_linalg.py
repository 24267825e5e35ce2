import random
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from walkform.graphs import complete, dynkin_d, path, random_graph
from walkform.linalg import (
    BitMatrix,
    IntMatrix,
    Polynomial,
    charpoly_berkowitz,
    charpoly_dynkin,
    charpoly_path,
    column_space_f2,
    det_bareiss,
    det_cofactor,
    det_mod_p,
    det_rational,
    identity,
    intersect_f2,
    kernel_f2,
    mat_mul,
    pack_bits,
    poly_at_matrix,
    rank_exact,
    rank_f2,
    rank_mod_p,
    sum_f2,
    zeros,
)
from walkform.walk import walk_matrix

X = sympy.symbols("x")


def random_int_matrix(rng, rows, cols, lo=-9, hi=9):
    return IntMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def span_size_rank(vectors):
    """GF(2) rank by enumerating the span; independent of any elimination."""
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return len(span).bit_length() - 1


def sympy_charpoly(M):
    return Polynomial(tuple(reversed([int(c) for c in sympy.Matrix(M.tolist()).charpoly(X).all_coeffs()])))


# -- IntMatrix / mat_mul ----------------------------------------------------


def test_mat_mul_examples():
    M = IntMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
    assert mat_mul(identity(3), M) == M
    S = IntMatrix([[0, 1], [2, 0]])
    assert S @ S == IntMatrix([[2, 0], [0, 2]])
    A = dynkin_d(4).adjacency_matrix()
    alpha = IntMatrix([[1], [1], [0], [0]])
    assert (A @ alpha).column(0) == (0, 0, 2, 0)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(ValueError):
        mat_mul(zeros(2, 3), zeros(2, 3))


def test_big_integers_do_not_overflow():
    M = IntMatrix([[2**70, 1], [0, 2**70]])
    assert (M @ M)[0, 0] == 2**140
    assert det_bareiss(M) == 2**140


def test_int_matrix_shape_checks():
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    assert IntMatrix([[1, 2], [3, 4]]).T == IntMatrix([[1, 3], [2, 4]])


# -- determinants -----------------------------------------------------------


def test_det_examples():
    assert det_bareiss(identity(5)) == 1
    assert det_bareiss(IntMatrix([[2, 4], [4, 2]])) == -12
    assert det_bareiss(IntMatrix([[0, 1], [1, 0]])) == -1
    assert det_bareiss(zeros(3, 3)) == 0
    with pytest.raises(ValueError):
        det_bareiss(zeros(2, 3))


def test_det_bareiss_vs_cofactor_6x6():
    rng = random.Random(2024)
    for _ in range(50):
        M = random_int_matrix(rng, 6, 6)
        assert det_bareiss(M) == det_cofactor(M)


def test_det_bareiss_needs_pivoting():
    rng = random.Random(5)
    for _ in range(50):
        # sparse entries force zero pivots
        M = IntMatrix([[rng.choice([0, 0, 0, 1, -2]) for _ in range(5)] for _ in range(5)])
        assert det_bareiss(M) == det_cofactor(M) == det_rational(M)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_det_bareiss_mod_p(p):
    rng = random.Random(p)
    for _ in range(40):
        M = random_int_matrix(rng, 7, 7, -50, 50)
        assert det_bareiss(M) % p == det_mod_p(M, p)


# -- characteristic polynomials ---------------------------------------------


def test_charpoly_examples():
    assert charpoly_berkowitz(zeros(2, 2)) == Polynomial((0, 0, 1))
    assert charpoly_berkowitz(complete(2).adjacency_matrix()) == Polynomial((-1, 0, 1))
    assert charpoly_berkowitz(dynkin_d(4).adjacency_matrix()) == Polynomial((0, 0, -3, 0, 1))
    assert charpoly_path(2) == Polynomial((-1, 0, 1))
    assert charpoly_path(3) == Polynomial((0, -2, 0, 1))
    assert charpoly_dynkin(4) == Polynomial((0, 0, -3, 0, 1))
    with pytest.raises(ValueError):
        charpoly_path(0)
    with pytest.raises(ValueError):
        charpoly_dynkin(3)


def test_charpoly_d4_by_cofactor():
    # det(tI - A) at integer t, compared to the polynomial at t
    A = dynkin_d(4).adjacency_matrix()
    phi = charpoly_dynkin(4)
    for t in range(-4, 5):
        assert det_cofactor(identity(4) * t - A) == phi(t)


@pytest.mark.parametrize("n", range(1, 13))
def test_charpoly_path_matches_berkowitz(n):
    A = path(n).adjacency_matrix()
    assert charpoly_path(n) == charpoly_berkowitz(A) == sympy_charpoly(A)


@pytest.mark.parametrize("n", range(4, 13))
def test_charpoly_dynkin_matches_berkowitz(n):
    A = dynkin_d(n).adjacency_matrix()
    assert charpoly_dynkin(n) == charpoly_berkowitz(A) == sympy_charpoly(A)


@pytest.mark.parametrize("n", range(4, 65, 2))
def test_charpoly_dynkin_low_coefficients_even_n(n):
    phi = charpoly_dynkin(n)
    assert phi.coeff(0) == 0 and phi.coeff(1) == 0
    assert phi.coeff(2) % 2 == 1


def test_berkowitz_random_against_sympy():
    rng = random.Random(11)
    for size in range(1, 8):
        M = random_int_matrix(rng, size, size)
        assert charpoly_berkowitz(M) == sympy_charpoly(M)


@pytest.mark.parametrize("n", range(1, 11))
def test_cayley_hamilton(n):
    A = random_graph(n, 0.5, n).adjacency_matrix()
    assert poly_at_matrix(charpoly_berkowitz(A), A) == zeros(n, n)


def test_odd_index_coefficients_even_on_random_graphs():
    rng = random.Random(99)
    for _ in range(100):
        n = rng.randint(1, 12)
        phi = charpoly_berkowitz(random_graph(n, rng.random(), rng.randrange(10**6)).adjacency_matrix())
        # c_i is the coefficient of x^(n-i)
        assert all(phi.coeff(n - i) % 2 == 0 for i in range(1, n + 1, 2))


def test_polynomial_canonical_form():
    assert Polynomial((0, 0, 0)) == Polynomial(())
    assert Polynomial(()).degree == -1
    assert Polynomial((1, 2, 0)).degree == 1
    assert str(charpoly_dynkin(4)) == "x^4 - 3*x^2"
    assert str(Polynomial((-1, 0, 1))) == "x^2 - 1"
    assert (Polynomial((1, 1)) * Polynomial((-1, 1))) == Polynomial((-1, 0, 1))
    assert Polynomial((1, 2, 3))(2) == 17


# -- exact rank -------------------------------------------------------------


def test_rank_exact_vs_sympy():
    rng = random.Random(3)
    for _ in range(60):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        k = rng.randint(0, min(r, c))
        # product of random r x k and k x c matrices has rank <= k
        M = random_int_matrix(rng, r, k, -3, 3) @ random_int_matrix(rng, k, c, -3, 3) if k else zeros(r, c)
        assert rank_exact(M) == sympy.Matrix(M.tolist()).rank()


def test_rank_mod_p():
    M = IntMatrix([[3, 6], [1, 2]])
    assert rank_mod_p(M, 3) == 1
    assert rank_mod_p(M, 5) == 1
    assert rank_mod_p(IntMatrix([[3, 1], [1, 2]]), 5) == 1
    assert rank_mod_p(IntMatrix([[3, 1], [1, 2]]), 7) == 2


# -- GF(2) ------------------------------------------------------------------


def test_rank_f2_examples():
    assert rank_f2(BitMatrix.from_int_matrix(identity(8))) == 8
    assert rank_f2(BitMatrix.from_int_matrix(IntMatrix([[1] * 4] * 4))) == 1
    assert rank_f2(BitMatrix.from_int_matrix(walk_matrix(dynkin_d(8)))) == 3


def test_bitmatrix_roundtrip():
    rng = random.Random(4)
    M = random_int_matrix(rng, 5, 7)
    B = BitMatrix.from_int_matrix(M)
    assert BitMatrix.from_int_matrix(B.to_int_matrix()) == B
    assert all(B[i, j] == M[i, j] % 2 for i in range(5) for j in range(7))
    assert B.T.T == B


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.randoms(use_true_random=False))
def test_rank_f2_against_span_enumeration(rows, cols, rnd):
    B = BitMatrix([rnd.getrandbits(cols) for _ in range(rows)], cols)
    assert rank_f2(B) == span_size_rank(B.packed_rows) == span_size_rank(B.T.packed_rows)
    assert column_space_f2(B).rows == rank_f2(B)


def test_kernel_examples():
    assert kernel_f2(BitMatrix.from_int_matrix(identity(3))).rows == 0
    ones = BitMatrix.from_int_matrix(IntMatrix([[1] * 3] * 3))
    assert kernel_f2(ones).rows == 2
    for n in (4, 8, 12, 16):
        K = kernel_f2(BitMatrix.from_int_matrix(dynkin_d(n).adjacency_matrix()))
        alpha = pack_bits([1, 1] + [0] * (n - 2))
        beta = pack_bits([i % 2 for i in range(n)])
        assert K.rows == 2
        assert intersect_f2(K, BitMatrix([alpha, beta], n)).rows == 2


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.randoms(use_true_random=False))
def test_kernel_vectors_are_annihilated(rows, cols, rnd):
    B = BitMatrix([rnd.getrandbits(cols) for _ in range(rows)], cols)
    K = kernel_f2(B)
    assert K.rows == cols - rank_f2(B)
    assert rank_f2(K) == K.rows
    assert all(B.apply(v) == 0 for v in K.packed_rows)
    # brute force: the kernel has exactly 2^dim elements
    brute = sum(1 for v in range(1 << cols) if B.apply(v) == 0)
    assert brute == 1 << K.rows


def test_column_space_examples():
    assert column_space_f2(BitMatrix.from_int_matrix(zeros(3, 3))).rows == 0
    assert column_space_f2(BitMatrix.from_int_matrix(walk_matrix(dynkin_d(8)))).rows == 3


def test_column_space_matches_rank_random():
    rng = random.Random(8)
    for _ in range(100):
        r, c = rng.randint(1, 10), rng.randint(1, 10)
        B = BitMatrix([rng.getrandbits(c) for _ in range(r)], c)
        assert column_space_f2(B).rows == rank_f2(B)


def test_intersect_examples():
    e1, e2 = BitMatrix([0b01], 2), BitMatrix([0b10], 2)
    assert intersect_f2(e1, e2).rows == 0
    U = BitMatrix([0b0011, 0b0110], 4)
    assert intersect_f2(U, U).rows == 2
    with pytest.raises(ValueError):
        intersect_f2(BitMatrix([1], 2), BitMatrix([1], 3))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7), st.randoms(use_true_random=False))
def test_subspace_dimension_formula(d, rnd):
    U = BitMatrix([rnd.getrandbits(d) for _ in range(rnd.randint(0, d))], d)
    V = BitMatrix([rnd.getrandbits(d) for _ in range(rnd.randint(0, d))], d)
    meet = intersect_f2(U, V)
    assert rank_f2(U) + rank_f2(V) == meet.rows + sum_f2(U, V).rows
    # brute force intersection of spans
    def span(B):
        s = {0}
        for v in B.packed_rows:
            s |= {x ^ v for x in s}
        return s
    assert span(meet) == span(U) & span(V)


@pytest.mark.parametrize("n", [8, 12, 16])
def test_image_of_walk_meets_kernel_trivially(n):
    G = dynkin_d(n)
    image = column_space_f2(BitMatrix.from_int_matrix(walk_matrix(G)))
    ker = kernel_f2(BitMatrix.from_int_matrix(G.adjacency_matrix()))
    assert intersect_f2(image, ker).rows == 0


@pytest.mark.parametrize("size", range(1, 5))
def test_symmetric_square_zero_kills_ones(size):
    slots = [(i, j) for i in range(size) for j in range(i, size)]
    for bits in product((0, 1), repeat=len(slots)):
        M = [[0] * size for _ in range(size)]
        for (i, j), b in zip(slots, bits):
            M[i][j] = M[j][i] = b
        M = IntMatrix(M)
        sq = M @ M
        if all(x % 2 == 0 for row in sq for x in row):
            assert all(x % 2 == 0 for x in M.apply((1,) * size))


def test_det_rational_fraction_path():
    assert det_rational(IntMatrix([[2, 1], [1, 1]])) == 1
    assert Fraction(det_rational(IntMatrix([[4, 2], [2, 2]]))) == 4
