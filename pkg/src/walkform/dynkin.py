"""Constructions tied to D_n and the checks of its walk-matrix theorems.

Every ``check_*`` function returns a :class:`VerificationReport` whose
``witness`` carries the computed evidence (invariant factors, residuals,
determinants). Exact claims are decided in integer arithmetic; the
trigonometric ones in double precision unless ``dps`` asks for mpmath.
"""

from __future__ import annotations

import math
import time
from contextlib import nullcontext
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import mpmath
import numpy as np

from .graphs import Graph, dynkin_d
from .linalg import (
    BitMatrix,
    IntMatrix,
    Polynomial,
    charpoly_berkowitz,
    charpoly_dynkin,
    column_space_f2,
    det_bareiss,
    intersect_f2,
    kernel_f2,
    pack_bits,
    rank_exact,
    rank_f2,
)
from .report import VerificationReport, make_report
from .smith import determinantal_factors, smith_normal_form
from .walk import rank2_walk, truncated_walk_dynkin, walk_matrix, walk_matrix_of_matrix

__all__ = [
    "matrix_B",
    "matrix_C",
    "SpectralData",
    "spectral_indices",
    "build_spectral",
    "predicted_snf",
    "check_intertwine",
    "check_walk_equality",
    "check_eigen",
    "check_product_e_xi",
    "check_prodsin",
    "cosine_vandermonde_check",
    "det_walk_B",
    "check_droot",
    "check_disjoint",
    "check_rank2_bound",
    "check_snf_theorem",
    "check_odd_coefficients",
    "check_square_zero",
    "negative_controls",
]


def _require_mult4(n: int, min_n: int = 8) -> None:
    if n % 4 or n < min_n:
        raise ValueError(f"need n divisible by 4 and n >= {min_n}, got n={n}")


def _last_row(width: int, tail: tuple[int, int]) -> list[int]:
    pattern = (1, 0, -1, 0)
    return [pattern[c % 4] for c in range(width - 2)] + list(tail)


def matrix_B(n: int) -> IntMatrix:
    """The ``(n-2) x (n-2)`` matrix B with ``A(D_n) C = C B``."""
    _require_mult4(n)
    m = n - 2
    b = [[0] * m for _ in range(m)]
    b[0][1] = 1
    b[1][0], b[1][2] = 2, 1
    for r in range(2, m - 1):
        b[r][r - 1] = b[r][r + 1] = 1
    b[m - 1] = _last_row(m, (2, 0))
    return IntMatrix(b, cols=m)


def matrix_C(n: int) -> IntMatrix:
    """The ``n x (n-2)`` matrix C; it sends the all-one vector to the all-one vector."""
    _require_mult4(n)
    m = n - 2
    c = [[0] * m for _ in range(n)]
    c[0][0] = c[1][0] = 1
    for r in range(2, n - 1):
        c[r][r - 1] = 1
    c[n - 1] = _last_row(m, (1, 0))
    return IntMatrix(c, cols=m)


# ---------------------------------------------------------------------------
# spectral data of B^T


def spectral_indices(n: int) -> tuple[int, ...]:
    """``k = 1..n-1`` without ``n/2``."""
    return tuple(k for k in range(1, n) if 2 * k != n)


@dataclass(frozen=True)
class SpectralData:
    """Angles, eigenvalues and eigenvectors of ``B^T`` for one ``n``.

    Column ``c`` of ``tau`` and ``xi`` belongs to ``ks[c]``. Arrays are
    float64, or object arrays of mpmath numbers when ``dps`` is set.
    """

    n: int
    ks: tuple[int, ...]
    angles: np.ndarray
    eigenvalues: np.ndarray
    tau: np.ndarray
    xi: np.ndarray
    dps: Optional[int] = None


def _precision(dps):
    return mpmath.workdps(dps) if dps else nullcontext()


def _backend(dps):
    if dps:
        return np.frompyfunc(mpmath.cos, 1, 1), mpmath.pi
    return np.cos, np.pi


def build_spectral(n: int, dps: Optional[int] = None, angle_offset: float = 0.0) -> SpectralData:
    """Build ``alpha_k``, ``2 cos alpha_k``, ``tau_k`` and ``xi_k``.

    ``xi_k`` is the sum of ``tau_k`` shifted up by 0, 4, 8, ... places.
    ``angle_offset`` perturbs every angle; it exists for negative controls.
    """
    _require_mult4(n)
    ks = spectral_indices(n)
    m = n - 2
    cos, pi = _backend(dps)
    with _precision(dps):
        if dps:
            angles = np.array([(2 * k - 1) * pi / (2 * (n - 1)) + angle_offset for k in ks], dtype=object)
        else:
            angles = (2 * np.array(ks, dtype=float) - 1) * pi / (2 * (n - 1)) + angle_offset
        multiples = np.arange(n - 3, -1, -1)
        tau = 2 * cos(np.multiply.outer(multiples, angles))
        tau[m - 1, :] = 1
        xi = tau.copy()
        for i in range(1, n // 4):
            xi[: m - 4 * i, :] += tau[4 * i:, :]
        eigenvalues = 2 * cos(angles)
    return SpectralData(n=n, ks=ks, angles=angles, eigenvalues=eigenvalues, tau=tau, xi=xi, dps=dps)


def check_eigen(n: int, tol: float = 1e-8, dps: Optional[int] = None,
                angle_offset: float = 0.0) -> VerificationReport:
    """``B^T xi_k = 2 cos(alpha_k) xi_k`` for every k, up to ``tol``."""
    t0 = time.perf_counter()
    _require_mult4(n)
    spec = build_spectral(n, dps=dps, angle_offset=angle_offset)
    Bt = matrix_B(n).T.to_numpy(dtype=object if dps else float)
    with _precision(dps):
        resid = Bt @ spec.xi - spec.xi * spec.eigenvalues[np.newaxis, :]
        res_k = np.max(np.abs(resid), axis=0)
        scale_k = np.maximum(1, np.max(np.abs(spec.xi), axis=0))
        ratio = [float(r) / float(s) for r, s in zip(res_k, scale_k)]
    worst = int(np.argmax(ratio))
    ok = ratio[worst] <= tol
    witness = {
        "max_residual": max(float(r) for r in res_k),
        "max_scaled_residual": ratio[worst],
        "worst_k": spec.ks[worst],
        "tol": tol,
    }
    params = {"n": n}
    if dps:
        params["dps"] = dps
    if angle_offset:
        params["angle_offset"] = angle_offset
    return make_report("eigen", params, ok, witness, t0)


def _signed_log_product(values) -> tuple[int, float]:
    sign, log = 1, 0.0
    for v in values:
        v = float(v)
        if v == 0:
            return 0, -math.inf
        if v < 0:
            sign = -sign
        log += math.log(abs(v))
    return sign, log


def e_xi_closed_form(n: int, angles) -> np.ndarray:
    """``sin((n-1)a/2) sin(na/2) / (sin(a/2) sin 2a)`` elementwise."""
    a = np.asarray(angles, dtype=float)
    return np.sin((n - 1) / 2 * a) * np.sin(n / 2 * a) / (np.sin(a / 2) * np.sin(2 * a))


def check_product_e_xi(n: int, tol: float = 1e-6, factor_tol: float = 1e-9,
                       dps: Optional[int] = None) -> VerificationReport:
    """``|prod_k e^T xi_k| = 2^(n/2 - 1)``, with each factor checked against its closed form."""
    t0 = time.perf_counter()
    _require_mult4(n)
    spec = build_spectral(n, dps=dps)
    with _precision(dps):
        direct = [float(x) for x in spec.xi.sum(axis=0)]
    closed = e_xi_closed_form(n, [float(a) for a in spec.angles])
    factor_err = max(float(abs(d - c) / max(1.0, abs(c))) for d, c in zip(direct, closed))
    sign, log = _signed_log_product(direct)
    target = (n / 2 - 1) * math.log(2)
    rel = abs(math.expm1(log - target))
    ok = rel <= tol and factor_err <= factor_tol
    witness = {
        "abs_product": math.exp(log),
        "sign": sign,
        "expected": 2 ** (n // 2 - 1),
        "rel_error": rel,
        "max_factor_error": factor_err,
        "tol": tol,
        "factor_tol": factor_tol,
    }
    params = {"n": n}
    if dps:
        params["dps"] = dps
    return make_report("e-xi", params, ok, witness, t0)


def check_prodsin(m: int, tol: float = 1e-10) -> VerificationReport:
    """``prod_{j=1}^{m-1} sin((2j-1) pi / (4(m-1))) = 2^(3/2 - m)``."""
    t0 = time.perf_counter()
    if m < 2:
        raise ValueError(f"need m >= 2, got m={m}")
    prod = 1.0
    for j in range(1, m):
        prod *= math.sin((2 * j - 1) * math.pi / (4 * (m - 1)))
    expected = 2.0 ** (1.5 - m)
    rel = abs(prod / expected - 1)
    return make_report("prodsin", {"m": m}, rel <= tol,
                       {"product": prod, "expected": expected, "rel_error": rel, "tol": tol}, t0)


def cosine_vandermonde_check(thetas: Sequence[float], tol: float = 1e-9, dps: int = 40) -> VerificationReport:
    """Determinant with rows ``2 cos(j theta_i)`` against ``prod_{j<i} (2cos theta_i - 2cos theta_j)``.

    Row 0 is all ones. Both sides are evaluated with mpmath at ``dps``
    digits, since clustered angles make the float determinant lose about
    ``log10(cond)`` digits. When two cosines coincide the product is zero
    and the determinant is held to ``tol`` in absolute terms instead.
    """
    t0 = time.perf_counter()
    th = [float(t) for t in thetas]
    m = len(th)
    if not 1 <= m <= 10:
        raise ValueError(f"need 1 <= m <= 10 angles, got {m}")
    with mpmath.workdps(dps):
        x = [mpmath.mpf(t) for t in th]
        V = mpmath.matrix(m, m)
        for j in range(m):
            for i in range(m):
                V[j, i] = 1 if j == 0 else 2 * mpmath.cos(j * x[i])
        det_mp = mpmath.det(V)
        c = [2 * mpmath.cos(t) for t in x]
        rhs_mp = mpmath.mpf(1)
        for i in range(m):
            for j in range(i):
                rhs_mp *= c[i] - c[j]
        det, rhs = float(det_mp), float(rhs_mp)
        if rhs_mp == 0:
            err = float(abs(det_mp))
            ok = err <= tol
            witness = {"det": det, "product": rhs, "abs_error": err, "tol": tol, "degenerate": True}
        else:
            err = float(abs(det_mp - rhs_mp) / abs(rhs_mp))
            ok = err <= tol
            witness = {"det": det, "product": rhs, "rel_error": err, "tol": tol, "degenerate": False}
    return make_report("vandermonde", {"m": m, "thetas": th, "dps": dps}, ok, witness, t0)


def det_walk_B(n: int, formula_max_n: int = 32, formula_tol: float = 1e-4) -> tuple[int, VerificationReport]:
    """Exact ``det W(B)``; passes iff ``|det| = 2^(n/2 - 1)``.

    For ``n <= formula_max_n`` the eigenvector formula
    ``prod_{k<j}(l_j - l_k) prod_j e^T xi_j / det[xi]`` is evaluated in
    floating point and must match the exact value to ``formula_tol``.
    """
    t0 = time.perf_counter()
    _require_mult4(n)
    det = det_bareiss(walk_matrix_of_matrix(matrix_B(n)))
    expected = 2 ** (n // 2 - 1)
    ok = abs(det) == expected
    witness: dict = {"det": det, "abs_det": abs(det), "expected": expected}
    if n <= formula_max_n:
        spec = build_spectral(n)
        lam = spec.eigenvalues
        s_v, l_v = _signed_log_product(lam[j] - lam[k] for k in range(lam.size) for j in range(k + 1, lam.size))
        s_e, l_e = _signed_log_product(spec.xi.sum(axis=0))
        s_x, l_x = np.linalg.slogdet(spec.xi)
        value = s_v * s_e * float(s_x) * math.exp(l_v + l_e - float(l_x))
        rel = abs(value - det) / abs(det)
        witness.update({"formula_value": value, "formula_rel_error": rel, "formula_tol": formula_tol})
        ok = ok and rel <= formula_tol
    return det, make_report("det-wb", {"n": n}, ok, witness, t0)


# ---------------------------------------------------------------------------
# exact checks


def check_intertwine(n: int, B: Optional[IntMatrix] = None) -> VerificationReport:
    """``A(D_n) C = C B`` over the integers. ``B`` may be overridden for controls."""
    t0 = time.perf_counter()
    _require_mult4(n)
    B = matrix_B(n) if B is None else B
    C = matrix_C(n)
    A = dynkin_d(n).adjacency_matrix()
    left, right = A @ C, C @ B
    diff = sum(1 for r, s in zip(left, right) for x, y in zip(r, s) if x != y)
    return make_report("intertwine", {"n": n}, diff == 0, {"mismatched_entries": diff}, t0)


def check_walk_equality(n: int, truncated: Optional[IntMatrix] = None) -> VerificationReport:
    """Truncated walk matrix of D_n equals ``W(B)`` entrywise."""
    t0 = time.perf_counter()
    _require_mult4(n)
    Wt = truncated_walk_dynkin(n) if truncated is None else truncated
    WB = walk_matrix_of_matrix(matrix_B(n))
    diff = sum(1 for r, s in zip(Wt, WB) for x, y in zip(r, s) if x != y)
    ok = Wt.shape == WB.shape and diff == 0
    return make_report("walk-eq", {"n": n}, ok, {"mismatched_entries": diff}, t0)


def check_droot(n: int) -> VerificationReport:
    """Over GF(2), 0 is a root of multiplicity exactly two of the charpoly of D_n (n even).

    The witness calls the x^2 coefficient ``x2_coeff``; it is unrelated to
    the general coefficient list ``coeffs``.
    """
    t0 = time.perf_counter()
    if n < 4 or n % 2:
        raise ValueError(f"need even n >= 4, got n={n}")
    phi = charpoly_dynkin(n)
    low = [phi.coeff(i) % 2 for i in range(3)]
    ok = low == [0, 0, 1]
    witness = {"const_mod2": low[0], "x_coeff_mod2": low[1], "x2_coeff": phi.coeff(2), "x2_coeff_mod2": low[2]}
    return make_report("droot", {"n": n}, ok, witness, t0)


def _alpha_beta(n: int) -> tuple[int, int]:
    alpha = pack_bits([1, 1] + [0] * (n - 2))
    beta = pack_bits([i % 2 for i in range(n)])
    return alpha, beta


def check_disjoint(n: int) -> VerificationReport:
    """Column space of ``W(D_n)`` meets ``Ker A(D_n)`` only in 0 over GF(2).

    Also confirms the kernel is 2-dimensional and spanned by
    ``alpha = (1,1,0,...,0)`` and ``beta = (0,1,0,1,...,0,1)``.
    """
    t0 = time.perf_counter()
    _require_mult4(n, min_n=4)
    G = dynkin_d(n)
    A2 = BitMatrix.from_int_matrix(G.adjacency_matrix())
    W2 = BitMatrix.from_int_matrix(walk_matrix(G))
    ker = kernel_f2(A2)
    image = column_space_f2(W2)
    meet = intersect_f2(image, ker)
    alpha, beta = _alpha_beta(n)
    ab = BitMatrix([alpha, beta], n)
    kernel_is_ab = ker.rows == 2 and rank_f2(ab) == 2 and intersect_f2(ker, ab).rows == 2
    ok = meet.rows == 0 and kernel_is_ab
    witness = {
        "intersection_dim": meet.rows,
        "kernel_dim": ker.rows,
        "image_dim": image.rows,
        "kernel_is_span_alpha_beta": kernel_is_ab,
    }
    return make_report("disjoint", {"n": n}, ok, witness, t0)


def _half_square_root_f2(phi: Polynomial, n: int) -> Optional[Polynomial]:
    """``phi_1`` with ``phi = (x phi_1)^2`` over GF(2), or None if no such root."""
    f = phi.mod(2)
    if any(f.coeff(i) for i in range(1, n + 1, 2)) or f.coeff(0):
        return None
    # squaring is additive over GF(2): sqrt(sum c x^(2i)) = sum c x^i
    root = Polynomial(tuple(f.coeff(2 * i) for i in range(n // 2 + 1)))
    if root.coeff(0):
        return None
    return Polynomial(root.coeffs[1:])


def check_rank2_bound(n: int) -> VerificationReport:
    """``rank_2 W(D_n) <= n/2 - 1`` and the polynomial argument behind it.

    The charpoly of D_n reduces mod 2 to ``(x phi_1(x))^2``; the check
    confirms ``phi_1(A) e = 0`` over GF(2).
    """
    t0 = time.perf_counter()
    _require_mult4(n, min_n=4)
    G = dynkin_d(n)
    r2 = rank2_walk(G)
    bound = n // 2 - 1
    phi1 = _half_square_root_f2(charpoly_dynkin(n), n)
    mechanism = False
    if phi1 is not None:
        A2 = BitMatrix.from_int_matrix(G.adjacency_matrix())
        acc = 0
        e = (1 << n) - 1
        for c in reversed(phi1.coeffs):
            acc = A2.apply(acc) ^ (e if c else 0)
        mechanism = acc == 0
    witness = {
        "rank2": r2,
        "bound": bound,
        "phi1_degree": None if phi1 is None else phi1.degree,
        "phi1_A_e_zero": mechanism,
    }
    return make_report("rank2", {"n": n}, r2 <= bound and mechanism, witness, t0)


def predicted_snf(n: int) -> tuple[int, ...]:
    """Invariant factors of ``W(D_n)`` as the theorems state them."""
    if n < 4:
        raise ValueError(f"need n >= 4, got n={n}")
    if n % 4 == 0:
        h = n // 2 - 1
        return (1,) * h + (2,) * h + (0, 0)
    return (1,) * ((n + 1) // 2) + (2,) * (n // 2 - 1) + (0,)


def check_snf_theorem(n: int) -> VerificationReport:
    """Smith normal form of ``W(D_n)`` matches :func:`predicted_snf`.

    Also requires the cross-checks: odd invariant factors count equals
    ``rank_2 W`` and nonzero ones equal the rational rank. For ``4 | n``
    the two sufficient conditions (rank_2 bound and ``Delta_{n-2}`` dividing
    ``2^(n/2-1)``) are reported individually.
    """
    t0 = time.perf_counter()
    if n < 4:
        raise ValueError(f"need n >= 4, got n={n}")
    G = dynkin_d(n)
    W = walk_matrix(G)
    snf = smith_normal_form(W)
    expected = predicted_snf(n)
    r2 = rank2_walk(G)
    rank_q = rank_exact(W)
    consistent = snf.rank_mod(2) == r2 and snf.rank == rank_q
    witness: dict = {
        "d": list(snf.d),
        "expected": list(expected),
        "rank": rank_q,
        "rank2": r2,
        "consistent": consistent,
    }
    if n % 4 == 0:
        delta = determinantal_factors(snf)[n - 2]
        power = 2 ** (n // 2 - 1)
        witness["delta_n_minus_2"] = delta
        witness["cond_rank2"] = r2 <= n // 2 - 1
        witness["cond_delta_divides"] = delta != 0 and power % delta == 0
    ok = snf.d == expected and consistent
    return make_report("snf", {"n": n}, ok, witness, t0)


def check_odd_coefficients(G: Graph) -> VerificationReport:
    """Charpoly ``x^n + c_1 x^(n-1) + ... + c_n`` of a graph has ``c_i`` even for odd ``i``."""
    t0 = time.perf_counter()
    phi = charpoly_berkowitz(G.adjacency_matrix())
    bad = [i for i in range(1, G.n + 1, 2) if phi.coeff(G.n - i) % 2]
    return make_report("lemma-odd0", {"n": G.n, "edges": G.num_edges}, not bad,
                       {"odd_index_odd_coeffs": bad}, t0)


def check_square_zero(max_size: int = 4) -> VerificationReport:
    """Every symmetric 0/1 matrix with ``M^2 = 0`` over GF(2) has ``Me = 0`` over GF(2).

    Exhaustive over all sizes ``1..max_size``, diagonal included.
    """
    t0 = time.perf_counter()
    if max_size < 1:
        raise ValueError(f"need max_size >= 1, got {max_size}")
    tested = hits = 0
    counterexamples = []
    for size in range(1, max_size + 1):
        slots = [(i, j) for i in range(size) for j in range(i, size)]
        e = (1 << size) - 1
        for bits in product((0, 1), repeat=len(slots)):
            rows = [0] * size
            for (i, j), b in zip(slots, bits):
                if b:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            M = BitMatrix(rows, size)
            tested += 1
            # M symmetric, so column j of M is row j
            if all(M.apply(rows[j]) == 0 for j in range(size)):
                hits += 1
                if M.apply(e):
                    counterexamples.append([list(v) for v in M.vectors()])
    return make_report("lemma-m2e", {"max_size": max_size}, not counterexamples,
                       {"matrices": tested, "square_zero": hits, "counterexamples": counterexamples[:5]}, t0)


def negative_controls(n: int = 12) -> list[VerificationReport]:
    """Deliberately broken inputs; every returned report should be a fail."""
    _require_mult4(n)
    B = matrix_B(n).tolist()
    B[0][1] += 1
    Wt = truncated_walk_dynkin(n).tolist()
    Wt[0], Wt[1] = Wt[1], Wt[0]
    return [
        check_intertwine(n, B=IntMatrix(B)),
        check_walk_equality(n, truncated=IntMatrix(Wt)),
        check_eigen(n, angle_offset=0.01),
    ]
