"""Exact walk matrices, Smith normal forms and GF(2) ranks, with checks for the Dynkin graph D_n."""

from .graphs import Graph, dynkin_d, emit_graph6, parse_graph6, path, random_graph
from .linalg import (
    BitMatrix,
    IntMatrix,
    Polynomial,
    charpoly_berkowitz,
    charpoly_dynkin,
    charpoly_path,
    column_space_f2,
    det_bareiss,
    intersect_f2,
    kernel_f2,
    mat_mul,
    rank_f2,
)
from .report import VerificationReport
from .smith import SmithDecomposition, determinantal_factors, minor_gcd_oracle, smith_normal_form
from .walk import WalkMatrix, rank2_walk, truncated_walk_dynkin, walk_matrix, walk_matrix_of_matrix

__version__ = "0.1.0"
