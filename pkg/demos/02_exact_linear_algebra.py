# %% [markdown]
# # Exact linear algebra
# Integer determinants, characteristic polynomials and GF(2) subspaces,
# all on Python ints so nothing overflows.

# %%
from walkform import BitMatrix, IntMatrix, charpoly_berkowitz, charpoly_dynkin, det_bareiss, dynkin_d
from walkform import column_space_f2, intersect_f2, kernel_f2, rank_f2
from walkform.linalg import poly_at_matrix, rank_exact

M = IntMatrix([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
print("det =", det_bareiss(M))  # Cartan matrix of A_3, det 4

# large entries stay exact
H = IntMatrix([[10**30 + i * j for j in range(4)] for i in range(4)])
print("rank of a rank-2 matrix with 30-digit entries:", rank_exact(H))

# %% characteristic polynomials
A = dynkin_d(10).adjacency_matrix()
phi = charpoly_berkowitz(A)
print("phi(D_10) =", phi)
print("matches recurrence:", phi == charpoly_dynkin(10))
print("Cayley-Hamilton:", poly_at_matrix(phi, A) == IntMatrix([[0] * 10] * 10))

# %% GF(2)
A2 = BitMatrix.from_int_matrix(A)
print("rank over GF(2):", rank_f2(A2))
K = kernel_f2(A2)
print("kernel basis:", K.vectors())
print("image meets kernel in dim", rank_f2(intersect_f2(column_space_f2(A2), K)))
