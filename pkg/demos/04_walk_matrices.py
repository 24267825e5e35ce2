# %% [markdown]
# # Walk matrices
# Column j of W counts walks of length j from each vertex. For D_n the
# Smith form has a rigid shape that depends on n mod 4.

# %%
from walkform import dynkin_d, rank2_walk, smith_normal_form, truncated_walk_dynkin, walk_matrix
from walkform.linalg import det_bareiss

W = walk_matrix(dynkin_d(8))
print(W.to_numpy())

# %% the Smith form pattern
for n in range(4, 17):
    s = smith_normal_form(walk_matrix(dynkin_d(n)))
    print(f"n={n:2d} d={list(s.d)}  rank={s.rank}  rank2={rank2_walk(dynkin_d(n))}")

# %% the truncated walk matrix for n divisible by 4
for n in (8, 12, 16, 20):
    print(n, abs(det_bareiss(truncated_walk_dynkin(n))), 2 ** (n // 2 - 1))
