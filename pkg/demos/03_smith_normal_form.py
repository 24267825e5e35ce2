# %% [markdown]
# # Smith normal form
# Invariant factors with optional unimodular transforms, and a cross-check
# against gcds of minors.

# %%
import random

from walkform import IntMatrix, determinantal_factors, minor_gcd_oracle, smith_normal_form

M = IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
s = smith_normal_form(M, keep_transforms=True)
print("d =", s.d)  # (2, 6, 12)
print("P M Q == diag(d):", s.P @ M @ s.Q == IntMatrix([[2, 0, 0], [0, 6, 0], [0, 0, 12]]))

# %% determinantal factors against the minor gcds
print("Delta:", determinantal_factors(s))
print("gcd of minors:", [minor_gcd_oracle(M, i) for i in range(4)])

# %% a quick random sweep
rng = random.Random(0)
for _ in range(50):
    R = IntMatrix([[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)])
    assert determinantal_factors(smith_normal_form(R)) == [minor_gcd_oracle(R, i) for i in range(5)]
print("50 random 4x4 matrices agree")
