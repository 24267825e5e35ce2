# %% [markdown]
# # Verification reports
# Each check returns a VerificationReport with a pass/fail status and a
# witness dict. The spectral checks run in float64 or with mpmath.

# %%
from walkform import dynkin

n = 16
for r in (
    dynkin.check_snf_theorem(n),
    dynkin.check_rank2_bound(n),
    dynkin.check_disjoint(n),
    dynkin.check_droot(n),
    dynkin.check_intertwine(n),
    dynkin.check_walk_equality(n),
    dynkin.check_eigen(n),
    dynkin.check_product_e_xi(n),
):
    print(r.summary())

# %% exact and float views of det W(B)
det, r = dynkin.det_walk_B(n)
print("det W(B) =", det, " formula rel. error:", r.witness["formula_rel_error"])

# %% extended precision
r = dynkin.check_eigen(64, tol=1e-30, dps=50)
print(r.summary())

# %% reports are JSON friendly, and the controls are meant to fail
print(dynkin.check_prodsin(6).to_json())
print([c.status for c in dynkin.negative_controls(12)])
