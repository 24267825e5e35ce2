# %% [markdown]
# # Command line
# The same checks from the shell. `run` returns (exit code, stdout, stderr)
# so the CLI can also be driven from Python.

# %%
from walkform.cli import run

code, out, err = run(["snf", "--family", "dynkin-d", "--n", "12"])
print(out)

# %%
code, out, err = run(["verify", "--claim", "all", "--n-min", "4", "--n-max", "24"])
print(out.splitlines()[-1], "exit", code)

# %%
code, out, err = run(["table", "--n-min", "4", "--n-max", "12"])
print(out)
