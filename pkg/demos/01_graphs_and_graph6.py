# %% [markdown]
# # Graphs and graph6
# Build a few small graphs, look at their adjacency matrices and move
# them in and out of the graph6 text format.

# %%
from walkform import dynkin_d, emit_graph6, parse_graph6, path, random_graph

D8 = dynkin_d(8)
print(D8.n, "vertices,", D8.num_edges, "edges")
print("degrees:", D8.degrees())  # vertices 0 and 1 hang off vertex 2
print(D8.adjacency_matrix().to_numpy())

# %% graph6 round trip
for G in (path(5), D8, random_graph(9, 0.4, seed=1)):
    s = emit_graph6(G)
    assert parse_graph6(s) == G
    print(f"{s:10s} n={G.n} m={G.num_edges}")

# %% the optional header is accepted, junk is not
print(parse_graph6(">>graph6<<EXCG") == dynkin_d(6))
try:
    parse_graph6("E!!!")
except ValueError as exc:
    print("rejected:", exc)
