# %% [markdown]
# What an encoding is, how it is checked, and how small graphs get their
# exact dimension.

# %%
from prodim import Encoding, pdim_exact, verify_encoding
from prodim.graph import cycle_graph, path_graph

p4 = path_graph(4)
e = Encoding(2, {0: (0, 0), 1: (1, 1), 2: (0, 2), 3: (1, 0)})
verify_encoding(p4, e).valid  # neighbours differ everywhere, others agree once

# %%
# break it: vertex 1 now shares a symbol with its neighbour 0
bad = Encoding(2, {0: (0, 0), 1: (0, 1), 2: (0, 2), 3: (1, 0)})
for v in verify_encoding(p4, bad).violations:
    print(v.u, v.v, v.reason.value)

# %%
# exact search: paths grow logarithmically, odd cycles cost more
for n in (3, 5, 9, 10):
    print(f"P_{n}", pdim_exact(path_graph(n))[0])
for n in (5, 7, 9):
    print(f"C_{n}", pdim_exact(cycle_graph(n))[0])

# %%
l, witness = pdim_exact(path_graph(9))
for v in witness.vertices:
    print(v, witness[v])
