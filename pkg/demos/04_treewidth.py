# %% [markdown]
# Graphs of small treewidth: decompose, split at a balanced bag, recurse.

# %%
import math

from prodim.encoding import is_valid
from prodim.generators import random_partial_ktree
from prodim.graph import cycle_graph
from prodim.treedecomp import decompose_exact, find_split_bag, normalize
from prodim.treewidth import encode_treewidth

g = random_partial_ktree(20, 2, seed=3)
td = decompose_exact(g)
ntd = normalize(g, td)
split = find_split_bag(g, ntd)
print("width", td.width, "bag", sorted(split.bag), "parts", [len(p) for p in split.parts])

# %%
r = encode_treewidth(cycle_graph(8))
print(r.dimension, r.width, r.bound, is_valid(cycle_graph(8), r.encoding))

# %%
for k in (1, 2, 3):
    for n in (16, 64, 256):
        g = random_partial_ktree(n, k, seed=0)
        r = encode_treewidth(g)
        bound = (k + 2) * (math.log2(n) + 1)
        print(f"k={k} n={n:>3} width={r.width} length={r.dimension:>2} bound={bound:5.1f} "
              f"certified={r.bound_certified} valid={is_valid(g, r.encoding)}")
