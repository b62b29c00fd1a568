# %% [markdown]
# Encoding forests by repeated balanced splitting.

# %%
import time

from prodim.encoding import is_valid, is_well_begun
from prodim.forest import encode_forest, find_split_vertex, forest_bound
from prodim.generators import random_forest

t = random_forest(30, seed=1)
split = find_split_vertex(t)
print(split.v, split.kind.name, [len(p) for p in split.parts])

# %%
for n in (10, 100, 1000, 10_000):
    t = random_forest(n, seed=0)
    t0 = time.perf_counter()
    e = encode_forest(t)
    ms = (time.perf_counter() - t0) * 1000
    ok = is_valid(t, e) and is_well_begun(t, e, 2)
    print(f"n={n:>6} length={e.length:>2} bound={forest_bound(n):6.2f} valid={ok} {ms:7.1f} ms")
