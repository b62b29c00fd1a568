# %% [markdown]
# Sparse graphs via random colorings along a degeneracy order.

# %%
import statistics

from prodim.degenerate import DegenerateParams, RetriesExhausted, coloring_count, encode_degenerate
from prodim.encoding import is_valid
from prodim.generators import random_k_degenerate

g = random_k_degenerate(256, 2, seed=4)
r = encode_degenerate(g, DegenerateParams(k=2, seed=0))
print(r.dimension, coloring_count(256, 2) + 1, r.retries, is_valid(g, r.encoding))

# %%
# same seed, same output
again = encode_degenerate(g, DegenerateParams(k=2, seed=0))
again.encoding == r.encoding

# %%
# shrinking the batch shows where verification starts forcing redraws
for mult in (1.0, 0.5, 0.35, 0.25):
    retries = []
    for s in range(10):
        g = random_k_degenerate(128, 2, s)
        try:
            retries.append(encode_degenerate(g, DegenerateParams(k=2, seed=s, multiplier=mult, max_retries=8)).retries)
        except RetriesExhausted:
            retries.append(None)
    done = [x for x in retries if x is not None]
    print(mult, f"median retries {statistics.median(done) if done else '-'}, gave up after 9 draws {retries.count(None)}/10")
