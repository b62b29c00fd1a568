# %% [markdown]
# Orthogonal Latin square pairs and the code for three disjoint cliques
# built from them.

# %%
from prodim.encoding import Encoding, is_valid
from prodim.graph import disjoint_cliques
from prodim.latin import choose_ols_order, encode_triple_clique, format_pair, mols, mols_problems

print(format_pair(mols(4)))

# %%
# orders 2 mod 4 are never built directly; callers are bumped to the next order
print({c: choose_ols_order(c) for c in range(1, 11)})
print(all(not mols_problems(mols(m)) for m in range(3, 65) if m % 4 != 2))

# %%
t = 5
code = encode_triple_clique(t)
g = disjoint_cliques(3, t)
e = Encoding(t, {i * t + j: code.word(i, j) for i in range(3) for j in range(t)})
is_valid(g, e)
