# %% [markdown]
# # Labelings where every perfect tiling is balanced
#
# Each family is a dense multipartite graph with a labeling under which any
# perfect K_r-tiling has discrepancy exactly zero. The mod 4 residue of r
# picks the recipe.

# %%
from collections import Counter

from tiling_disc.constructions import (
    build_family, canonical_tiling, census_discrepancy, type_census,
)
from tiling_disc.graph import min_degree, tiling_discrepancy
from tiling_disc.solver import discrepancy_extremes, sample_tiling

# %% [markdown]
# r = 3: blow up K_4 with half of its six class pairs labeled +1. Every one of
# the 1296 triangle tilings is balanced.

# %%
g, f, meta = build_family("mod03", r=3, n=12)
print(meta.sidecar, "min degree", min_degree(g))
ext = discrepancy_extremes(g, f, 3)
print(ext.min_disc, ext.max_disc, ext.tilings_seen)

# %% [markdown]
# r = 5 (m = 1): a circulant pattern on five classes plus a sixth class split
# into an all-plus half X and an all-minus half Y. Tiles are of three types
# depending on whether they meet X, Y or neither.

# %%
g, f, meta = build_family("mod1", m=1, n=60)
t = canonical_tiling(meta, g, shuffle_seed=1)
print(type_census(meta, t), tiling_discrepancy(f, t))

censuses = Counter()
for seed in range(200):
    t = sample_tiling(g, meta.r, seed)
    c = type_census(meta, t)
    assert tiling_discrepancy(f, t) == census_discrepancy(meta, c) == 0
    censuses[c] += 1
print(censuses)

# %% [markdown]
# r = 6 (m = 1): the sixth class split is uneven, |X| = 5 and |Y| = 7, and
# every tiling has exactly two tiles avoiding the last class.

# %%
g, f, meta = build_family("mod2", m=1, n=84)
print(meta.sidecar)
t = sample_tiling(g, 6, 0)
print(type_census(meta, t), tiling_discrepancy(f, t))

# %% [markdown]
# r = 2: label every edge at one class of K_{2,2,2,2} with -1.

# %%
g, f, meta = build_family("matching", n=8)
print(discrepancy_extremes(g, f, 2))
