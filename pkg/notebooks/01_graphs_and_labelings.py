# %% [markdown]
# # Graphs, labelings and clique kinds
#
# A labeled graph assigns +1 or -1 to every edge. The discrepancy of a set of
# edges is the sum of their labels. Complete labelings come in four
# structured kinds (all +1, all -1, and the two stars), and these are
# exactly the labelings where every 4-set satisfies the swap identity
# f(ab) + f(cd) = f(ac) + f(bd).

# %%
import numpy as np

from tiling_disc import EdgeLabeling, Graph
from tiling_disc.graph import (
    all_labelings, batch_four_type, batch_swap_identity, classify_clique, clique_discrepancy,
    format_graph, parse_graph, swap_identity_holds,
)

# %%
k5 = Graph.complete(5)
plus_star = EdgeLabeling(k5, {e: (1 if 2 in e else -1) for e in k5.edges()})
print(classify_clique(plus_star, range(5)))
print("discrepancy", clique_discrepancy(plus_star, range(5)))
print("swap identity", swap_identity_holds(plus_star))

# %% [markdown]
# Flip one edge and both the kind and the identity break.

# %%
broken = EdgeLabeling(k5, {e: (-plus_star(*e) if e == (0, 1) else plus_star(*e)) for e in k5.edges()})
print(classify_clique(broken, range(5)), swap_identity_holds(broken))

# %% [markdown]
# The equivalence can be checked over every labeling of K_6 at once with the
# vectorized helpers: 32768 rows, 14 of them structured.

# %%
rows = all_labelings(6)
sw, kinds = batch_swap_identity(rows, 6), batch_four_type(rows, 6)
print(rows.shape, int(sw.sum()), bool(np.array_equal(sw, kinds)))

# %% [markdown]
# Graphs travel in a small text format.

# %%
text = format_graph(k5, plus_star, 3)
print(text.splitlines()[:3])
g, f, r = parse_graph(text)
assert (g, f, r) == (k5, plus_star, 3)
