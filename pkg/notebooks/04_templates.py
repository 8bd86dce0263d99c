# %% [markdown]
# # Templates and two-clique gadgets
#
# A K_r-template is a multiset of r-cliques covering every vertex equally
# often. Each gadget is two (r+1)-cliques joined through vertex 0, carrying
# two templates K1 and K2 of the same size. A nonzero gap between their
# discrepancies is what rules out the gadget's labeling pattern.

# %%
from tiling_disc import EdgeLabeling, Graph
from tiling_disc.templates import (
    CSV_HEADER, GadgetSpec, build_K1_K2, evaluate_gadget, find_discrepant_swap,
    hamilton_window_template, sweep, template_discrepancy, validate_template, window_discrepancies,
)

# %%
spec = GadgetSpec(3, "Case2a")
k1, k2 = build_K1_K2(spec)
print(validate_template(k2))
print("K2 multiplicities", sorted((k for _, k in k2.members), reverse=True))
print(template_discrepancy(k1), template_discrepancy(k2))

# %% [markdown]
# The full sweep over r = 3..8 checks every row against its closed form.

# %%
rows = sweep(3, 8)
print(CSV_HEADER)
for row in rows[:6]:
    print(row.as_csv())
print(len(rows), "rows, all match:", all(r.match for r in rows))
print(evaluate_gadget(GadgetSpec(6, "Case1", 2)).as_csv())

# %% [markdown]
# Hamilton windows: on K_5, the five windows of three consecutive vertices
# give a template. Structured labelings give the same total for every cycle
# order; a labeling that breaks the swap identity does not.

# %%
k5 = Graph.complete(5)
star = EdgeLabeling(k5, {e: (1 if 0 in e else -1) for e in k5.edges()})
print(set(window_discrepancies(star, 3).values()))
odd = EdgeLabeling(k5, {e: (-1 if e == (0, 1) else 1) for e in k5.edges()})
c1, c2 = find_discrepant_swap(odd, 3)
for c in (c1, c2):
    print(c, template_discrepancy(hamilton_window_template(odd, c, 3)))
