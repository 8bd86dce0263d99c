# %% [markdown]
# # The command line
#
# Everything above is also reachable from `tiling-disc`. Here the entry
# point is called in-process so the output lands in the notebook.

# %%
import io

from tiling_disc.cli import main


def sh(*argv):
    buf = io.StringIO()
    code = main(list(argv), buf)
    print(buf.getvalue().rstrip())
    print("exit", code)


# %%
sh("verify-extremal", "--family", "mod03", "--r", "3", "--n", "12")
sh("verify-extremal", "--family", "mod1", "--m", "1", "--n", "60", "--samples", "50")

# %%
sh("verify-templates", "--r-min", "3", "--r-max", "3", "--scenarios", "Case2a,Case2b")

# %% [markdown]
# An exploratory scan: the fraction of random 12-vertex graphs with a given
# minimum degree that admit a triangle tiling, and the largest |discrepancy|
# a random labeling forces.

# %%
sh("threshold-scan", "--r", "3", "--n", "12", "--fractions", "0.5,0.6,0.667,1", "--samples", "40")
