# %% [markdown]
# # A curve with one node
#
# An irreducible curve of arithmetic genus g with a single node has a dual
# graph with one vertex (of genus g - 1) and one loop.  The sheaves that
# fail to be locally free at the node give the singular points of the
# compactified Jacobian.

# %%
from jacloc import SheafDatum, local_report, one_node_curve, presentation

# %%
for g in range(1, 6):
    c = one_node_curve(g)
    r = local_report(c, SheafDatum({"v": 0}, {"e"}))
    print(f"g={g}  dim={r.local_dimension}  edim={r.embedding_dimension}  "
          f"mult={r.multiplicity}  branches={r.component_count}  smooth={r.smooth}")

# %% [markdown]
# The local ring is k[[X, Y]]/(XY) times a power series ring in g - 1
# variables: two branches crossing transversally.

# %%
c = one_node_curve(3)
p = presentation(c, SheafDatum({"v": 0}, {"e"}), "R_I")
print([v.symbol for v in p.variables])
print([str(r) for r in p.relations])

# %% [markdown]
# In the universal family the node can also be smoothed, and XY = T
# makes the point smooth again.

# %%
r = local_report(c, SheafDatum({"v": 0}, {"e"}), mode="universal")
print(r.local_dimension, r.embedding_dimension, r.smooth)
