# %% [markdown]
# # Two components meeting in n nodes
#
# Take two rational components glued at n points and a sheaf that fails to
# be locally free at every node.  The contracted graph is the n-edge
# "banana" and everything below is read off from it.

# %%
from math import comb

import numpy as np

from jacloc import (
    SheafDatum,
    gamma_of,
    hilbert_samuel,
    local_report,
    oriented_circuits,
    totally_cyclic_orientations,
    two_component_curve,
)

# %%
rows = []
for n in range(2, 7):
    c = two_component_curve(n)
    s = SheafDatum({"v1": 0, "v2": 0}, {f"e{i}" for i in range(1, n + 1)})
    gamma = gamma_of(c, s)
    r = local_report(c, s)
    rows.append((n, len(totally_cyclic_orientations(gamma)), len(oriented_circuits(gamma)),
                 r.embedding_dimension, r.multiplicity))
    print(f"n={n}  branches={rows[-1][1]}  circuits={rows[-1][2]}  "
          f"edim={r.embedding_dimension}  mult={r.multiplicity}")

# %% [markdown]
# Branches are the 2^n - 2 totally cyclic orientations, circuits come in
# n(n-1) oriented pairs, and the multiplicity is the central binomial
# coefficient C(2n-2, n-1): summing the normalized volumes of the cones
# cut out by each sign pattern.

# %%
table = np.array(rows)
assert (table[:, 1] == 2 ** table[:, 0] - 2).all()
assert all(m == comb(2 * n - 2, n - 1) for n, *_, m in rows)

# %% [markdown]
# The Hilbert-Samuel function for n = 4.  Its third differences settle at
# the multiplicity.

# %%
gamma = gamma_of(two_component_curve(4), SheafDatum({"v1": 0, "v2": 0}, {"e1", "e2", "e3", "e4"}))
hs = np.array(hilbert_samuel(gamma, 10))
print(hs)
print(np.diff(hs, 3))
