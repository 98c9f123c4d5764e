# %% [markdown]
# # Invariant monomials and circuits
#
# The torus of the contracted graph acts on k[[X_e, Y_e]]/(X_e Y_e).  A
# monomial is invariant when its exponent vector, read as a flow, has no
# net outflow at any vertex.  Here a brute-force search is compared with
# products of oriented circuits on a triangle with one doubled edge.

# %%
from jacloc import MultiGraph, hilbert_samuel, invariant_monomials_upto, multiplicity
from jacloc.toric import monoid_truncation, monomial_strings

g = MultiGraph(["a", "b", "c"], [("x1", "a", "b"), ("y", "b", "c"), ("z", "c", "a"), ("x2", "a", "b")])

# %%
brute = {m.signed for m in invariant_monomials_upto(g, 4)}
circuit_products = monoid_truncation(g, 4)
print(len(brute), brute == circuit_products)
print(monomial_strings(g, sorted(brute, key=lambda v: (sum(map(abs, v)), v)))[:12])

# %% [markdown]
# The generators have degrees 2 and 3, so the maximal ideal is not
# generated in a single degree.  The Hilbert-Samuel function is counted
# by longest factorizations instead.

# %%
print(hilbert_samuel(g, 8))
print(multiplicity(g))
