# %% [markdown]
# # Stability on the dollar-sign curve
#
# Two rational components meeting in three nodes.  A stability parameter
# phi = (phi_1, -phi_1) decides which line-bundle multidegrees are stable.

# %%
from fractions import Fraction

from jacloc import (
    PhiParameter,
    Polarization,
    SheafDatum,
    count_stable_line_multidegrees,
    dollar_sign_curve,
    phi_polystable,
    phi_semistable,
    phi_to_polarization,
    slope_to_phi,
)

c = dollar_sign_curve()

# %%
for phi1 in (Fraction(0), Fraction(1, 6), Fraction(1, 2), Fraction(2, 3)):
    phi = PhiParameter.of({"v1": phi1, "v2": -phi1})
    stable, semi = count_stable_line_multidegrees(c, phi)
    print(f"phi_1={str(phi1):>4}  stable={[d['v1'] for d in stable]}  "
          f"strictly semistable={[d['v1'] for d in semi]}")

# %% [markdown]
# Three components for generic phi, two when phi_1 is a half-integer.
# A polarization L = (a, b) gives phi_1 = -1/2 + b/(a+b); the inverse
# conversion recovers some (L, M, d) with the same phi.

# %%
phi = slope_to_phi(c, Polarization({"v1": 1, "v2": 2}))
print({v: str(x) for v, x in phi.value.items()})
L, M, d = phi_to_polarization(c, phi)
print(dict(L.component_degree), dict(M.component_degree), d)
assert slope_to_phi(c, L, M, d) == phi

# %% [markdown]
# On the wall phi_1 = 1/2 the sheaf failing to be free at all three nodes,
# with degrees (-1, -2) on the components, is strictly semistable and
# splits as a direct sum over the two components.

# %%
half = PhiParameter.of({"v1": Fraction(1, 2), "v2": Fraction(-1, 2)})
s = SheafDatum({"v1": -1, "v2": -2}, {"e1", "e2", "e3"})
print(phi_semistable(c, s, half).status.value)
print(phi_polystable(c, s, half).partition)
