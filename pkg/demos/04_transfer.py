# %% [markdown]
# Transferring the criterion between equal classes
# ================================================
#
# The blow-up of P^2 in a point and P^1 x P^1 are different surfaces with the
# same class 1 + 2L + L^2, so their verdicts must agree.  Working modulo F^m
# only constrains cohomological degrees above -m.

# %%
from coniveau import ghc_transfer, mc_truncate, normalize

a, b = normalize("blowup(P2, point, 2)"), normalize("prod(P1, P1)")
print("[Bl_pt P2] =", a)
print("[P1 x P1]  =", b)
print(ghc_transfer(a, b, 10).text())

# %%
print(ghc_transfer(normalize("P2"), b, 10).text())

# %% [markdown]
# Truncation drops terms of virtual dimension <= -m.

# %%
x = normalize("1 + L^-5")
print(mc_truncate(x, 5), "|", mc_truncate(x, 6))
