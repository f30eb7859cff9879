# %% [markdown]
# Blow-ups and the coniveau tables
# ================================
#
# Blow up P^3 along a genus-2 curve and check that the coniveau class obeys
# the blow-up relation [Bl] - [E] = [X] - [Z].

# %%
from coniveau import blowup_table, builtin_curve, builtin_projspace, exceptional_table, fp, lam, nu

X, Z, c = builtin_projspace(3), builtin_curve(2), 2
bl = blowup_table(X, Z, c)
E = exceptional_table(Z, c, X.dim)
print(bl)
print()
print(E)

# %%
print("nu relation holds:     ", nu(bl) - nu(E) == nu(X) - nu(Z))
print("lambda relation holds: ", lam(bl) - lam(E) == lam(X) - lam(Z))
print("FP of the blow-up:     ", fp(nu(bl)))

# %% [markdown]
# Products are Kunneth convolutions.  With a mixed-Tate factor the result is
# exact; two curves give a flagged table.

# %%
from coniveau import product_table

print(product_table(builtin_projspace(1), Z).soundness)
print(product_table(builtin_curve(1), builtin_curve(1)).soundness)
