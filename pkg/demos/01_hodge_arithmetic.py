# %% [markdown]
# Filtered Hodge classes
# ======================
#
# Classes in K(FHS) are stored through their graded pieces Gr^p.  This script
# builds a few by hand, multiplies them with the tensor filtration, and reads
# off filtered Poincare polynomials.

# %%
from coniveau import K, UNIT, FilteredHodgeClass, HodgeClass, fhc_tensor, fp, gamma, named, phi, tate

S1 = named("S_1", {(1, 0): 1, (0, 1): 1})   # H^1 of an elliptic curve
print("S_1 has weight", S1.weight, "dimension", S1.dimension, "least Hodge index", S1.least_index)

# %% [markdown]
# The Lefschetz class K is Q(-1) sitting in step 1.  Tensoring twists every
# atom and shifts every step by one.

# %%
x = FilteredHodgeClass.from_steps({0: HodgeClass({S1: 1})})
print("K (x) x   =", fhc_tensor(K, x))
print("K (x) K   =", fhc_tensor(K, K))
print("FP(1 + K) =", fp(UNIT + K))

# %% [markdown]
# gamma places a simple structure at its least Hodge index; phi forgets the
# filtration again.

# %%
h = HodgeClass({tate(0): 1, S1: -2, tate(1): 1})
print("gamma(h)      =", gamma(h))
print("phi(gamma(h)) == h:", phi(gamma(h)) == h)

# %% [markdown]
# S_1 (x) S_1 is not simple.  Its level placement is only a lower bound, and
# the result says so.

# %%
comp = fhc_tensor(x, x)
print(comp, "| warnings:", sorted(gamma(phi(comp)).warnings))
