# %% [markdown]
# The filtered Poincare criterion
# ===============================
#
# GHC(H^i, p) holds when the t^i u^p coefficients of FP(coniveau) and
# FP(level) agree.  X_bad is a synthetic threefold whose H^3 of type
# (2,1)+(1,2) was recorded at coniveau 0 although its level is 1.

# %%
from pathlib import Path

from coniveau import Registry, ghc_check, kernel_check, load_table, normalize

fixtures = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
reg = Registry()
load_table(fixtures / "x_bad.tbl", reg)
reg.freeze()

report = ghc_check(normalize("X_bad", reg), reg)
print(report.text())
print("in ker(nu - lambda):", kernel_check(normalize("X_bad", reg), reg))

# %%
for text in ["P3", "blowup(P3, curve(2), 2)", "prod(curve(1), curve(1))"]:
    print(f"{text:28s}", ghc_check(normalize(text)).overall)
