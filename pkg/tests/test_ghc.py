import pytest

from coniveau.dsl import normalize
from coniveau.ghc import FAILS, FLAGGED, HOLDS, NO_TRANSFER, TRANSFER_VALID, Failure, ghc_check, ghc_transfer, kernel_check
from coniveau.motivic import L, MotivicClass
from coniveau.varieties import builtin_curve, builtin_projspace, product_table


@pytest.mark.parametrize("n", range(5))
def test_projective_space_holds(n):
    rep = ghc_check(normalize(f"P{n}"))
    assert rep.overall == HOLDS and rep.failures == ()
    assert kernel_check(normalize(f"P{n}"))
    assert ghc_check(builtin_projspace(n)).overall == HOLDS


@pytest.mark.parametrize("g", range(4))
def test_blowup_of_P3_along_curve_holds(g):
    x = normalize(f"blowup(P3, curve({g}), 2)")
    assert ghc_check(x).overall == HOLDS
    assert kernel_check(x)


def test_x_bad_fails(registry):
    x = normalize("X_bad", registry)
    rep = ghc_check(x, registry)
    assert rep.overall == FAILS
    assert rep.failures == (Failure(3, 1, 0, 2),)
    assert rep.fp_nu[(3, 1)] == 0 and rep.fp_lambda[(3, 1)] == -2
    assert not kernel_check(x, registry)
    assert ghc_check(registry.table("X_bad")).failures == rep.failures


@pytest.mark.parametrize("g", range(4))
def test_curves_in_kernel(g):
    assert kernel_check(builtin_curve(g))
    assert kernel_check(normalize(f"curve({g})"))


def test_heuristic_inputs_never_get_a_clean_verdict(registry):
    rep = ghc_check(normalize("prod(curve(1), curve(2))"))
    assert rep.overall == FLAGGED and rep.caveats
    rep = ghc_check(product_table(builtin_curve(1), builtin_curve(1)))
    assert rep.overall == FLAGGED
    rep = ghc_check(normalize("X_bad * curve(1)", registry), registry)
    assert rep.overall == FLAGGED


def test_kernel_implies_holds_and_holds_iff_fp_equal(registry):
    exprs = ["P2", "blowup(P2, point, 2)", "curve(2) * L - 3", "X_bad", "Ksurf", "Y4 + L^-1",
             "blowup(X_bad, curve(1), 2)", "blowup(Y4, point, 4)", "X_bad - X_bad + P1"]
    for text in exprs:
        x = normalize(text, registry)
        rep = ghc_check(x, registry)
        assert (rep.overall == HOLDS) == (rep.fp_nu == rep.fp_lambda)
        assert kernel_check(x, registry) == (rep.overall == HOLDS)


def test_precision_restricts_cells(registry):
    # twisting by L^-1 moves the bad H^3 atom to weight 1, coniveau step -1, level step 0
    x = normalize("X_bad * L^-1", registry)
    rep = ghc_check(x, registry)
    assert rep.overall == FAILS and rep.failing_pairs == {(1, 0)}
    assert ghc_check(x, registry, precision=0).overall == FAILS
    assert ghc_check(x, registry, precision=-1).overall == HOLDS


def test_clamped_steps_hide_deep_negative_twists(registry):
    # both placements land below step 0, which the p >= 0 clamp of FP cannot see
    x = normalize("X_bad * L^-4", registry)
    assert not kernel_check(x, registry)
    assert ghc_check(x, registry).overall == HOLDS


def test_mixed_sign_cells_reported():
    rep = ghc_check(normalize("P2 - curve(1)"))
    assert (0, 0) in rep.mixed_sign_cells
    assert "mixes contributions" in rep.text()


def test_transfer_examples():
    a, b = normalize("blowup(P2,point,2)"), normalize("prod(P1,P1)")
    for m in (None, 0, 3, 10):
        rep = ghc_transfer(a, b, m)
        assert rep.verdict == TRANSFER_VALID and rep.classes_equal
        assert rep.report_a.overall == rep.report_b.overall == HOLDS
    x = normalize("curve(2) * L + P3")
    assert ghc_transfer(x, x, 4).verdict == TRANSFER_VALID
    rep = ghc_transfer(normalize("P2"), b, 10)
    assert rep.verdict == NO_TRANSFER and not rep.classes_equal
    assert rep.difference == -L


def test_transfer_soundness_on_truncated_pairs(registry):
    base = normalize("X_bad + curve(2) * L", registry)
    for m in range(1, 5):
        tail = normalize(f"Ksurf * L^-{m + 2} - X_bad * L^-{m + 5}", registry)
        rep = ghc_transfer(base, base + tail, m, registry)
        assert rep.verdict == TRANSFER_VALID
        assert {f for f in rep.report_a.failing_pairs if f[0] > -m} == \
               {f for f in rep.report_b.failing_pairs if f[0] > -m}
        assert rep.report_a.overall == FAILS


def test_report_text_lists_polynomials(registry):
    text = ghc_check(normalize("X_bad", registry), registry).text()
    assert "FP coniveau:" in text and "FP level:" in text and "GHC(H^3, 1) fails" in text
