"""Deciding the filtered-Poincare criterion for the generalized Hodge conjecture.

For a smooth projective X the coefficient of t^i u^p in FP of the coniveau
class is (-1)^i dim N^p H^i, and in FP of the level class it is
(-1)^i dim F~^p H^i; GHC(H^i, p) holds exactly when the two agree.  For
virtual classes the per-cell reading can be blurred by cancellation between
generators; such cells are listed in ``mixed_sign_cells``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from coniveau.hodge import FilteredHodgeClass, FPPolynomial, fp
from coniveau.motivic import (
    MotivicClass,
    Registry,
    mc_equal_mod,
    mc_truncate,
    realize_lambda,
    realize_nu,
)
from coniveau.varieties import VarietyTable, lam, nu

HOLDS = "criterion-holds"
FAILS = "criterion-fails"
FLAGGED = "heuristic-flagged"

TRANSFER_VALID = "transfer-valid"
NO_TRANSFER = "no-transfer-established"


@dataclass(frozen=True)
class Failure:
    i: int
    p: int
    dim_coniveau: int
    dim_level: int


@dataclass(frozen=True)
class GhcReport:
    overall: str
    failures: tuple[Failure, ...]
    fp_nu: FPPolynomial
    fp_lambda: FPPolynomial
    precision: int | None = None
    caveats: tuple[str, ...] = ()
    mixed_sign_cells: tuple[tuple[int, int], ...] = ()

    @property
    def failing_pairs(self) -> set[tuple[int, int]]:
        return {(f.i, f.p) for f in self.failures}

    def machine_lines(self) -> list[str]:
        lines = [f"ghc {self.overall}"]
        lines += [f"fail {f.i} {f.p} {f.dim_coniveau} {f.dim_level}" for f in self.failures]
        return lines

    def text(self) -> str:
        lines = [f"verdict: {self.overall}"]
        if self.precision is not None:
            lines.append(f"precision: t-degrees > {-self.precision}")
        lines.append(f"FP coniveau: {self.fp_nu}")
        lines.append(f"FP level:    {self.fp_lambda}")
        for f in self.failures:
            lines.append(f"  GHC(H^{f.i}, {f.p}) fails: dim N^{f.p} = {f.dim_coniveau}, "
                         f"dim F~^{f.p} = {f.dim_level}")
        for i, p in self.mixed_sign_cells:
            lines.append(f"  note: coefficient of t^{i} u^{p} mixes contributions of both signs")
        for c in self.caveats:
            lines.append(f"  caveat: {c}")
        return "\n".join(lines)


def _mixed_sign_cells(x: MotivicClass, registry: Registry) -> tuple[tuple[int, int], ...]:
    signs: dict = {}
    for term, coef in x.items():
        single = realize_nu(MotivicClass({term: coef}), registry)
        for (i, p), c in fp(single).items():
            signs.setdefault((i, p), set()).add(c > 0)
    return tuple(sorted(k for k, s in signs.items() if len(s) > 1))


def _report(x_nu: FilteredHodgeClass, x_lam: FilteredHodgeClass, precision: int | None,
            mixed: tuple = ()) -> GhcReport:
    f_nu, f_lam = fp(x_nu), fp(x_lam)
    if precision is not None:
        f_nu, f_lam = f_nu.above(-precision), f_lam.above(-precision)
    failures = []
    for i, p in sorted(set(f_nu.support()) | set(f_lam.support())):
        a, b = f_nu[(i, p)], f_lam[(i, p)]
        if a != b:
            sign = (-1) ** i
            failures.append(Failure(i, p, sign * a, sign * b))
    caveats = tuple(sorted(x_nu.warnings | x_lam.warnings))
    if caveats:
        overall = FLAGGED
    elif failures:
        overall = FAILS
    else:
        overall = HOLDS
    return GhcReport(overall, tuple(failures), f_nu, f_lam, precision, caveats, mixed)


def realizations(x: MotivicClass | VarietyTable, registry: Registry | None = None):
    if isinstance(x, VarietyTable):
        return nu(x), lam(x)
    registry = registry or Registry()
    return realize_nu(x, registry), realize_lambda(x, registry)


def ghc_check(x: MotivicClass | VarietyTable, registry: Registry | None = None,
              precision: int | None = None) -> GhcReport:
    """Compare FP of the coniveau and level realizations cell by cell."""
    registry = registry or Registry()
    x_nu, x_lam = realizations(x, registry)
    mixed = ()
    if isinstance(x, MotivicClass) and len(x) > 1:
        mixed = _mixed_sign_cells(x, registry)
    return _report(x_nu, x_lam, precision, mixed)


def kernel_check(x: MotivicClass | VarietyTable, registry: Registry | None = None) -> bool:
    """True iff the class lies in ker(nu - lambda)."""
    x_nu, x_lam = realizations(x, registry)
    return x_nu == x_lam


@dataclass(frozen=True)
class TransferReport:
    verdict: str
    classes_equal: bool
    difference: MotivicClass
    report_a: GhcReport
    report_b: GhcReport
    precision: int | None = None
    notes: tuple[str, ...] = field(default=())

    def machine_lines(self) -> list[str]:
        lines = [f"transfer {self.verdict}",
                 f"classes {'equal' if self.classes_equal else 'unequal'}",
                 f"ghc-a {self.report_a.overall}",
                 f"ghc-b {self.report_b.overall}"]
        if not self.classes_equal:
            lines += self.difference.machine_lines()
        return lines

    def text(self) -> str:
        scope = "exactly" if self.precision is None else f"modulo F^{self.precision}"
        lines = [f"classes {'equal' if self.classes_equal else 'not identified'} {scope}"]
        if not self.classes_equal:
            lines.append(f"difference: {self.difference}")
        lines.append(f"first:  {self.report_a.overall}")
        lines.append(f"second: {self.report_b.overall}")
        lines.append(f"verdict: {self.verdict}")
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def ghc_transfer(a: MotivicClass, b: MotivicClass, m: int | None = None,
                 registry: Registry | None = None) -> TransferReport:
    """If a = b modulo F^m, the criterion verdicts agree in t-degrees > -m."""
    registry = registry or Registry()
    diff = a - b if m is None else mc_truncate(a - b, m)
    equal = mc_equal_mod(a, b, m)
    ra, rb = ghc_check(a, registry, m), ghc_check(b, registry, m)
    notes = []
    if not equal:
        return TransferReport(NO_TRANSFER, False, diff, ra, rb, m, ("classes differ in the fragment",))
    consistent = (ra.fp_nu == rb.fp_nu and ra.fp_lambda == rb.fp_lambda
                  and ra.failing_pairs == rb.failing_pairs)
    if not consistent:
        # Equal classes must have equal realizations; reaching this is a bug.
        raise AssertionError("equal classes with different FP realizations")
    if ra.caveats or rb.caveats:
        notes.append("realizations carry heuristic flags; verdicts are not certified")
    return TransferReport(TRANSFER_VALID, True, diff, ra, rb, m, tuple(notes))
