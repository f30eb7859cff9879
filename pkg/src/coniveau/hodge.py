"""Exact arithmetic in K(HS) and K(FHS).

A filtered class is stored through its associated graded pieces: a map
``(step, atom) -> multiplicity`` where ``step`` is the filtration index p of
Gr^p.  Filtered polarizable Hodge structures split, so the graded data
determines the class and equality is plain comparison of canonical forms.

Atoms are either Tate structures ``Q(-k)`` or named pure structures given by
their Hodge numbers.  Tensoring two named atoms yields a *composite* pseudo-atom
(``simple=False``); composites are not basis elements of K(HS) and their level
placement under :func:`gamma` is only a lower bound, which is reported through
the ``warnings`` attached to filtered classes.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from coniveau._zmodule import ZModuleElement

TATE = "tate"
NAMED = "named"

COMPOSITE_LEVEL_WARNING = (
    "composite-level: level placement of a tensor pseudo-atom uses its least Hodge "
    "index; the true level filtration may be finer"
)


@dataclass(frozen=True)
class HodgeAtom:
    """A pure polarizable Hodge structure symbol.

    ``hodge`` is a sorted tuple of ``((a, b), multiplicity)`` pairs.  Equality
    ignores ``simple``: it is implied by the identifier.
    """

    kind: str
    identifier: str
    weight: int
    hodge: tuple
    simple: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.kind not in (TATE, NAMED):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if not self.hodge:
            raise ValueError("atom must have positive total dimension")
        numbers = dict(self.hodge)
        if len(numbers) != len(self.hodge):
            raise ValueError("duplicate Hodge index")
        for (a, b), m in numbers.items():
            if not isinstance(m, int) or m <= 0:
                raise ValueError(f"Hodge number h^{{{a},{b}}} must be a positive integer, got {m!r}")
            if a + b != self.weight:
                raise ValueError(f"Hodge index ({a},{b}) does not have weight {self.weight}")
            if numbers.get((b, a)) != m:
                raise ValueError(f"Hodge numbers not symmetric at ({a},{b})")
        if self.kind == TATE:
            k = self.weight // 2
            if self.weight % 2 or numbers != {(k, k): 1}:
                raise ValueError("Tate atom must be one-dimensional of type (k,k)")

    @property
    def hodge_numbers(self) -> dict:
        return dict(self.hodge)

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.hodge)

    @property
    def least_index(self) -> int:
        """Smallest a with h^{a, w-a} != 0."""
        return min(a for (a, _), _ in self.hodge)

    @property
    def is_tate(self) -> bool:
        return self.kind == TATE

    @property
    def tate_index(self) -> int:
        if not self.is_tate:
            raise ValueError(f"{self} is not a Tate atom")
        return self.weight // 2

    def twist(self, k: int) -> HodgeAtom:
        """Tensor with Q(-k)."""
        if k == 0:
            return self
        if self.is_tate:
            return tate(self.tate_index + k)
        shifted = tuple(sorted(((a + k, b + k), m) for (a, b), m in self.hodge))
        return HodgeAtom(NAMED, self.identifier, self.weight + 2 * k, shifted, self.simple)

    def sort_key(self):
        return (self.weight, self.kind != TATE, self.identifier, self.hodge)

    def __str__(self) -> str:
        if self.is_tate:
            return f"Q({-self.tate_index})"
        return f"{self.identifier}<w{self.weight}>"


def tate(k: int) -> HodgeAtom:
    """The Tate structure Q(-k): weight 2k, type (k, k)."""
    return HodgeAtom(TATE, "Q", 2 * k, (((k, k), 1),))


def named(identifier: str, hodge_numbers: Mapping, weight: int | None = None, simple: bool = True) -> HodgeAtom:
    if not identifier or any(ch.isspace() for ch in identifier):
        raise ValueError(f"invalid atom identifier {identifier!r}")
    hodge = tuple(sorted((tuple(k), m) for k, m in hodge_numbers.items() if m))
    if weight is None:
        if not hodge:
            raise ValueError("atom must have positive total dimension")
        weight = sum(hodge[0][0])
    return HodgeAtom(NAMED, identifier, weight, hodge, simple)


def atom_tensor(a: HodgeAtom, b: HodgeAtom) -> HodgeAtom:
    if a.is_tate:
        return b.twist(a.tate_index)
    if b.is_tate:
        return a.twist(b.tate_index)
    conv: dict = defaultdict(int)
    for (a1, b1), m1 in a.hodge:
        for (a2, b2), m2 in b.hodge:
            conv[(a1 + a2, b1 + b2)] += m1 * m2
    factors = sorted(a.identifier.split("*") + b.identifier.split("*"))
    return HodgeAtom(NAMED, "*".join(factors), a.weight + b.weight, tuple(sorted(conv.items())), simple=False)


class HodgeClass(ZModuleElement):
    """Element of K(HS): atom -> integer multiplicity."""

    __slots__ = ()

    def __init__(self, coeffs: Mapping | Iterable = ()):
        super().__init__(coeffs)
        for atom in self._coeffs:
            if not isinstance(atom, HodgeAtom):
                raise TypeError(f"HodgeClass keys must be HodgeAtom, got {atom!r}")

    @classmethod
    def of(cls, atom: HodgeAtom, n: int = 1) -> HodgeClass:
        return cls({atom: n})

    def atoms(self) -> list[HodgeAtom]:
        return sorted(self._coeffs, key=HodgeAtom.sort_key)

    def twist(self, k: int) -> HodgeClass:
        return HodgeClass((a.twist(k), m) for a, m in self.items())

    def dimension(self) -> int:
        return sum(a.dimension * m for a, m in self.items())

    def __str__(self) -> str:
        if not self:
            return "0"
        out = ""
        for n, a in enumerate(self.atoms()):
            m = self[a]
            body = str(a) if abs(m) == 1 else f"{abs(m)}*{a}"
            if n == 0:
                out = ("-" if m < 0 else "") + body
            else:
                out += (" - " if m < 0 else " + ") + body
        return out


class FilteredHodgeClass(ZModuleElement):
    """Element of K(FHS) stored as its associated graded: (step, atom) -> multiplicity.

    ``warnings`` records soundness caveats picked up along the way; they take
    no part in equality and are merged by every binary operation.
    """

    __slots__ = ("warnings",)

    def __init__(self, coeffs: Mapping | Iterable = (), warnings: Iterable[str] = ()):
        super().__init__(coeffs)
        for key in self._coeffs:
            if not (isinstance(key, tuple) and len(key) == 2 and isinstance(key[0], int)
                    and isinstance(key[1], HodgeAtom)):
                raise TypeError(f"FilteredHodgeClass keys must be (int, HodgeAtom), got {key!r}")
        object.__setattr__(self, "warnings", frozenset(warnings))

    @classmethod
    def from_steps(cls, steps: Mapping[int, HodgeClass], warnings: Iterable[str] = ()) -> FilteredHodgeClass:
        return cls((((p, a), m) for p, h in steps.items() for a, m in h.items()), warnings)

    def _derive(self, coeffs):
        return FilteredHodgeClass(coeffs, self.warnings)

    def _derive_pair(self, other, coeffs):
        return FilteredHodgeClass(coeffs, self.warnings | other.warnings)

    def with_warnings(self, warnings: Iterable[str]) -> FilteredHodgeClass:
        return FilteredHodgeClass(self.items(), self.warnings | frozenset(warnings))

    @property
    def flagged(self) -> bool:
        return bool(self.warnings)

    def steps(self) -> dict[int, HodgeClass]:
        acc: dict = defaultdict(list)
        for (p, a), m in self.items():
            acc[p].append((a, m))
        return {p: HodgeClass(acc[p]) for p in sorted(acc)}

    def step(self, p: int) -> HodgeClass:
        return HodgeClass((a, m) for (q, a), m in self.items() if q == p)

    def __str__(self) -> str:
        if not self:
            return "0"
        return ", ".join(f"Gr^{p}: {h}" for p, h in self.steps().items())


class FPPolynomial(ZModuleElement):
    """Integer Laurent polynomial in t, u: (i, p) -> coefficient of t^i u^p."""

    __slots__ = ()

    def terms(self) -> list[tuple[int, int, int]]:
        return [(i, p, c) for (i, p), c in sorted(self.items())]

    def t_degree(self) -> int | None:
        return max((i for i, _ in self.support()), default=None)

    def above(self, bound: int) -> FPPolynomial:
        """Keep only t-degrees strictly greater than ``bound``."""
        return FPPolynomial((k, c) for k, c in self.items() if k[0] > bound)

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for i, p, c in self.terms():
            mono = "*".join(s for s in (_power("t", i), _power("u", p)) if s)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _power(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


# --- the unit and the Lefschetz class ------------------------------------

UNIT = FilteredHodgeClass({(0, tate(0)): 1})


def lefschetz_class(k: int = 1) -> FilteredHodgeClass:
    """K^k: the Tate structure Q(-k) sitting in filtration step k (k may be negative)."""
    return FilteredHodgeClass({(k, tate(k)): 1})


K = lefschetz_class(1)


# --- operations ------------------------------------------------------------

def hc_add(a: HodgeClass, b: HodgeClass) -> HodgeClass:
    return a + b


def fhc_add(a: FilteredHodgeClass, b: FilteredHodgeClass) -> FilteredHodgeClass:
    return a + b


def fhc_tensor(a: FilteredHodgeClass, b: FilteredHodgeClass) -> FilteredHodgeClass:
    """Product with the tensor filtration N^p = sum_{r+s=p} N^r (x) N^s, on graded pieces."""
    out = []
    for (r, x), m in a.items():
        for (s, y), n in b.items():
            out.append(((r + s, atom_tensor(x, y)), m * n))
    return FilteredHodgeClass(out, a.warnings | b.warnings)


def tate_twist(x: FilteredHodgeClass, k: int) -> FilteredHodgeClass:
    return FilteredHodgeClass((((p + k, a.twist(k)), m) for (p, a), m in x.items()), x.warnings)


def gamma(h: HodgeClass) -> FilteredHodgeClass:
    """Level filtration: a simple structure lies entirely in step c = least Hodge index."""
    composite = any(not a.simple for a in h.support())
    return FilteredHodgeClass(
        (((a.least_index, a), m) for a, m in h.items()),
        [COMPOSITE_LEVEL_WARNING] if composite else [],
    )


def phi(x: FilteredHodgeClass) -> HodgeClass:
    return HodgeClass((a, m) for (_, a), m in x.items())


def graded_dims(x: FilteredHodgeClass) -> FPPolynomial:
    """Signed dimensions of the graded pieces, keyed (weight, step)."""
    return FPPolynomial(((a.weight, p), m * a.dimension) for (p, a), m in x.items())


def fp(x: FilteredHodgeClass) -> FPPolynomial:
    """Filtered Poincare polynomial: coefficient (i, p) = dim N^p H^i for p >= 0.

    N^p is the sum of the graded pieces at steps q >= p; N^0 is everything.
    """
    out = []
    for (q, a), m in x.items():
        d = m * a.dimension
        for p in range(0, q + 1):
            out.append(((a.weight, p), d))
    return FPPolynomial(out)


def poincare(h: HodgeClass) -> FPPolynomial:
    return FPPolynomial(((a.weight, 0), m * a.dimension) for a, m in h.items())


def fhc_weight_truncate(x: FilteredHodgeClass, m: int) -> FilteredHodgeClass:
    """Project modulo L^m: drop every atom of weight <= -m."""
    return FilteredHodgeClass(((k, c) for k, c in x.items() if k[1].weight > -m), x.warnings)
