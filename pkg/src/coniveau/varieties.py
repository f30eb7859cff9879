"""Cohomology tables with coniveau data and the constructions that act on them.

A :class:`VarietyTable` records, for each degree i and coniveau step p, the
Hodge class of Gr^p_N H^i.  Built-in tables cover the point, projective
spaces and one generic curve per genus; everything else is either loaded from
a file or produced by :func:`exceptional_table`, :func:`blowup_table` and
:func:`product_table`.  Blow-ups are formal: only the tables of X and Z and the
codimension enter, no embedding is checked.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from coniveau.errors import ConstraintError, InputError
from coniveau.hodge import (
    FilteredHodgeClass,
    HodgeAtom,
    HodgeClass,
    atom_tensor,
    gamma,
    named,
    phi,
    tate,
)

BUILTIN = "builtin"
LOADED = "loaded"
CONSTRUCTED = "constructed"

EXACT = "exact"
TENSOR_HEURISTIC = "tensor-heuristic"

TENSOR_WARNING = (
    "tensor-heuristic: product of two factors that are not mixed-Tate; "
    "the coniveau/level of the product is not known to be given by the tensor filtration"
)


class VarietyTable:
    """Graded coniveau data of a smooth projective variety.

    ``cells`` maps ``(i, p)`` to the HodgeClass of Gr^p_N H^i.  Equality and
    hashing use ``name``, ``dim``, the cells and the soundness flag;
    ``provenance`` is informational.
    """

    __slots__ = ("name", "dim", "_cells", "provenance", "soundness")

    def __init__(self, name: str, dim: int, cells: Mapping[tuple[int, int], HodgeClass],
                 provenance: str = CONSTRUCTED, soundness: str = EXACT):
        if dim < 0:
            raise InputError(f"dimension must be >= 0, got {dim}")
        clean = {}
        for key, h in cells.items():
            if h:
                clean[(int(key[0]), int(key[1]))] = h
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_cells", dict(sorted(clean.items())))
        object.__setattr__(self, "provenance", provenance)
        object.__setattr__(self, "soundness", soundness)

    @classmethod
    def from_entries(cls, name: str, dim: int, entries: Iterable[tuple[int, int, HodgeAtom, int]],
                     provenance: str = CONSTRUCTED, soundness: str = EXACT) -> VarietyTable:
        acc: dict = defaultdict(list)
        for i, p, atom, mult in entries:
            acc[(i, p)].append((atom, mult))
        return cls(name, dim, {k: HodgeClass(v) for k, v in acc.items()}, provenance, soundness)

    def __setattr__(self, key, value):
        raise AttributeError("VarietyTable is immutable")

    @property
    def cells(self) -> Mapping[tuple[int, int], HodgeClass]:
        return MappingProxyType(self._cells)

    def cell(self, i: int, p: int) -> HodgeClass:
        return self._cells.get((i, p), HodgeClass())

    def degree(self, i: int) -> HodgeClass:
        return sum((h for (j, _), h in self._cells.items() if j == i), HodgeClass())

    def entries(self):
        """Yield (i, p, atom, multiplicity) in a fixed order."""
        for (i, p), h in self._cells.items():
            for atom in h.atoms():
                yield i, p, atom, h[atom]

    @property
    def is_mixed_tate(self) -> bool:
        return all(atom.is_tate for _, _, atom, _ in self.entries())

    @property
    def is_exact(self) -> bool:
        return self.soundness == EXACT

    def renamed(self, name: str, provenance: str | None = None) -> VarietyTable:
        return VarietyTable(name, self.dim, self._cells, provenance or self.provenance, self.soundness)

    def __eq__(self, other):
        if not isinstance(other, VarietyTable):
            return NotImplemented
        return (self.name, self.dim, self._cells, self.soundness) == (
            other.name, other.dim, other._cells, other.soundness)

    def __hash__(self):
        return hash((self.name, self.dim, frozenset(self._cells.items()), self.soundness))

    def __repr__(self):
        return f"VarietyTable({self.name!r}, dim={self.dim}, cells={len(self._cells)}, {self.soundness})"

    def __str__(self):
        lines = [f"{self.name} (dim {self.dim}, {self.provenance}, {self.soundness})"]
        for (i, p), h in self._cells.items():
            lines.append(f"  H^{i} Gr^{p}: {h}")
        return "\n".join(lines)


# --- built-in generators -----------------------------------------------------

def curve_atom(g: int) -> HodgeAtom:
    """H^1 of the generic genus-g curve: weight 1, h^{1,0} = h^{0,1} = g."""
    return named(f"S_{g}", {(1, 0): g, (0, 1): g}, weight=1)


def builtin_point() -> VarietyTable:
    return VarietyTable.from_entries("point", 0, [(0, 0, tate(0), 1)], BUILTIN)


def builtin_projspace(n: int) -> VarietyTable:
    if n < 0:
        raise InputError(f"projective space dimension must be >= 0, got {n}")
    return VarietyTable.from_entries(f"P{n}", n, [(2 * i, i, tate(i), 1) for i in range(n + 1)], BUILTIN)


def builtin_curve(g: int) -> VarietyTable:
    # N^1 H^1 = 0: restriction of H^1 to the complement of finitely many points is injective.
    if g < 0:
        raise InputError(f"genus must be >= 0, got {g}")
    entries = [(0, 0, tate(0), 1), (2, 1, tate(1), 1)]
    if g > 0:
        entries.append((1, 0, curve_atom(g), 1))
    return VarietyTable.from_entries(f"curve({g})", 1, entries, BUILTIN)


# --- constructions ---------------------------------------------------------

def _check_codim(center_dim: int, c: int, ambient_dim: int) -> None:
    if c < 2:
        raise ConstraintError(f"blow-up center must have codimension >= 2, got {c}")
    if center_dim + c != ambient_dim:
        raise ConstraintError(
            f"dimension mismatch: dim center {center_dim} + codim {c} != dim ambient {ambient_dim}")


def _soundness(*tables: VarietyTable) -> str:
    return EXACT if all(t.is_exact for t in tables) else TENSOR_HEURISTIC


def _strands(Z: VarietyTable, ks: Iterable[int]):
    for k in ks:
        for i, p, atom, m in Z.entries():
            yield i + 2 * k, p + k, atom.twist(k), m


def exceptional_table(Z: VarietyTable, c: int, ambient_dim: int) -> VarietyTable:
    """Table of E = P(N_{Z/X}): Gr^p H^i(E) = sum_{k=0}^{c-1} Gr^{p-k} H^{i-2k}(Z)(-k)."""
    _check_codim(Z.dim, c, ambient_dim)
    r = c - 1
    return VarietyTable.from_entries(f"E({Z.name},{c})", Z.dim + r, _strands(Z, range(r + 1)),
                                     CONSTRUCTED, _soundness(Z))


def blowup_table(X: VarietyTable, Z: VarietyTable, c: int) -> VarietyTable:
    """Table of Bl_Z X, forced by graded exactness Gr(Bl) + Gr(Z) = Gr(X) + Gr(E)."""
    _check_codim(Z.dim, c, X.dim)
    entries = list(X.entries()) + list(_strands(Z, range(1, c)))
    return VarietyTable.from_entries(f"Bl({X.name},{Z.name},{c})", X.dim, entries,
                                     CONSTRUCTED, _soundness(X, Z))


def product_table(X: VarietyTable, Y: VarietyTable) -> VarietyTable:
    """Kunneth convolution of graded pieces; exact only when a factor is mixed-Tate."""
    entries = [
        (i1 + i2, p1 + p2, atom_tensor(a1, a2), m1 * m2)
        for i1, p1, a1, m1 in X.entries()
        for i2, p2, a2, m2 in Y.entries()
    ]
    sound = _soundness(X, Y)
    if not (X.is_mixed_tate or Y.is_mixed_tate):
        sound = TENSOR_HEURISTIC
    return VarietyTable.from_entries(f"{X.name}x{Y.name}", X.dim + Y.dim, entries, CONSTRUCTED, sound)


# --- realizations ------------------------------------------------------------

def _table_warnings(T: VarietyTable) -> list[str]:
    return [] if T.is_exact else [TENSOR_WARNING]


def nu(T: VarietyTable) -> FilteredHodgeClass:
    """Coniveau class: sum_i (-1)^i [(H^i, N)]."""
    return FilteredHodgeClass(
        (((p, atom), (-1) ** i * m) for i, p, atom, m in T.entries()),
        _table_warnings(T),
    )


def lam(T: VarietyTable) -> FilteredHodgeClass:
    """Level class: gamma of the underlying K(HS) class (stored coniveau steps are ignored)."""
    x = nu(T)
    return gamma(phi(x)).with_warnings(x.warnings)


def hs_class(T: VarietyTable) -> HodgeClass:
    return phi(nu(T))


# --- validation --------------------------------------------------------------

ERROR = "error"
LINT = "lint"


@dataclass(frozen=True)
class Violation:
    i: int
    p: int
    rule: str
    message: str
    severity: str = ERROR

    def __str__(self):
        return f"[{self.severity}] {self.rule} at (i={self.i}, p={self.p}): {self.message}"


def validate_table(T: VarietyTable, normalization: bool = True, poincare_duality: bool = False) -> list[Violation]:
    """Check the table invariants; returns an empty list iff all hold.

    Hard rules have severity ``error``; the connectedness normalization and the
    optional Poincare duality check are ``lint``.
    """
    out = []
    for (i, p), h in T.cells.items():
        if i < 0 or i > 2 * T.dim or p < 0 or 2 * p > i:
            out.append(Violation(i, p, "vanishing-range",
                                 f"cell outside 0 <= 2p <= i <= {2 * T.dim}"))
        for atom in h.atoms():
            m = h[atom]
            if m < 0:
                out.append(Violation(i, p, "negative-multiplicity", f"{atom} has multiplicity {m}"))
            if atom.weight != i:
                out.append(Violation(i, p, "weight-purity",
                                     f"{atom} has weight {atom.weight} != degree {i}"))
            if p > atom.least_index:
                out.append(Violation(i, p, "coniveau-exceeds-level",
                                     f"{atom} has level {atom.least_index} < coniveau step {p}"))
    if normalization:
        d = T.dim
        if T.degree(0) != HodgeClass.of(tate(0)) or T.cell(0, 0) != HodgeClass.of(tate(0)):
            out.append(Violation(0, 0, "normalization", "H^0 should be Q(0) at step 0", LINT))
        if T.degree(2 * d) != HodgeClass.of(tate(d)) or T.cell(2 * d, d) != HodgeClass.of(tate(d)):
            out.append(Violation(2 * d, d, "normalization", f"H^{2 * d} should be Q(-{d}) at step {d}", LINT))
    if poincare_duality:
        for i in range(T.dim):
            a, b = T.degree(i).dimension(), T.degree(2 * T.dim - i).dimension()
            if a != b:
                out.append(Violation(i, 0, "poincare-duality", f"b_{i} = {a} != b_{2 * T.dim - i} = {b}", LINT))
    return out


def hard_violations(violations: Iterable[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == ERROR]


# --- variety expressions -----------------------------------------------------

@dataclass(frozen=True)
class Point:
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ProjSpace:
    n: int
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Curve:
    g: int
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Blowup:
    ambient: VarietyExpr
    center: VarietyExpr
    codim: int
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Prod:
    left: VarietyExpr
    right: VarietyExpr
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Ref:
    name: str
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


VarietyExpr = Point | ProjSpace | Curve | Blowup | Prod | Ref


def _resolve(name: str, tables: Mapping[str, VarietyTable], loc) -> VarietyTable:
    try:
        return tables[name]
    except KeyError:
        raise ConstraintError(f"unknown variety {name!r} (load a table for it first)", loc) from None


def expr_dimension(e: VarietyExpr, tables: Mapping[str, VarietyTable] = MappingProxyType({})) -> int:
    """Dimension of a variety expression, checking blow-up constraints on the way."""
    match e:
        case Point():
            return 0
        case ProjSpace(n=n):
            return n
        case Curve():
            return 1
        case Ref(name=name):
            return _resolve(name, tables, e.loc).dim
        case Prod(left=a, right=b):
            return expr_dimension(a, tables) + expr_dimension(b, tables)
        case Blowup(ambient=x, center=z, codim=c):
            dx, dz = expr_dimension(x, tables), expr_dimension(z, tables)
            try:
                _check_codim(dz, c, dx)
            except ConstraintError as err:
                raise ConstraintError(str(err).removeprefix("constraint error: "), e.loc) from None
            return dx
    raise TypeError(f"not a variety expression: {e!r}")


def table_from_expr(e: VarietyExpr, tables: Mapping[str, VarietyTable] = MappingProxyType({})) -> VarietyTable:
    match e:
        case Point():
            return builtin_point()
        case ProjSpace(n=n):
            return builtin_projspace(n)
        case Curve(g=g):
            return builtin_curve(g)
        case Ref(name=name):
            return _resolve(name, tables, e.loc)
        case Prod(left=a, right=b):
            return product_table(table_from_expr(a, tables), table_from_expr(b, tables))
        case Blowup(ambient=x, center=z, codim=c):
            expr_dimension(e, tables)
            return blowup_table(table_from_expr(x, tables), table_from_expr(z, tables), c)
    raise TypeError(f"not a variety expression: {e!r}")


def format_expr(e: VarietyExpr) -> str:
    match e:
        case Point():
            return "point"
        case ProjSpace(n=n):
            return f"P{n}"
        case Curve(g=g):
            return f"curve({g})"
        case Ref(name=name):
            return name
        case Prod(left=a, right=b):
            return f"prod({format_expr(a)}, {format_expr(b)})"
        case Blowup(ambient=x, center=z, codim=c):
            return f"blowup({format_expr(x)}, {format_expr(z)}, {c})"
    raise TypeError(f"not a variety expression: {e!r}")
