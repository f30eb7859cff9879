"""The computable fragment of the localized Grothendieck ring M = K^bl(Var)[L^-1].

Elements are integer combinations of terms ``monomial * L^j`` where a monomial
is a multiset of registered generator symbols.  Point and projective spaces are
expanded into polynomials in L on sight, so normal forms are unique and
equality is canonical-form equality *inside the fragment*.  Two different
normal forms only mean the classes are not identified here; relations outside
the fragment are not visible.

Completion is handled by truncation: ``mc_truncate(x, m)`` drops every term of
virtual dimension <= -m, i.e. works modulo F^m M.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from coniveau.errors import ConstraintError, InputError
from coniveau.hodge import UNIT, FilteredHodgeClass, fhc_tensor, tate_twist
from coniveau.varieties import (
    TENSOR_WARNING,
    Blowup,
    Curve,
    Point,
    Prod,
    ProjSpace,
    Ref,
    VarietyExpr,
    VarietyTable,
    builtin_curve,
    expr_dimension,
    lam,
    nu,
)

_CURVE_NAME = re.compile(r"curve\((\d+)\)\Z")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_RESERVED = re.compile(r"(L|point|curve|blowup|prod|P\d+)\Z")


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    name: str
    dimension: int

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Term:
    monomial: tuple[GeneratorSymbol, ...]
    lexp: int

    @property
    def virtual_dimension(self) -> int:
        return sum(s.dimension for s in self.monomial) + self.lexp

    def symbols_text(self) -> str:
        return "*".join(s.name for s in self.monomial) or "1"


class Registry:
    """Named generator tables.  Curves ``curve(g)`` resolve to built-in tables.

    Append-only; :meth:`freeze` makes it read-only once loading is done.
    """

    def __init__(self, tables: Iterable[VarietyTable] = ()):
        self._tables: dict[str, VarietyTable] = {}
        self._frozen = False
        for t in tables:
            self.register(t)

    def register(self, table: VarietyTable, name: str | None = None) -> GeneratorSymbol:
        name = name or table.name
        if self._frozen:
            raise InputError("registry is frozen")
        if not _IDENT.match(name) or _RESERVED.match(name):
            raise InputError(f"cannot register a variety under the name {name!r}")
        table = table if table.name == name else table.renamed(name)
        existing = self._tables.get(name)
        if existing is not None and existing != table:
            raise InputError(f"a different table is already registered as {name!r}")
        self._tables[name] = table
        return GeneratorSymbol(name, table.dim)

    def freeze(self) -> Registry:
        self._frozen = True
        return self

    @property
    def tables(self) -> Mapping[str, VarietyTable]:
        return MappingProxyType(self._tables)

    def table(self, name: str) -> VarietyTable:
        if name in self._tables:
            return self._tables[name]
        m = _CURVE_NAME.match(name)
        if m:
            return builtin_curve(int(m.group(1)))
        raise InputError(f"no table for generator {name!r}")

    def symbol(self, name: str) -> GeneratorSymbol:
        return GeneratorSymbol(name, self.table(name).dim)

    def __contains__(self, name) -> bool:
        return name in self._tables


class MotivicClass:
    """Immutable element of the fragment: Term -> integer coefficient."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping | Iterable = ()):
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for term, c in items:
            if not isinstance(term, Term):
                raise TypeError(f"MotivicClass keys must be Term, got {term!r}")
            term = Term(tuple(sorted(term.monomial)), term.lexp)
            acc[term] = acc.get(term, 0) + c
        object.__setattr__(self, "_coeffs", {t: c for t, c in sorted(acc.items()) if c})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("MotivicClass is immutable")

    @classmethod
    def one(cls) -> MotivicClass:
        return cls.lefschetz(0)

    @classmethod
    def integer(cls, n: int) -> MotivicClass:
        return cls({Term((), 0): n})

    @classmethod
    def lefschetz(cls, k: int = 1) -> MotivicClass:
        return cls({Term((), k): 1})

    @classmethod
    def generator(cls, symbol: GeneratorSymbol) -> MotivicClass:
        return cls({Term((symbol,), 0): 1})

    @classmethod
    def projective_space(cls, n: int) -> MotivicClass:
        """[P^n] = 1 + L + ... + L^n."""
        return cls({Term((), k): 1 for k in range(n + 1)})

    def items(self):
        return self._coeffs.items()

    def terms(self) -> list[Term]:
        return list(self._coeffs)

    def __getitem__(self, term: Term) -> int:
        return self._coeffs.get(term, 0)

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MotivicClass.integer(other)
        if not isinstance(other, MotivicClass):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._coeffs.items())))
        return self._hash

    @staticmethod
    def _coerce(x) -> MotivicClass:
        if isinstance(x, MotivicClass):
            return x
        if isinstance(x, int):
            return MotivicClass.integer(x)
        raise TypeError(f"cannot coerce {x!r} to MotivicClass")

    def __add__(self, other):
        other = self._coerce(other)
        return MotivicClass(list(self.items()) + list(other.items()))

    __radd__ = __add__

    def __neg__(self):
        return MotivicClass((t, -c) for t, c in self.items())

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = []
        for t1, c1 in self.items():
            for t2, c2 in other.items():
                out.append((Term(t1.monomial + t2.monomial, t1.lexp + t2.lexp), c1 * c2))
        return MotivicClass(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for L; use MotivicClass.lefschetz")
        out = MotivicClass.one()
        for _ in range(n):
            out = out * self
        return out

    def symbols(self) -> set[GeneratorSymbol]:
        return {s for t in self._coeffs for s in t.monomial}

    def machine_lines(self) -> list[str]:
        if not self._coeffs:
            return ["0"]
        rows = sorted(self._coeffs.items(), key=lambda tc: (tc[0].lexp, tc[0].symbols_text()))
        return [f"mc {t.lexp} {t.symbols_text()} {c}" for t, c in rows]

    def __str__(self):
        if not self._coeffs:
            return "0"
        order = sorted(self._coeffs, key=lambda t: (len(t.monomial), t.monomial, t.lexp))
        out = ""
        for n, t in enumerate(order):
            c = self._coeffs[t]
            factors = [s.name for s in t.monomial]
            if t.lexp == 1:
                factors.append("L")
            elif t.lexp:
                factors.append(f"L^{t.lexp}")
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if n == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"MotivicClass({str(self)!r})"


L = MotivicClass.lefschetz(1)


def mc_add(a: MotivicClass, b: MotivicClass) -> MotivicClass:
    return a + b


def mc_mul(a: MotivicClass, b: MotivicClass) -> MotivicClass:
    return a * b


def mc_from_expr(e: VarietyExpr, registry: Registry | None = None) -> MotivicClass:
    """Class of a variety expression, using [Bl_Z X] = [X] - [Z] + [Z][P^{c-1}]."""
    registry = registry or Registry()
    match e:
        case Point():
            return MotivicClass.one()
        case ProjSpace(n=n):
            return MotivicClass.projective_space(n)
        case Curve(g=0):
            return MotivicClass.projective_space(1)
        case Curve(g=g):
            return MotivicClass.generator(GeneratorSymbol(f"curve({g})", 1))
        case Ref(name=name):
            if name not in registry:
                raise ConstraintError(f"unknown variety {name!r} (load a table for it first)", e.loc)
            return MotivicClass.generator(registry.symbol(name))
        case Prod(left=a, right=b):
            return mc_from_expr(a, registry) * mc_from_expr(b, registry)
        case Blowup(ambient=x, center=z, codim=c):
            expr_dimension(e, registry.tables)
            cx, cz = mc_from_expr(x, registry), mc_from_expr(z, registry)
            # E = P(N_{Z/X}) is Zariski-locally trivial, so [E] = [Z][P^{c-1}].
            return cx - cz + cz * MotivicClass.projective_space(c - 1)
    raise TypeError(f"not a variety expression: {e!r}")


def mc_truncate(x: MotivicClass, m: int) -> MotivicClass:
    """Image modulo F^m: drop terms of virtual dimension <= -m."""
    return MotivicClass((t, c) for t, c in x.items() if t.virtual_dimension > -m)


def mc_equal_mod(a: MotivicClass, b: MotivicClass, m: int | None = None) -> bool:
    """Equality in the fragment, or modulo F^m when ``m`` is given."""
    diff = a - b
    if m is None:
        return not diff
    return not mc_truncate(diff, m)


def _realize(x: MotivicClass, registry: Registry, realization) -> FilteredHodgeClass:
    total = FilteredHodgeClass()
    for term, coef in x.items():
        acc = UNIT
        non_tate = 0
        for s in term.monomial:
            table = registry.table(s.name)
            acc = fhc_tensor(acc, realization(table))
            non_tate += not table.is_mixed_tate
        acc = tate_twist(acc, term.lexp)
        if non_tate >= 2:
            acc = acc.with_warnings([TENSOR_WARNING])
        total = total + acc.scale(coef)
    return total


def realize_nu(x: MotivicClass, registry: Registry | None = None) -> FilteredHodgeClass:
    """Coniveau realization, extended linearly with L -> K."""
    return _realize(x, registry or Registry(), nu)


def realize_lambda(x: MotivicClass, registry: Registry | None = None) -> FilteredHodgeClass:
    """Level realization, extended linearly with L -> K."""
    return _realize(x, registry or Registry(), lam)
