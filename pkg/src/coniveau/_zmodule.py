"""Finitely supported integer-coefficient maps (elements of free Z-modules).

Canonical form drops zero coefficients, so structural equality of the stored
dict is equality in the module.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from types import MappingProxyType


class ZModuleElement:
    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping | Iterable = ()):
        acc: dict = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for key, value in items:
            if not isinstance(value, int):
                raise TypeError(f"coefficients must be integers, got {value!r}")
            acc[key] = acc.get(key, 0) + value
        object.__setattr__(self, "_coeffs", {k: v for k, v in acc.items() if v})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _derive(self, coeffs: Mapping | Iterable):
        """Build a value of the same type from new coefficients (hook for extra state)."""
        return type(self)(coeffs)

    @property
    def coefficients(self) -> Mapping:
        return MappingProxyType(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def support(self):
        return self._coeffs.keys()

    def __getitem__(self, key) -> int:
        return self._coeffs.get(key, 0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((type(self).__name__, frozenset(self._coeffs.items()))))
        return self._hash

    def _check(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._derive_pair(other, list(self.items()) + list(other.items()))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._derive_pair(other, list(self.items()) + [(k, -v) for k, v in other.items()])

    def __neg__(self):
        return self._derive((k, -v) for k, v in self.items())

    def scale(self, n: int):
        return self._derive((k, n * v) for k, v in self.items())

    def _derive_pair(self, other, coeffs):
        return self._derive(coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._coeffs!r})"
