"""Exception hierarchy. Everything a user can trigger with bad input is an InputError."""

from __future__ import annotations


class InputError(ValueError):
    """Bad user input: malformed expression, table file, or invalid construction."""


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int, expected: frozenset[str] = frozenset()):
        self.line = line
        self.column = column
        self.expected = expected
        detail = message
        if expected:
            detail += " (expected one of: " + ", ".join(sorted(expected)) + ")"
        super().__init__(f"{line}:{column}: syntax error: {detail}")


class ConstraintError(InputError):
    """A syntactically valid expression violating a construction rule (e.g. codim < 2)."""

    def __init__(self, message: str, loc: tuple[int, int] | None = None):
        self.loc = loc
        prefix = f"{loc[0]}:{loc[1]}: " if loc else ""
        super().__init__(f"{prefix}constraint error: {message}")


class TableFormatError(InputError):
    def __init__(self, message: str, line: int | None = None, source: str = "<table>"):
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: table format error: {message}")


class TableValidationError(InputError):
    """Raised by the loader when a table breaks a hard invariant."""

    def __init__(self, source: str, violations):
        self.violations = list(violations)
        lines = [f"{source}: table rejected"]
        lines += [f"  {v}" for v in self.violations]
        super().__init__("\n".join(lines))

    @property
    def categories(self) -> set[str]:
        return {v.rule for v in self.violations}
