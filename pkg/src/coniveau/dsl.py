"""Expression language and the table file format.

Expressions (whitespace-insensitive, keywords case-sensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | 'L' ['^' ['-'] INT] | atom | '(' expr ')' | '-' factor
    atom   := 'point' | 'P' INT | 'curve' '(' INT ')'
            | 'blowup' '(' atom ',' atom ',' INT ')'
            | 'prod' '(' atom ',' atom ')' | IDENT

Table files hold one variety each::

    variety <name> dim <d>
    h <i> <p> tate <k> <mult>
    h <i> <p> atom <id> weight <w> hodge <a>:<b>=<m>[,...] mult <mult>
    end

Lines starting with '#' are comments.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from coniveau.errors import ConstraintError, ParseError, TableFormatError, TableValidationError
from coniveau.hodge import HodgeAtom, named, tate
from coniveau.motivic import MotivicClass, Registry, mc_from_expr
from coniveau.varieties import (
    EXACT,
    LOADED,
    TENSOR_HEURISTIC,
    Blowup,
    Curve,
    Point,
    Prod,
    ProjSpace,
    Ref,
    VarietyExpr,
    VarietyTable,
    expr_dimension,
    hard_violations,
    validate_table,
)

log = logging.getLogger(__name__)

INT64_MAX = 2**63 - 1


# --- ring expression tree ------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lef:
    exponent: int
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    expr: VarietyExpr
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    loc: tuple[int, int] | None = field(default=None, compare=False, repr=False)


# --- tokenizer -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[-+*^(),]))")
_KEYWORDS = {"L", "point", "curve", "blowup", "prod"}


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'ident', 'kw', 'proj', one of the punctuation chars, or 'eof'
    text: str
    line: int
    col: int


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                line, col = _position(text, len(text))
                tokens.append(Token("eof", "", line, col))
                return tokens
            line, col = _position(text, pos + len(rest) - len(stripped))
            raise ParseError(f"unexpected character {stripped[0]!r}", line, col)
        start = m.start(m.lastgroup)
        line, col = _position(text, start)
        value = m.group(m.lastgroup)
        if m.lastgroup == "int":
            if int(value) > INT64_MAX:
                raise ParseError(f"integer literal {value} does not fit in 64 bits", line, col)
            kind = "int"
        elif m.lastgroup == "ident":
            if value in _KEYWORDS:
                kind = "kw"
            elif re.fullmatch(r"P\d+", value):
                kind = "proj"
            else:
                kind = "ident"
        else:
            kind = value
        tokens.append(Token(kind, value, line, col))
        pos = m.end()


# --- parser ----------------------------------------------------------------

_FACTOR_START = frozenset({"INT", "'L'", "'('", "'-'", "'point'", "'P'<n>", "'curve'", "'blowup'", "'prod'", "IDENT"})
_ATOM_START = frozenset({"'point'", "'P'<n>", "'curve'", "'blowup'", "'prod'", "IDENT"})


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, expected) -> ParseError:
        t = self.tok
        got = "end of input" if t.kind == "eof" else repr(t.text)
        return ParseError(f"unexpected {got}", t.line, t.col, frozenset(expected))

    def expect(self, kind: str, label: str | None = None) -> Token:
        if self.tok.kind != kind:
            raise self.fail({label or f"'{kind}'"})
        return self.advance()

    def integer(self) -> int:
        return int(self.expect("int", "INT").text)

    def is_kw(self, word: str) -> bool:
        return self.tok.kind == "kw" and self.tok.text == word

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            raise self.fail({"'+'", "'-'", "'*'", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance()
            node = BinOp(op.kind, node, self.term(), (op.line, op.col))
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "*":
            op = self.advance()
            node = BinOp("*", node, self.factor(), (op.line, op.col))
        return node

    def factor(self):
        t = self.tok
        loc = (t.line, t.col)
        if t.kind == "int":
            return Num(self.integer(), loc)
        if t.kind == "-":
            self.advance()
            return Neg(self.factor(), loc)
        if t.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if self.is_kw("L"):
            self.advance()
            if self.tok.kind != "^":
                return Lef(1, loc)
            self.advance()
            sign = 1
            if self.tok.kind == "-":
                self.advance()
                sign = -1
            return Lef(sign * self.integer(), loc)
        if t.kind in ("proj", "ident") or (t.kind == "kw" and t.text != "L"):
            return Var(self.atom(), loc)
        raise self.fail(_FACTOR_START)

    def atom(self) -> VarietyExpr:
        t = self.tok
        loc = (t.line, t.col)
        if t.kind == "proj":
            self.advance()
            return ProjSpace(int(t.text[1:]), loc)
        if t.kind == "ident":
            self.advance()
            if t.text == "P" and self.tok.kind == "int":
                return ProjSpace(self.integer(), loc)
            return Ref(t.text, loc)
        if self.is_kw("point"):
            self.advance()
            return Point(loc)
        if self.is_kw("curve"):
            self.advance()
            self.expect("(")
            g = self.integer()
            self.expect(")")
            return Curve(g, loc)
        if self.is_kw("blowup"):
            self.advance()
            self.expect("(")
            x = self.atom()
            self.expect(",")
            z = self.atom()
            self.expect(",")
            c = self.integer()
            self.expect(")")
            return Blowup(x, z, c, loc)
        if self.is_kw("prod"):
            self.advance()
            self.expect("(")
            x = self.atom()
            self.expect(",")
            y = self.atom()
            self.expect(")")
            return Prod(x, y, loc)
        raise self.fail(_ATOM_START)


def parse(text: str):
    """Parse source text into a ring expression tree (Num/Lef/Var/BinOp/Neg)."""
    return _Parser(text).parse()


def _walk_vars(node):
    match node:
        case Var():
            yield node
        case BinOp(left=a, right=b):
            yield from _walk_vars(a)
            yield from _walk_vars(b)
        case Neg(operand=a):
            yield from _walk_vars(a)


def check(node, registry: Registry | None = None) -> None:
    """Post-parse validation: references resolve and blow-ups are well-formed."""
    tables = (registry or Registry()).tables
    for var in _walk_vars(node):
        expr_dimension(var.expr, tables)


def evaluate(node, registry: Registry | None = None) -> MotivicClass:
    registry = registry or Registry()
    match node:
        case Num(value=n):
            return MotivicClass.integer(n)
        case Lef(exponent=k):
            return MotivicClass.lefschetz(k)
        case Var(expr=e):
            return mc_from_expr(e, registry)
        case Neg(operand=a):
            return -evaluate(a, registry)
        case BinOp(op="+", left=a, right=b):
            return evaluate(a, registry) + evaluate(b, registry)
        case BinOp(op="-", left=a, right=b):
            return evaluate(a, registry) - evaluate(b, registry)
        case BinOp(op="*", left=a, right=b):
            return evaluate(a, registry) * evaluate(b, registry)
    raise TypeError(f"not an expression node: {node!r}")


def normalize(text: str, registry: Registry | None = None) -> MotivicClass:
    """Parse, check and evaluate to the normal form in one go."""
    node = parse(text)
    check(node, registry)
    return evaluate(node, registry)


# --- table files -------------------------------------------------------------

_HODGE_ENTRY = re.compile(r"(-?\d+):(-?\d+)=(\d+)\Z")


def _int(word: str, what: str, line: int, source: str) -> int:
    try:
        return int(word)
    except ValueError:
        raise TableFormatError(f"expected integer {what}, got {word!r}", line, source) from None


def _parse_hodge(spec: str, line: int, source: str) -> dict:
    out = {}
    for part in spec.split(","):
        m = _HODGE_ENTRY.match(part)
        if not m:
            raise TableFormatError(f"bad Hodge number entry {part!r} (want a:b=m)", line, source)
        key = (int(m.group(1)), int(m.group(2)))
        if key in out:
            raise TableFormatError(f"Hodge index {key} listed twice", line, source)
        out[key] = int(m.group(3))
    return out


def _parse_row(words: list[str], line: int, source: str) -> tuple[int, int, HodgeAtom, int]:
    if len(words) < 4:
        raise TableFormatError("truncated 'h' line", line, source)
    i = _int(words[1], "degree", line, source)
    p = _int(words[2], "coniveau step", line, source)
    kind = words[3]
    try:
        if kind == "tate":
            if len(words) != 6:
                raise TableFormatError("expected 'h <i> <p> tate <k> <mult>'", line, source)
            atom = tate(_int(words[4], "Tate index", line, source))
            mult = _int(words[5], "multiplicity", line, source)
        elif kind == "atom":
            if len(words) != 11 or words[5] != "weight" or words[7] != "hodge" or words[9] != "mult":
                raise TableFormatError(
                    "expected 'h <i> <p> atom <id> weight <w> hodge <a>:<b>=<m>,... mult <mult>'", line, source)
            ident = words[4]
            w = _int(words[6], "weight", line, source)
            atom = named(ident, _parse_hodge(words[8], line, source), weight=w, simple="*" not in ident)
            mult = _int(words[10], "multiplicity", line, source)
        else:
            raise TableFormatError(f"unknown entry kind {kind!r} (want 'tate' or 'atom')", line, source)
    except ValueError as err:
        if isinstance(err, TableFormatError):
            raise
        raise TableFormatError(str(err), line, source) from None
    return i, p, atom, mult


def read_table(text: str, source: str = "<table>") -> tuple[VarietyTable, list]:
    """Parse and validate table text.  Returns the table and its lint warnings.

    Raises TableFormatError on syntax problems and TableValidationError when a
    hard invariant is violated.
    """
    header = None
    rows = []
    ended = False
    for n, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        words = stripped.split()
        if ended:
            raise TableFormatError("content after 'end'", n, source)
        if header is None:
            if len(words) != 4 or words[0] != "variety" or words[2] != "dim":
                raise TableFormatError("first line must be 'variety <name> dim <d>'", n, source)
            header = (words[1], _int(words[3], "dimension", n, source))
            if header[1] < 0:
                raise TableFormatError("dimension must be >= 0", n, source)
            continue
        if words == ["end"]:
            ended = True
        elif words[0] == "h":
            rows.append(_parse_row(words, n, source))
        else:
            raise TableFormatError(f"unknown record {words[0]!r}", n, source)
    if header is None:
        raise TableFormatError("empty table file", None, source)
    if not ended:
        raise TableFormatError("missing 'end'", None, source)
    name, dim = header
    composite = any(not atom.simple for _, _, atom, _ in rows)
    table = VarietyTable.from_entries(name, dim, rows, LOADED, TENSOR_HEURISTIC if composite else EXACT)
    violations = validate_table(table)
    hard = hard_violations(violations)
    if hard:
        raise TableValidationError(source, hard)
    return table, [v for v in violations if v not in hard]


def load_table(path: str | Path, registry: Registry | None = None) -> VarietyTable:
    """Read a table file, log lint warnings, and register it when a registry is given."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise TableFormatError(f"cannot read file: {err.strerror}", None, str(path)) from None
    table, lints = read_table(text, str(path))
    for v in lints:
        log.warning("%s: %s", path, v)
    if registry is not None:
        registry.register(table)
    return table


def dump_table(T: VarietyTable) -> str:
    lines = [f"variety {T.name} dim {T.dim}"]
    for i, p, atom, m in T.entries():
        if atom.is_tate:
            lines.append(f"h {i} {p} tate {atom.tate_index} {m}")
        else:
            hodge = ",".join(f"{a}:{b}={n}" for (a, b), n in atom.hodge)
            lines.append(f"h {i} {p} atom {atom.identifier} weight {atom.weight} hodge {hodge} mult {m}")
    lines.append("end")
    return "\n".join(lines) + "\n"


__all__ = [
    "BinOp", "ConstraintError", "Lef", "Neg", "Num", "ParseError", "Token", "Var",
    "check", "dump_table", "evaluate", "load_table", "normalize", "parse", "read_table", "tokenize",
]
