import pytest

from coniveau.dsl import BinOp, Lef, Neg, Num, Var, check, dump_table, evaluate, load_table, normalize, parse, read_table
from coniveau.errors import ConstraintError, ParseError, TableFormatError, TableValidationError
from coniveau.motivic import MotivicClass, Registry
from coniveau.varieties import (
    Blowup,
    Curve,
    Point,
    Prod,
    ProjSpace,
    Ref,
    blowup_table,
    builtin_curve,
    builtin_projspace,
    product_table,
)

from conftest import FIXTURES


def test_parse_examples():
    assert parse("blowup(P2, point, 2)") == Var(Blowup(ProjSpace(2), Point(), 2))
    tree = parse("curve(3) * L^-1 + 1")
    assert tree == BinOp("+", BinOp("*", Var(Curve(3)), Lef(-1)), Num(1))
    x = evaluate(tree)
    assert len(x) == 2


def test_parse_precedence_and_parens():
    assert normalize("(1 + L) * (1 + L)") == normalize("1 + 2*L + L^2")
    assert normalize("1 + L * 2") == normalize("1 + 2 * L")
    assert normalize("L^0") == MotivicClass.one()
    assert normalize("P 3") == normalize("P3")
    assert normalize("prod(curve(1), X)", _reg_with_x()) == normalize("X * curve(1)", _reg_with_x())


def _reg_with_x():
    reg = Registry()
    reg.register(builtin_projspace(2), "X")
    return reg


def test_whitespace_insensitive():
    assert parse("blowup( P2 ,\n point ,2 )") == parse("blowup(P2,point,2)")


@pytest.mark.parametrize("text,line,col,expected", [
    ("blowup(P2, point 2)", 1, 18, {"','"}),
    ("1 +", 1, 4, None),
    ("curve(x)", 1, 7, {"INT"}),
    ("P2 P3", 1, 4, {"'+'", "'-'", "'*'", "end of input"}),
    ("1 +\n  @", 2, 3, None),
    ("prod(L, P1)", 1, 6, None),
])
def test_syntax_errors_have_locations(text, line, col, expected):
    with pytest.raises(ParseError) as info:
        parse(text)
    err = info.value
    assert (err.line, err.column) == (line, col)
    if expected is not None:
        assert err.expected == expected
    assert str(err).startswith(f"{line}:{col}:")


def test_int_literal_range():
    with pytest.raises(ParseError):
        parse(str(2**63))
    parse(str(2**63 - 1))


def test_constraint_errors_carry_node_location():
    tree = parse("1 + blowup(P2, P1, 3)")
    with pytest.raises(ConstraintError) as info:
        check(tree)
    assert info.value.loc == (1, 5)
    assert "1 + 3" not in str(info.value) and "dim center 1" in str(info.value)
    with pytest.raises(ConstraintError):
        normalize("blowup(P2, point, 1)")
    with pytest.raises(ConstraintError) as info:
        normalize("2 * Nowhere")
    assert info.value.loc == (1, 5)


def test_print_parse_round_trip(registry):
    for text in ["blowup(P3, curve(2), 2) - 7 * L^-3", "X_bad * curve(1) - P4", "0", "-curve(3) * L^2 + Ksurf",
                 "(L^-1 - curve(1))*(L + Y4)"]:
        x = normalize(text, registry)
        assert normalize(str(x), registry) == x


# --- tables ----------------------------------------------------------------------------

def test_load_x_bad_validates():
    table, lints = read_table((FIXTURES / "x_bad.tbl").read_text(), "x_bad.tbl")
    assert lints == []
    assert table.name == "X_bad" and table.dim == 3 and table.provenance == "loaded"


def test_loader_rejects_weight_purity():
    with pytest.raises(TableValidationError) as info:
        load_table(FIXTURES / "weight_purity.tbl")
    assert info.value.categories == {"weight-purity"}


def test_loader_rejects_coniveau_above_level():
    with pytest.raises(TableValidationError) as info:
        load_table(FIXTURES / "coniveau_level.tbl")
    assert "coniveau-exceeds-level" in info.value.categories


def test_loader_format_errors_have_line_numbers():
    with pytest.raises(TableFormatError) as info:
        load_table(FIXTURES / "bad_syntax.tbl")
    assert info.value.line == 3
    for text, line in [("dim 3\n", 1), ("variety A dim 0\nh 0 0 tate 0 1\n", None),
                       ("variety A dim 0\nh 0 0 tate zero 1\nend\n", 2),
                       ("variety A dim 1\nh 1 0 atom S weight 1 hodge 1:0=1 mult 1\nend\n", 2),
                       ("variety A dim 0\nh 0 0 tate 0 1\nend\nh 0 0 tate 0 1\n", 4)]:
        with pytest.raises(TableFormatError) as info:
            read_table(text)
        assert info.value.line == line


def test_lints_warn_without_rejecting(caplog, tmp_path):
    path = tmp_path / "two.tbl"
    path.write_text("variety TwoPoints dim 0\nh 0 0 tate 0 2\nend\n")
    table = load_table(path)
    assert table.dim == 0
    assert "normalization" in caplog.text


@pytest.mark.parametrize("table", [
    builtin_projspace(3),
    builtin_curve(2),
    blowup_table(builtin_projspace(3), builtin_curve(1), 2),
    product_table(builtin_curve(1), builtin_curve(2)),
], ids=lambda t: t.name)
def test_dump_load_round_trip(table):
    loaded, _ = read_table(dump_table(table))
    assert loaded == table


def test_load_registers(registry):
    assert registry.table("Ksurf").cell(2, 1).dimension() == 10
