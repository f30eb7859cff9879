from pathlib import Path

import pytest
from hypothesis import strategies as st

from coniveau.hodge import FilteredHodgeClass, HodgeClass, named, tate
from coniveau.motivic import Registry
from coniveau.dsl import load_table

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

ACCEPTANCE_RESULTS: list[tuple[str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")


@pytest.fixture
def registry():
    reg = Registry()
    for name in ("x_bad", "k3_like", "fourfold"):
        load_table(FIXTURES / f"{name}.tbl", reg)
    return reg.freeze()


# --- strategies -------------------------------------------------------------

@st.composite
def named_atoms(draw, simple=True):
    w = draw(st.integers(0, 4))
    ident = draw(st.sampled_from(["A", "B", "C"]))
    numbers = {}
    for a in range(w // 2 + 1):
        b = w - a
        m = draw(st.integers(0, 2))
        if m:
            numbers[(a, b)] = numbers[(b, a)] = m
    if not numbers:
        numbers = {(w // 2, w - w // 2): 1, (w - w // 2, w // 2): 1}
    return named(f"{ident}{w}", numbers, weight=w, simple=simple)


tate_atoms = st.integers(-2, 3).map(tate)
atoms = st.one_of(tate_atoms, named_atoms())

hodge_classes = st.dictionaries(atoms, st.integers(-3, 3), max_size=4).map(HodgeClass)

filtered_classes = st.dictionaries(
    st.tuples(st.integers(-1, 3), atoms), st.integers(-3, 3), max_size=3
).map(FilteredHodgeClass)
