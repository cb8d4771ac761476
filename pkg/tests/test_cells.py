import itertools

import pytest

import oracles as O
from paradox_lab.cells import (
    CellClass, Diamond, YabloCell, classify_cell, find_diamonds, find_yablo_cells, is_locally_transitive,
    is_ycs,
)
from paradox_lab.constructions import OaSpec, make_nested_diamond, make_or_and, make_saw_blade, make_yablo
from paradox_lab.constructions.fixtures import basic, basic_extended
from paradox_lab.constructions.diamonds import rhombus_basic
from paradox_lab.errors import HintContradiction, UndecidableWithoutHint
from paradox_lab.graph import NEG, POS, RESTRICTED, Explicit, GraphGenerator, Lit, build_finite_graph, truncate


def yablo4():
    g, _ = truncate(make_yablo(), 3, RESTRICTED)
    return g


def test_basic_has_one_cell():
    assert find_yablo_cells(basic()) == [YabloCell("x", "y", "z")]


def test_yablo_prefix_cells():
    cells = find_yablo_cells(yablo4())
    assert [tuple(c) for c in cells] == O.triangle_scan(yablo4())
    assert len(cells) == 4


def test_positive_arrow_excludes_triangle():
    g = build_finite_graph(["x", "y", "z"], [("x", "y"), ("y", "z", POS), ("x", "z")])
    assert find_yablo_cells(g) == []


def test_ycs():
    assert is_ycs(yablo4(), "x:0", "x:1") == (True, [])
    assert is_ycs(basic_extended(), "x", "y") == (False, ["yp"])
    g = build_finite_graph(["x", "k"], [("x", "k")])
    assert is_ycs(g, "x", "k") == (True, [])
    with pytest.raises(ValueError):
        is_ycs(basic(), "y", "x")


def test_local_transitivity_finite_and_generators():
    assert is_locally_transitive(yablo4(), "x:0", "x:1")
    assert is_locally_transitive(make_yablo(), "x:0", "x:1")
    assert not is_locally_transitive(make_saw_blade("raw"), "x:s0:0", "x:s0:1")


@pytest.mark.parametrize("j", [0, 1, 4])
def test_oa_vertical_rank_transitivity(j):
    gen = make_or_and(OaSpec(None, None, "ranked-vertical"))
    # rank rule: successors of rank j+1 are ranks > j+1, a subset of ranks > j
    for i, k in itertools.product(range(3), range(3)):
        assert is_locally_transitive(gen, f"x:{i}:{j}", f"x:{k}:{j + 1}")


class _Chain(GraphGenerator):
    """x:i -o x:j for j > i, with a configurable hint."""

    def __init__(self, hint=None, drop=None):
        self.name, self.root = "chain", "x:0"
        self.hint, self.drop = hint, drop

    def successors(self, node):
        i = int(node.split(":")[1])
        return ((f"x:{j}", NEG, None) for j in itertools.count(i + 1) if (i, j) != self.drop)

    def level(self, node):
        return int(node.split(":")[1])

    def arrow(self, a, b):
        i, j = self.level(a), self.level(b)
        return (NEG, None) if j > i and (i, j) != self.drop else None

    def transitive_hint(self, x, xp):
        return self.hint


def test_unbounded_stream_needs_hint():
    with pytest.raises(UndecidableWithoutHint):
        is_locally_transitive(_Chain(), "x:0", "x:1")
    assert is_locally_transitive(_Chain(True), "x:0", "x:1")
    with pytest.raises(HintContradiction):
        is_locally_transitive(_Chain(True, drop=(0, 3)), "x:0", "x:1")


def test_classification():
    two = build_finite_graph(["x", "y"], [("x", "y")], {"x": Explicit(((Lit("y"), Lit("y", True)),))})
    assert classify_cell(two, "x") is CellClass.TWO_ARROW
    assert classify_cell(basic(), "x") is CellClass.YABLO_2_3
    tri = build_finite_graph(["x", "xp", "y"], [("x", "xp", POS), ("xp", "y"), ("x", "y", POS)])
    assert classify_cell(tri, "x") is CellClass.THREE_2_1_1
    nc = build_finite_graph(["x", "xp", "y"], [("x", "xp"), ("xp", "y"), ("x", "y", POS)])
    assert classify_cell(nc, "x") is CellClass.NOT_CONTRADICTORY_2_2
    dia = build_finite_graph(["x", "y", "yp", "z"], [("x", "y"), ("x", "yp"), ("y", "z"), ("yp", "z", POS)])
    assert classify_cell(dia, "x") is CellClass.DIAMOND
    assert classify_cell(basic(), "z") is CellClass.NONE


def test_rhombus_has_seven_diamonds():
    g = rhombus_basic()
    ds = find_diamonds(g)
    assert len(ds) == 7
    assert sorted(tuple(d) for d in ds) == O.diamond_scan(g)
    assert len(find_diamonds(make_nested_diamond("rhombus-basic").graph)) == 7


def test_yablo_has_no_diamonds():
    assert find_diamonds(yablo4()) == []


def test_essential_diamonds_per_index():
    g, _ = truncate(make_nested_diamond("essential"), 8, RESTRICTED)
    ds = find_diamonds(g)
    # oracle scan: one diamond x:i -o x:i+1 -o x:i+2, x:i -o x:i:i+2 -> x:i+2 per i
    assert sorted(tuple(d) for d in ds) == O.diamond_scan(g)
    assert ds == [Diamond(f"x:{i}", f"x:{i + 1}", f"x:{i}:{i + 2}", f"x:{i + 2}") for i in range(3)]
