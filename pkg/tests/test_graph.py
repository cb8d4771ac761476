import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from paradox_lab.constructions import (
    OaSpec, make_gapped_yablo, make_or_and, make_procrastination, make_saw_blade, make_yablo,
)
from paradox_lab.constructions.fixtures import basic
from paradox_lab.errors import (
    BudgetExceeded, CycleError, DanglingArrow, DuplicateArrow, FormulaVariableError, NotNegative,
    SignMismatch,
)
from paradox_lab.graph import (
    NEG, POS, REMAINDER, RESTRICTED, Explicit, Grouped, Lit, build_finite_graph, lit_for,
    transitive_closure_neg, truncate,
)


def test_basic_graph_formulas():
    g = basic()
    assert g.formula("x") == Explicit(((Lit("y", True), Lit("z", True)),))
    assert g.formula("y") == Explicit(((Lit("z", True),),))
    assert g.formula("z") is None
    assert g.free_nodes() == ["z"]


def test_single_free_node():
    g = build_finite_graph(["x"], [])
    assert g.formula("x") is None
    assert g.sinks() == ["x"]


def test_two_cycle_rejected():
    with pytest.raises(CycleError):
        build_finite_graph(["x", "y"], [("x", "y"), ("y", "x")])


def test_self_loop_rejected():
    with pytest.raises(CycleError):
        build_finite_graph(["x"], [("x", "x")])


def test_dangling_arrow():
    with pytest.raises(DanglingArrow):
        build_finite_graph(["x"], [("x", "y")])


def test_conflicting_duplicate_arrow():
    with pytest.raises(DuplicateArrow):
        build_finite_graph(["x", "y"], [("x", "y", NEG), ("x", "y", POS)])
    g = build_finite_graph(["x", "y"], [("x", "y"), ("x", "y")])
    assert len(g.arrows) == 1


def test_formula_must_use_successors():
    with pytest.raises(FormulaVariableError):
        build_finite_graph(["x", "y", "z"], [("x", "y")], {"x": Explicit(((Lit("z"),),))})


def test_sign_mismatch_and_mixed_polarity():
    with pytest.raises(SignMismatch):
        build_finite_graph(["x", "y"], [("x", "y", POS)], {"x": Explicit(((Lit("y", True),),))})
    # both polarities of one variable are allowed whatever the arrow sign
    g = build_finite_graph(["y", "yp"], [("y", "yp")], {"y": Explicit(((Lit("yp"), Lit("yp", True)),))})
    assert g.formula("y").polarities() == {"yp": {False, True}}


def test_lit_for_follows_sign():
    assert lit_for("a", NEG) == Lit("a", True)
    assert lit_for("a", POS) == Lit("a", False)
    assert ~Lit("a") == Lit("a", True)
    assert str(Lit("a", True)) == "~a"


def test_grouped_materialization_by_first_key():
    g = build_finite_graph(["x", "a", "b", "c"], [("x", "a"), ("x", "b"), ("x", "c", POS)],
                           {"x": Grouped(lambda d: 0 if d in "ac" else 1)})
    assert g.formula("x").disjuncts == ((Lit("a", True), Lit("c")), (Lit("b", True),))


def test_closure_of_chain():
    chain = build_finite_graph(["x0", "x1", "x2", "x3"], [("x0", "x1"), ("x1", "x2"), ("x2", "x3")])
    c = transitive_closure_neg(chain, chain.nodes)
    added = {(a.src, a.dst) for a in c.arrows} - {(a.src, a.dst) for a in chain.arrows}
    assert added == {("x0", "x2"), ("x0", "x3"), ("x1", "x3")}


def test_closure_idempotent_on_yablo_prefix():
    y, _ = truncate(make_yablo(), 3, RESTRICTED)
    assert transitive_closure_neg(y, y.nodes) == y


def test_closure_raw_blade_prefix():
    # back x0..x2, teeth y0..y1 of a raw blade; oracle: Floyd-Warshall reachability
    nodes = ["x0", "x1", "x2", "y0", "y1"]
    edges = [("x0", "x1"), ("x0", "y0"), ("x1", "x2"), ("x1", "y0"), ("x1", "y1"), ("x2", "y1")]
    g = build_finite_graph(nodes, edges)
    c = transitive_closure_neg(g, nodes)
    got = {(a.src, a.dst) for a in c.arrows}
    assert got == O.closure_pairs(nodes, set(edges))
    assert {("x0", "y1"), ("x0", "x2")} <= got


def test_closure_rejects_positive_arrow():
    g = build_finite_graph(["a", "b"], [("a", "b", POS)])
    with pytest.raises(NotNegative):
        transitive_closure_neg(g, ["a", "b"])


def test_yablo_window_remainder():
    g, w = truncate(make_yablo(), 3, REMAINDER)
    assert g.formula("x:0").disjuncts == (
        (Lit("x:1", True), Lit("x:2", True), Lit("x:3", True), Lit("r:x:0")),)
    assert set(w.remainder) == {"x:0", "x:1", "x:2"}
    assert w.frontier == ("x:3",)


def test_yablo_window_restricted():
    g, w = truncate(make_yablo(), 3, RESTRICTED)
    assert g.formula("x:0").disjuncts == ((Lit("x:1", True), Lit("x:2", True), Lit("x:3", True)),)
    assert w.frontier == ("x:3",)
    assert not w.remainder


def test_yablo_depth_two():
    g, _ = truncate(make_yablo(), 2)
    assert g.formula("x:0").disjuncts == ((Lit("x:1", True), Lit("x:2", True), Lit("r:x:0")),)


def test_procrastination_window_needs_no_remainder():
    g, w = truncate(make_procrastination(), 4, REMAINDER)
    assert {"Y:1", "Y:2", "Y:3", "X:3", "X:4"} <= set(w.interior)
    assert not w.remainder
    assert g.formula("Y:2").disjuncts == ((Lit("Y:3", True), Lit("X:4")),)


def test_node_cap():
    with pytest.raises(BudgetExceeded):
        truncate(make_or_and(OaSpec(None, None, "ranked-vertical")), 5, node_cap=50)


def test_bad_depth_and_mode():
    with pytest.raises(ValueError):
        truncate(make_yablo(), -1)
    with pytest.raises(ValueError):
        truncate(make_yablo(), 2, "sideways")


def test_truncate_deterministic():
    gen = make_saw_blade("composed", 2)
    a, wa = truncate(gen, 6)
    b, wb = truncate(gen, 6)
    assert a == b and wa.interior == wb.interior


@pytest.mark.parametrize("gen", [make_yablo(), make_gapped_yablo(2), make_saw_blade("raw")],
                         ids=lambda g: g.name)
@pytest.mark.parametrize("depth", [2, 3, 4])
def test_remainder_window_is_sound_abstraction(gen, depth):
    # every restricted-mode model extends to a remainder-mode model (r := node value)
    gr, wr = truncate(gen, depth, RESTRICTED)
    gm, wm = truncate(gen, depth, REMAINDER)
    if len(gm.nodes) > 14:
        pytest.skip("window too large for exhaustive oracle")
    keyset = {tuple(sorted(m.items())) for m in O.models(gm)}
    for m in O.models(gr):
        ext = dict(m)
        for n, r in wm.remainder.items():
            ext[r] = m[n]
        ext.update({n: ext.get(n, False) for n in gm.nodes if n not in ext})
        assert tuple(sorted(ext.items())) in keyset


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.data())
def test_random_dag_roundtrip_and_acyclicity(n, data):
    nodes = [f"v{i}" for i in range(n)]
    pairs = [(a, b) for a, b in itertools.combinations(nodes, 2)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    signs = data.draw(st.lists(st.sampled_from([NEG, POS]), min_size=len(chosen), max_size=len(chosen)))
    g = build_finite_graph(nodes, [(a, b, s) for (a, b), s in zip(chosen, signs)])
    # topo order respects every arrow
    pos = {v: i for i, v in enumerate(g.topo)}
    assert all(pos[a.src] < pos[a.dst] for a in g.arrows)
    assert g.subgraph(g.nodes) == g
    if chosen:
        a, b = chosen[0]
        with pytest.raises(CycleError):
            build_finite_graph(nodes, [(a, b) for a, b in chosen] + [(b, a)])
