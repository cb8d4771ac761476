import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from paradox_lab.constructions import make_yablo
from paradox_lab.constructions.fixtures import (
    basic, basic_extended, logic_conjunction, logic_identity, logic_negation,
    logic_negation_variant, logic_true,
)
from paradox_lab.errors import DnfTooLarge, TooManySinks, UnboundVariable
from paradox_lab.formula import (
    F, T, X, Truth3, and3, canonical, cofactor, connective3, depends_on, effective_function,
    equivalent, eval_bool, eval_dnf, negate_dnf, or3, propagate, trivialize_outside,
)
from paradox_lab.graph import RESTRICTED, Explicit, Lit, build_finite_graph, truncate
from paradox_lab.solver import Clamp, solve

VARS = ["a", "b", "c", "d"]


def E(*conjs):
    return Explicit(tuple(tuple(c) for c in conjs))


def n(v):
    return Lit(v, True)


def p(v):
    return Lit(v)


def test_three_valued_connectives():
    assert connective3("and", X, F) is F
    assert connective3("or", X, F) is X
    assert connective3("or", X, connective3("not", X)) is X
    assert connective3("and", X, T) is X
    assert connective3("not", "T") is F
    assert and3([T, T]) is T and or3([F, F]) is F
    with pytest.raises(ValueError):
        connective3("and", T)


@pytest.mark.parametrize("a", [T, F, X])
@pytest.mark.parametrize("b", [T, F, X])
def test_connectives_match_kleene_order(a, b):
    # strong Kleene: F < X < T, and = min, or = max
    rank = {F: 0, X: 1, T: 2}
    assert rank[connective3("and", a, b)] == min(rank[a], rank[b])
    assert rank[connective3("or", a, b)] == max(rank[a], rank[b])


def test_truth3_has_no_classical_x():
    with pytest.raises(ValueError):
        bool(X)
    with pytest.raises(TypeError):
        Truth3.of(1)


def test_eval_examples():
    x = E([n("y"), n("z")])
    assert eval_dnf(x, {"y": F, "z": F}) is T
    assert eval_dnf(x, {"y": X, "z": F}) is X
    assert eval_dnf(E([p("yp"), n("yp")]), {"yp": T}) is F
    with pytest.raises(UnboundVariable):
        eval_dnf(x, {"y": F})


def test_constants():
    assert eval_dnf(E([True]), {}) is T
    assert eval_dnf(E([False]), {}) is F
    assert eval_dnf(E([p("a"), True]), {"a": X}) is X


def test_negation_examples():
    assert canonical(negate_dnf(E([n("y"), n("z")]))) == canonical(E([p("y")], [p("z")]))
    got = negate_dnf(E([p("a"), p("b")], [p("c")]))
    # oracle: exhaustive complement table over {a, b, c}
    table = O.negation_by_table(E([p("a"), p("b")], [p("c")]).disjuncts, ["a", "b", "c"])
    assert [eval_bool(got, dict(zip("abc", bits))) for bits in itertools.product((False, True), repeat=3)] == table
    assert canonical(got) == canonical(E([n("a"), n("c")], [n("b"), n("c")]))
    s = E([n("x1"), n("x2")])
    assert equivalent(negate_dnf(negate_dnf(s)), s)


def test_negation_cap():
    big = E(*[[p(f"a{i}"), p(f"b{i}")] for i in range(7)])
    assert len(negate_dnf(big, cap=128).disjuncts) == 128
    with pytest.raises(DnfTooLarge):
        negate_dnf(big, cap=64)


def test_canonical_dedup_and_subsumption():
    s = E([p("b"), p("a"), p("a")], [p("a")], [p("c"), False])
    assert canonical(s) == E([p("a")])
    assert canonical(E([True], [p("a")])) == E([True])


def test_cofactor_and_dependence():
    s = E([p("a"), n("a")], [p("b")])
    assert not depends_on(s, "a")
    assert depends_on(s, "b")
    assert equivalent(cofactor(E([p("a"), p("b")], [n("a")]), p("a")), E([p("b")]))


literal = st.builds(Lit, st.sampled_from(VARS), st.booleans())
item = st.one_of(literal, literal, literal, st.booleans())
spec = st.lists(st.lists(item, min_size=1, max_size=4), min_size=1, max_size=4).map(
    lambda ds: Explicit(tuple(tuple(c) for c in ds)))


def _table(s):
    return [O.dnf_value(s.disjuncts, dict(zip(VARS, bits)))
            for bits in itertools.product((False, True), repeat=len(VARS))]


@settings(max_examples=300, deadline=None)
@given(spec)
def test_negation_is_complement(s):
    neg = negate_dnf(s)
    assert [not b for b in _table(s)] == _table(neg)
    assert _table(negate_dnf(neg)) == _table(s)


@settings(max_examples=300, deadline=None)
@given(spec)
def test_canonical_preserves_meaning(s):
    assert _table(canonical(s)) == _table(s)
    assert canonical(canonical(s)) == canonical(s)


@settings(max_examples=200, deadline=None)
@given(spec, st.lists(st.sampled_from([T, F, X]), min_size=4, max_size=4))
def test_three_valued_eval_is_monotone_refinement(s, vals):
    # any classical refinement of X-values agrees with a classical result
    v = dict(zip(VARS, vals))
    got = eval_dnf(s, v)
    xs = [k for k in VARS if v[k] is X]
    outs = set()
    for bits in itertools.product((False, True), repeat=len(xs)):
        w = {k: (bool(val) if val is not X else None) for k, val in v.items()}
        w.update(dict(zip(xs, bits)))
        outs.add(O.dnf_value(s.disjuncts, w))
    if got is not X:
        assert outs == {bool(got)}


def test_trivialization_undoes_escape():
    ext = basic_extended()
    assert solve(ext, [Clamp("x", True)]).is_sat
    keep = [(a.src, a.dst) for a in ext.arrows if (a.src, a.dst) != ("y", "yp")]
    triv = trivialize_outside(ext, keep)
    assert solve(triv, [Clamp("x", True)]).is_unsat


def test_trivialize_keep_all_is_identity():
    g = basic()
    assert trivialize_outside(g, [(a.src, a.dst) for a in g.arrows]) == g


def test_trivialize_removes_dependence():
    y, _ = truncate(make_yablo(), 3, RESTRICTED)
    keep = [(a.src, a.dst) for a in y.arrows if (a.src, a.dst) != ("x:1", "x:3")]
    before = effective_function(y, "x:1")
    after = effective_function(trivialize_outside(y, keep), "x:1")
    # oracle tables: x1 = ~x2 & ~x3 with x2 = ~x3, so x1 is constant F;
    # without the x1 -o x3 arrow x1 = ~x2 = x3
    assert O.effective_table(y, "x:1") == (["x:3"], [False, False])
    assert before.values == (F, F)
    assert after.values == (F, T)
    assert not depends_on(trivialize_outside(y, keep).formula("x:1"), "x:3")


LOGIC = [
    (logic_negation, lambda a: not a["z"]),
    (logic_negation_variant, lambda a: not a["z"]),
    (logic_identity, lambda a: a["zp"]),
    (logic_true, lambda a: True),
    (logic_conjunction, lambda a: a["zp"] and not a["u"]),
]


@pytest.mark.parametrize("build,fn", LOGIC, ids=[b.__name__ for b, _ in LOGIC])
def test_logic_diagrams(build, fn):
    g = build()
    t = effective_function(g, "x")
    assert t.same_function(fn)
    sinks, rows = O.effective_table(g, "x")
    assert list(t.sinks) == sinks
    assert [bool(v) for v in t.values] == rows


def test_effective_function_sink_cap():
    nodes = ["x"] + [f"s{i}" for i in range(5)]
    g = build_finite_graph(nodes, [("x", f"s{i}") for i in range(5)])
    with pytest.raises(TooManySinks):
        effective_function(g, "x", cap=4)


def test_propagate_needs_free_values():
    with pytest.raises(UnboundVariable):
        propagate(basic(), {})
    assert propagate(basic(), {"z": False}) == {"z": False, "y": True, "x": False}
