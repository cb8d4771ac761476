import pytest

import oracles as O
from paradox_lab.constructions import (
    OaSpec, ValuationRule, make_nested_diamond, make_or_and, make_procrastination, make_saw_blade,
    make_two_arrow_chain, make_yablo, parse_pattern_rule,
)
from paradox_lab.constructions.fixtures import basic, basic_extended
from paradox_lab.errors import NotAModel, UnboundVariable
from paradox_lab.formula import F, T
from paradox_lab.graph import REMAINDER, RESTRICTED, truncate
from paradox_lab.solver import (
    Clamp, Violation, brute_force, check_valuation, interpret_oa_model, search_escape, solve,
    verify_rule,
)


def test_clamp_parsing():
    assert Clamp.parse("x:0=T") == Clamp("x:0", True)
    assert str(Clamp("a", False)) == "a=F"
    for bad in ["x:0", "x:0=1"]:
        with pytest.raises(ValueError):
            Clamp.parse(bad)


def test_check_valuation_basic():
    # oracle: x = ~y & ~z is F under y=T, while y = ~z is T under z=F
    assert check_valuation(basic(), {"x": True, "y": True, "z": False}) == [Violation("x", T, F)]
    assert check_valuation(basic(), {"x": False, "y": True, "z": False}) == []
    with pytest.raises(UnboundVariable):
        check_valuation(basic(), {"x": True})


def test_basic_root_true_unsat_with_core():
    out = solve(basic(), [Clamp("x", True)])
    assert out.is_unsat and set(out.core) <= {"x", "y"}
    assert solve(basic_extended(), [Clamp("x", True)]).is_sat


@pytest.mark.parametrize("clamp", [None, True, False])
def test_yablo_window_matches_brute_force(clamp):
    g, _ = truncate(make_yablo(), 6, RESTRICTED)
    cl = [] if clamp is None else [Clamp("x:0", clamp)]
    out = solve(g, cl)
    want = O.models(g, cl)
    assert out.is_sat == bool(want)
    if out.is_sat:
        assert out.model in want
    assert brute_force(g, cl) == want


def test_first_model_is_false_first():
    g, _ = truncate(make_yablo(), 6, RESTRICTED)
    m = solve(g, [Clamp("x:0", False)]).model
    # oracle: Yablo prefix values from the last node upwards
    assert [m[f"x:{i}"] for i in range(6)] == O.yablo_chain_values(7, m["x:6"])
    assert not m["x:0"] and m["x:6"]


def test_core_is_deletion_minimal():
    g, _ = truncate(make_yablo(), 6, RESTRICTED)
    out = solve(g, [Clamp("x:0", True)])
    assert len(out.core) <= 3
    for n in out.core:
        rest = [m for m in out.core if m != n]
        assert solve(g, [Clamp("x:0", True)], constrained=rest).is_sat


def test_procrastination_one_sided():
    g, _ = truncate(make_procrastination(), 5, REMAINDER)
    assert solve(g, [Clamp("Y:1", True)]).is_unsat
    m = solve(g, [Clamp("Y:1", False)]).model
    assert not any(m.values())
    assert not O.models(g, [("Y:1", True)])


def test_clamp_on_unknown_node():
    with pytest.raises(ValueError):
        solve(basic(), [Clamp("nope", True)])


def test_budget_exhaustion_is_unknown():
    g, _ = truncate(make_or_and(OaSpec(order="ranked-vertical")), 3, REMAINDER)
    out = solve(g, [Clamp("x:0:0", True)], budget=5)
    assert out.status == "unknown" and out.to_json()["budget"] == 5
    assert solve(g, [Clamp("x:0:0", True)], budget=500).is_sat


def test_budget_from_environment(monkeypatch):
    from paradox_lab.solver import default_budget
    monkeypatch.setenv("PARADOX_LAB_BUDGET", "7")
    assert default_budget() == 7
    monkeypatch.setenv("PARADOX_LAB_BUDGET", "many")
    with pytest.raises(ValueError):
        default_budget()


def test_verify_rule_examples():
    assert verify_rule(make_procrastination(), ValuationRule.constant("all-false", False), 50).ok
    assert verify_rule(make_two_arrow_chain(), ValuationRule.constant("all-false", False), 20).ok
    oa2 = make_or_and(OaSpec(None, 2))
    assert verify_rule(oa2, parse_pattern_rule("x:*:0=T,x:*:1=F"), 20).ok
    bad = verify_rule(make_yablo(), ValuationRule.constant("all-false", False), 5, max_violations=1)
    assert bad.to_json()["violations"] == [{"node": "x:0", "assigned": "F", "computed": "T"}]
    with pytest.raises(ValueError):
        verify_rule(make_yablo(), ValuationRule.constant("f", False), 0)


def test_raw_blade_escape_rule():
    raw = make_saw_blade("raw")
    assert verify_rule(raw, raw.escape_rules()["alternating"], 12).ok


def test_search_escape_examples():
    assert search_escape(make_yablo(), 6).verdict == "both-values-consistent"
    assert search_escape(make_procrastination(), 5).verdict == "only-false-consistent"
    assert search_escape(make_nested_diamond("versuch-left"), 8).verdict == "both-values-consistent"
    rep = search_escape(make_saw_blade("raw"), 6)
    assert rep.root_true.is_sat and rep.to_json()["rootTrue"]["model"]["x:s0:0"] == "T"


def test_oa_reading():
    oa = make_or_and(OaSpec(3, 2))
    g, w = truncate(oa, 6, RESTRICTED)
    m = {n: n.endswith(":0") for n in g.nodes}
    r = interpret_oa_model(g, w, m)
    assert r["x:0:0"].column == (0, ("x:0:1",))
    assert r["x:0:1"].choice == {1: "x:1:0", 2: "x:2:0"}
    assert r["x:1:1"].choice == {2: "x:2:0"}
    assert not any(x.unresolved for x in r.values() if x)
    with pytest.raises(NotAModel):
        interpret_oa_model(g, w, {n: True for n in g.nodes})


def test_outcome_json():
    out = solve(basic(), [Clamp("x", False)])
    j = out.to_json()
    assert j["status"] == "sat" and j["model"] == {"x": "F", "y": "F", "z": "T"}
