"""Small finite diagrams used as worked examples."""
from __future__ import annotations

from ..graph import NEG, POS, build_finite_graph


def _g(nodes, neg=(), pos=(), formulas=None):
    arrows = [(a, b, NEG) for a, b in neg] + [(a, b, POS) for a, b in pos]
    return build_finite_graph(nodes, arrows, formulas)


def basic():
    """x -o y -o z, x -o z."""
    return _g(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")])


def basic_extended():
    """``basic`` plus an escape arrow y -o y'."""
    return _g(["x", "y", "z", "yp"], [("x", "y"), ("y", "z"), ("x", "z"), ("y", "yp")])


def tower2():
    nodes = ["x:0", "x:1", "x:2", "x:3", "x:4"]
    neg = [("x:0", "x:1"), ("x:2", "x:3")]
    pos = [("x:1", "x:2"), ("x:3", "x:4"), ("x:2", "x:4"), ("x:0", "x:2")]
    return _g(nodes, neg, pos)


def tower2_paths():
    """The four root-to-top paths in the order the example names them."""
    from ..paths import Path

    g = tower2()
    seqs = [
        ["x:0", "x:1", "x:2", "x:3", "x:4"],
        ["x:0", "x:1", "x:2", "x:4"],
        ["x:0", "x:2", "x:3", "x:4"],
        ["x:0", "x:2", "x:4"],
    ]
    return [Path.along(g, s) for s in seqs]


def logic_negation():
    """x = ~y & ~z, y = ~z & ~y', y' = ~z: x denotes ~z."""
    return _g(["x", "y", "yp", "z"],
              [("x", "y"), ("x", "z"), ("y", "z"), ("y", "yp"), ("yp", "z")])


def logic_negation_variant():
    """As ``logic_negation`` with the y -o z leg replaced by y -o y'' -> z."""
    return _g(["x", "y", "yp", "ypp", "z"],
              [("x", "y"), ("x", "z"), ("y", "ypp"), ("y", "yp"), ("yp", "z")],
              [("ypp", "z")])


def logic_identity():
    """x = ~y & ~z, y = ~z & ~z', z = ~z': x denotes z'."""
    return _g(["x", "y", "z", "zp"],
              [("x", "y"), ("x", "z"), ("y", "z"), ("y", "zp"), ("z", "zp")])


def logic_true():
    """x = ~y & ~z, y = ~y' & ~z, y' = ~z, z = ~z' & ~z'', z' = ~z'': constant TRUE."""
    return _g(["x", "y", "yp", "z", "zp", "zpp"],
              [("x", "y"), ("x", "z"), ("y", "yp"), ("y", "z"), ("yp", "z"),
               ("z", "zp"), ("z", "zpp"), ("zp", "zpp")])


def logic_conjunction():
    """x = ~z & ~y & ~u, y = ~z & ~u' & ~u, z = ~z', u' = ~u: x denotes z' & ~u."""
    return _g(["x", "y", "z", "u", "up", "zp"],
              [("x", "z"), ("x", "y"), ("x", "u"), ("y", "z"), ("y", "up"), ("y", "u"),
               ("z", "zp"), ("up", "u")])


FIXTURES = {
    "basic": basic,
    "basic-extended": basic_extended,
    "tower2": tower2,
    "logic-negation": logic_negation,
    "logic-negation-variant": logic_negation_variant,
    "logic-identity": logic_identity,
    "logic-true": logic_true,
    "logic-conjunction": logic_conjunction,
}
