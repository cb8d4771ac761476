"""Diamond-based attempts at Yablo-like structures.

A diamond is x -o y -o z together with x -o y' -> z.  Node names follow the
drawings: "x:k" on the main line, "x:k:1" / "x:k:2" for the two knees of the
diamond below level k.
"""
from __future__ import annotations

import itertools

from ..graph import NEG, POS, Explicit, FiniteGenerator, GraphGenerator, Lit, build_finite_graph
from .rules import ValuationRule


def _split(node):
    p = node.split(":")
    if p[0] != "x" or not all(s.isdigit() for s in p[1:]) or len(p) not in (2, 3):
        return None
    return tuple(int(s) for s in p[1:])


class Essential(GraphGenerator):
    """x:i = ~x:(i+1) & AND_j ~x:i:j (j > i+1),  x:i:j = x:j | (y:i:j & ~y:i:j).

    Every x:i:j is equivalent to x:j, so x:i behaves like Yablo's x_i.
    """
    conjunctive = True

    name = "diamond:essential"
    root = "x:0"

    @staticmethod
    def _parse(node):
        p = node.split(":")
        if p[0] not in ("x", "y") or not all(s.isdigit() for s in p[1:]):
            return None
        if p[0] == "x" and len(p) == 2:
            return ("x", int(p[1]))
        if len(p) == 3:
            i, j = int(p[1]), int(p[2])
            if j >= i + 2:
                return (p[0] + "ij", i, j)
        return None

    def level(self, node):
        t = self._parse(node)
        if t[0] == "x":
            return 2 * t[1]
        return 2 * t[2] - (1 if t[0] == "xij" else 0)

    def successors(self, node):
        t = self._parse(node)
        if t is None or t[0] == "yij":
            return iter(())
        if t[0] == "x":
            i = t[1]
            head = [(f"x:{i + 1}", NEG, None)]
            rest = ((f"x:{i}:{j}", NEG, None) for j in itertools.count(i + 2))
            return itertools.chain(head, rest)
        _, i, j = t
        return iter([(f"x:{j}", POS, None), (f"y:{i}:{j}", NEG, None)])

    def explicit(self, node):
        t = self._parse(node)
        if t is None or t[0] != "xij":
            return None
        _, i, j = t
        y = f"y:{i}:{j}"
        return Explicit(((Lit(f"x:{j}"),), (Lit(y), Lit(y, True))))

    def arrow(self, a, b):
        ta, tb = self._parse(a), self._parse(b)
        if ta is None or tb is None:
            return None
        if ta[0] == "x":
            i = ta[1]
            if tb == ("x", i + 1):
                return NEG, None
            if tb[0] == "xij" and tb[1] == i:
                return NEG, None
            return None
        if ta[0] == "xij":
            _, i, j = ta
            if tb == ("x", j):
                return POS, None
            if tb == ("yij", i, j):
                return NEG, None
        return None

    def witness(self, node, group=None):
        t = self._parse(node)
        if t is not None and t[0] == "x":
            return f"x:{t[1] + 1}"
        return None


class VersuchLeft(GraphGenerator):
    """Left-hand attempt: a negative main line m0 -o m1 -o m2 ... with
    m_k = x:k (k even) or x:k:2 (k odd), plus left knees x:k:1 (k odd):
    x:0 -o x:1:1, x:k:1 -> x:(k+1), x:k:1 -o x:(k+2):1, x:k:1 -o x:(k+2):2.
    """
    conjunctive = True

    name = "diamond:versuch-left"
    root = "x:0"

    @staticmethod
    def _parse(node):
        t = _split(node)
        if t is None:
            return None
        if len(t) == 1:
            return ("m", t[0]) if t[0] % 2 == 0 else None
        k, side = t
        if k % 2 == 1 and side in (1, 2):
            return ("m", k) if side == 2 else ("l", k)
        return None

    @staticmethod
    def main(k):
        return f"x:{k}" if k % 2 == 0 else f"x:{k}:2"

    def level(self, node):
        return self._parse(node)[1]

    def successors(self, node):
        t = self._parse(node)
        if t is None:
            return iter(())
        kind, k = t
        if kind == "m":
            out = []
            if k == 0:
                out.append(("x:1:1", NEG, None))
            out.append((self.main(k + 1), NEG, None))
            return iter(out)
        return iter([(f"x:{k + 1}", POS, None), (f"x:{k + 2}:1", NEG, None),
                     (f"x:{k + 2}:2", NEG, None)])

    def arrow(self, a, b):
        for dst, s, g in self.successors(a):
            if dst == b:
                return s, g
        return None

    def escape_rules(self):
        def rule(root_value):
            # main line alternates (even T, odd F); left knees alternate in
            # pairs so that x:k:1 = ~x:(k+2):1 holds everywhere
            left_true = 3 if root_value else 1

            def assign(node):
                t = self._parse(node)
                if t is None:
                    return False
                kind, k = t
                if kind == "m":
                    if k == 0:
                        return root_value
                    return k % 2 == 0
                return k % 4 == left_true
            return assign
        return {"versuch-left-false": ValuationRule("versuch-left-false", rule(False)),
                "versuch-left-true": ValuationRule("versuch-left-true", rule(True))}


def _graph(nodes, neg, pos, formulas=None):
    arrows = [(a, b, NEG) for a, b in neg] + [(a, b, POS) for a, b in pos]
    return build_finite_graph(nodes, arrows, formulas)


def versuch_right():
    main = ["x:0", "x:1:2", "x:2", "x:3:2", "x:4", "x:5", "x:6:2", "x:7"]
    left = ["x:1:1", "x:3:1", "x:6:1"]
    neg = list(zip(main, main[1:]))
    neg += [("x:0", "x:1:1"), ("x:1:1", "x:3:1"), ("x:3:1", "x:6:1"),
            ("x:1:1", "x:3:2"), ("x:3:1", "x:6:2")]
    pos = [("x:1:1", "x:2"), ("x:3:1", "x:4"), ("x:6:1", "x:7")]
    return _graph(main[:1] + left + main[1:], neg, pos)


RHOMBUS_DIAMONDS = (
    ("x:0", "x:1:1", "x:2", "x:1:2"),
    ("x:1:1", "x:3:1", "x:4:1", "x:3:2"),
    ("x:1:2", "x:3:3", "x:4:2", "x:3:4"),
    ("x:3:1", "x:5:1", "x:6:1", "x:5:2"),
    ("x:3:2", "x:5:3", "x:6:2", "x:5:4"),
    ("x:3:3", "x:5:5", "x:6:3", "x:5:6"),
    ("x:3:4", "x:5:7", "x:6:4", "x:5:8"),
)


def rhombus_basic(synchronized: bool = False):
    """Seven nested diamonds (head, positive knee, top, negative knee).

    With ``synchronized`` the root also demands that the two branching points
    below agree: (x31 & x34) | (x32 & x33) | (x2 & ~x2).
    """
    nodes, neg, pos = [], [], []
    for h, left, top, right in RHOMBUS_DIAMONDS:
        for n in (h, left, right, top):
            if n not in nodes:
                nodes.append(n)
        neg += [(h, left), (h, right), (right, top)]
        pos += [(left, top)]
    formulas = None
    if synchronized:
        pos += [("x:0", n) for n in ("x:3:1", "x:3:2", "x:3:3", "x:3:4")]
        neg += [("x:0", "x:2")]
        base = (Lit("x:1:1", True), Lit("x:1:2", True))
        formulas = {"x:0": Explicit((
            base + (Lit("x:3:1"), Lit("x:3:4")),
            base + (Lit("x:3:2"), Lit("x:3:3")),
            base + (Lit("x:2"), Lit("x:2", True)),
        ))}
    return _graph(nodes, neg, pos, formulas)


def matrix5():
    nodes = ["x", "x:1", "x:2", "x:3", "x:4", "y", "x:2:1", "x:2:2", "x:3:1", "x:3:2",
             "x:4:1", "x:4:2", "y:2", "y:3", "y:4"]
    neg = [("x", "x:1"), ("x", "x:2"), ("x", "x:3"), ("x", "x:4"), ("x:1", "y"),
           ("x:2", "x:2:1"), ("x:2", "x:2:2"), ("x:3", "x:3:1"), ("x:3", "x:3:2"),
           ("x:4", "x:4:1"), ("x:4", "x:4:2"),
           ("x:2:1", "y:2"), ("x:3:1", "y:3"), ("x:4:1", "y:4")]
    pos = [("x:2", "y"), ("x:3", "x:2:2"), ("x:4", "x:3:2"),
           ("x:2:2", "y:2"), ("x:3:2", "y:3"), ("x:4:2", "y:4")]
    return _graph(nodes, neg, pos)


VARIANTS = ("essential", "versuch-left", "versuch-right", "rhombus-basic",
            "rhombus-sync", "matrix5")


def make_nested_diamond(variant: str) -> GraphGenerator:
    if variant == "essential":
        return Essential()
    if variant == "versuch-left":
        return VersuchLeft()
    if variant == "versuch-right":
        return FiniteGenerator(versuch_right(), "x:0", "diamond:versuch-right")
    if variant == "rhombus-basic":
        return FiniteGenerator(rhombus_basic(), "x:0", "diamond:rhombus-basic")
    if variant == "rhombus-sync":
        return FiniteGenerator(rhombus_basic(True), "x:0", "diamond:rhombus-sync")
    if variant == "matrix5":
        return FiniteGenerator(matrix5(), "x", "diamond:matrix5")
    raise ValueError(f"unknown diamond variant {variant}")
