"""Contradiction cells: Yablo cells, cell systems, local transitivity, diamonds."""
from __future__ import annotations

import itertools
from enum import Enum
from typing import NamedTuple

from .errors import HintContradiction, UndecidableWithoutHint
from .graph import NEG, POS, FiniteGraph, Lit

SAMPLE = 64


class YabloCell(NamedTuple):
    head: str
    knee: str
    foot: str


class Diamond(NamedTuple):
    head: str
    knee_neg: str
    knee_pos: str
    meet: str


class CellClass(Enum):
    TWO_ARROW = "TwoArrow"
    THREE_2_1_1 = "ThreeArrow_2_1_1"
    THREE_2_1_2 = "ThreeArrow_2_1_2"
    THREE_2_1_3 = "ThreeArrow_2_1_3"
    YABLO_2_3 = "YabloCell_2_3"
    DIAMOND = "DiamondCell"
    NOT_CONTRADICTORY_2_2 = "NotContradictory_2_2"
    NONE = "None"


# lower rank = simpler cell
_RANK = {
    CellClass.TWO_ARROW: 0,
    CellClass.THREE_2_1_1: 1,
    CellClass.THREE_2_1_2: 1,
    CellClass.THREE_2_1_3: 1,
    CellClass.YABLO_2_3: 2,
    CellClass.DIAMOND: 3,
    CellClass.NOT_CONTRADICTORY_2_2: 4,
    CellClass.NONE: 5,
}

# (head->knee, knee->foot, head->foot)
_TRIANGLES = {
    (POS, NEG, POS): CellClass.THREE_2_1_1,
    (POS, POS, NEG): CellClass.THREE_2_1_2,
    (NEG, POS, POS): CellClass.THREE_2_1_3,
    (NEG, NEG, NEG): CellClass.YABLO_2_3,
    (NEG, NEG, POS): CellClass.NOT_CONTRADICTORY_2_2,
    (NEG, POS, NEG): CellClass.NOT_CONTRADICTORY_2_2,
    (POS, NEG, NEG): CellClass.NOT_CONTRADICTORY_2_2,
}


def find_yablo_cells(graph: FiniteGraph) -> list:
    out = []
    for h in graph.nodes:
        for k, s1 in graph.successors(h):
            if s1 is not NEG:
                continue
            for f, s2 in graph.successors(k):
                if s2 is NEG and graph.arrow_sign(h, f) is NEG:
                    out.append(YabloCell(h, k, f))
    out.sort(key=lambda c: tuple(graph.index(n) for n in c))
    return out


def is_ycs(graph: FiniteGraph, head, knee):
    """Does every arrow out of the knee have a negative twin from the head?"""
    if graph.arrow_sign(head, knee) is not NEG:
        raise ValueError(f"{head} -o {knee} is not a negative arrow")
    missing = [y for y, _ in graph.successors(knee) if graph.arrow_sign(head, y) is not NEG]
    return not missing, missing


def is_locally_transitive(g, x, xp, sample: int = SAMPLE) -> bool:
    """Every successor of xp is a negative successor of x."""
    if isinstance(g, FiniteGraph):
        if g.arrow_sign(x, xp) is not NEG:
            raise ValueError(f"{x} -o {xp} is not a negative arrow")
        return all(g.arrow_sign(x, y) is NEG for y, _ in g.successors(xp))
    a = g.arrow(x, xp)
    if a is None or a[0] is not NEG:
        raise ValueError(f"{x} -o {xp} is not a negative arrow")
    head = list(itertools.islice(g.successors(xp), sample + 1))

    def covered(y):
        b = g.arrow(x, y)
        return b is not None and b[0] is NEG

    ok = all(covered(y) for y, _, _ in head[:sample])
    if len(head) <= sample:
        return ok
    hint = g.transitive_hint(x, xp)
    if hint is None:
        raise UndecidableWithoutHint(f"{xp} has an unbounded successor stream and no hint")
    if hint and not ok:
        raise HintContradiction(f"hint says ({x}, {xp}) is locally transitive, sample disagrees")
    return bool(hint)


def _two_arrow(graph: FiniteGraph, head) -> bool:
    spec = graph.spec(head)
    form = graph.formula(head)
    if form is None or spec is None:
        return False
    for conj in form.disjuncts:
        lits = {it for it in conj if isinstance(it, Lit)}
        if any(~l in lits for l in lits):
            return True
    return False


def find_diamonds(graph: FiniteGraph) -> list:
    """All x -o y -o z, x -o y' -> z quadruples."""
    out = []
    for h in graph.nodes:
        negs = [k for k, s in graph.successors(h) if s is NEG]
        for y in negs:
            for z, s in graph.successors(y):
                if s is not NEG:
                    continue
                for yp in negs:
                    if yp != y and graph.arrow_sign(yp, z) is POS:
                        out.append(Diamond(h, y, yp, z))
    out.sort(key=lambda d: tuple(graph.index(n) for n in d))
    return out


def classify_cell(graph: FiniteGraph, head) -> CellClass:
    """Simplest contradiction cell starting at ``head``."""
    if _two_arrow(graph, head):
        return CellClass.TWO_ARROW
    best = CellClass.NONE
    for k, s1 in graph.successors(head):
        for f, s2 in graph.successors(k):
            s3 = graph.arrow_sign(head, f)
            if s3 is None:
                continue
            c = _TRIANGLES.get((s1, s2, s3), CellClass.NONE)
            if _RANK[c] < _RANK[best]:
                best = c
    if _RANK[best] > _RANK[CellClass.DIAMOND]:
        if any(d.head == head for d in find_diamonds(graph)):
            best = CellClass.DIAMOND
    return best
