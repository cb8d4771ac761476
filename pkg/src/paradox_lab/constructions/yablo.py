"""Yablo's chain and its simple relatives."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..errors import GapUnbounded
from ..graph import NEG, POS, Explicit, GraphGenerator, Lit
from .rules import ValuationRule


def index_of(node: str, prefix: str = "x") -> Optional[int]:
    parts = node.split(":")
    if len(parts) != 2 or parts[0] != prefix or not parts[1].isdigit():
        return None
    return int(parts[1])


class Yablo(GraphGenerator):
    """x:i -o x:j for all i < j; x:i is the conjunction of the negated x:j."""
    conjunctive = True

    name = "yablo"
    root = "x:0"

    def successors(self, node):
        i = index_of(node)
        if i is None:
            return iter(())
        return ((f"x:{j}", NEG, None) for j in itertools.count(i + 1))

    def level(self, node):
        return index_of(node)

    def arrow(self, a, b):
        i, j = index_of(a), index_of(b)
        if i is None or j is None or j <= i:
            return None
        return NEG, None

    def witness(self, node, group=None):
        i = index_of(node)
        return None if i is None else f"x:{i + 1}"

    def transitive_hint(self, x, xp):
        return self.arrow(x, xp) is not None


BOUNDED_AT_ROOT = "bounded-root"
BOUNDED_EVERYWHERE = "bounded-everywhere"
UNBOUNDED_AT_ROOT = "unbounded-root"
GAP_MODES = (BOUNDED_AT_ROOT, BOUNDED_EVERYWHERE, UNBOUNDED_AT_ROOT)


def _odd(j):
    return j % 2 == 1


@dataclass(frozen=True)
class GapSpec:
    """Arrows removed from Yablo's closure.

    ``removed`` lists (i, j) index pairs.  The unbounded mode removes every
    root arrow x:0 -o x:j with ``root_gap(j)`` true, and nothing else.
    """

    mode: str
    bound: Optional[int] = None
    removed: frozenset = frozenset()
    root_gap: Optional[Callable] = field(default=None, compare=False)

    def __post_init__(self):
        if self.mode not in GAP_MODES:
            raise ValueError(f"unknown gap mode {self.mode}")
        object.__setattr__(self, "removed", frozenset(self.removed))
        for i, j in self.removed:
            if not 0 <= i < j:
                raise ValueError(f"({i}, {j}) is not a Yablo arrow")
        if self.mode == UNBOUNDED_AT_ROOT:
            if any(i != 0 for i, _ in self.removed):
                raise GapUnbounded("unbounded root gaps leave every other node unaffected")
            if self.root_gap is None:
                object.__setattr__(self, "root_gap", _odd)
            return
        if self.bound is None:
            raise GapUnbounded(f"mode {self.mode} needs a finite bound")
        if self.mode == BOUNDED_AT_ROOT and any(i != 0 for i, _ in self.removed):
            raise ValueError("bounded-root gaps may only remove arrows of x:0")
        if any(j >= self.bound for _, j in self.removed):
            raise GapUnbounded(f"a removed arrow reaches beyond the bound {self.bound}")

    def is_removed(self, i, j) -> bool:
        if (i, j) in self.removed:
            return True
        return self.mode == UNBOUNDED_AT_ROOT and i == 0 and self.root_gap(j)


def default_gaps(mode: int) -> GapSpec:
    """The three robustness scenarios, numbered 1-3."""
    n = 5
    if mode == 1:
        return GapSpec(BOUNDED_AT_ROOT, n, {(0, j) for j in range(1, n)})
    if mode == 2:
        return GapSpec(BOUNDED_EVERYWHERE, n,
                       {(i, j) for i in range(n) for j in range(i + 2, n)})
    if mode == 3:
        return GapSpec(UNBOUNDED_AT_ROOT)
    raise ValueError(f"gap mode must be 1, 2 or 3, not {mode}")


class GappedYablo(Yablo):
    def __init__(self, gaps: GapSpec, label: Optional[str] = None):
        self.gaps = gaps
        self.name = label or f"gapped-yablo:{gaps.mode}"

    def successors(self, node):
        i = index_of(node)
        if i is None:
            return iter(())
        return ((f"x:{j}", NEG, None) for j in itertools.count(i + 1)
                if not self.gaps.is_removed(i, j))

    def arrow(self, a, b):
        i, j = index_of(a), index_of(b)
        if i is None or j is None or j <= i or self.gaps.is_removed(i, j):
            return None
        return NEG, None

    def witness(self, node, group=None):
        i = index_of(node)
        if i is None:
            return None
        if self.gaps.mode == UNBOUNDED_AT_ROOT:
            return None if i == 0 else f"x:{i + 1}"
        k = max(i + 1, self.gaps.bound)
        return f"x:{k}"

    def transitive_hint(self, x, xp):
        i, j = index_of(x), index_of(xp)
        if self.arrow(x, xp) is None:
            return False
        if self.gaps.mode == UNBOUNDED_AT_ROOT:
            return i != 0
        return not any(self.gaps.is_removed(i, k) and not self.gaps.is_removed(j, k)
                       for k in range(j + 1, self.gaps.bound))


class TwoArrowChain(GraphGenerator):
    """x:i = x:(i+1) & ~x:(i+1): one negative arrow carrying both literals."""
    conjunctive = True

    name = "two-arrow"
    root = "x:0"

    def successors(self, node):
        i = index_of(node)
        if i is None:
            return iter(())
        return iter([(f"x:{i + 1}", NEG, None)])

    def level(self, node):
        return index_of(node)

    def arrow(self, a, b):
        i, j = index_of(a), index_of(b)
        return (NEG, None) if i is not None and j == i + 1 else None

    def explicit(self, node):
        i = index_of(node)
        if i is None:
            return None
        y = f"x:{i + 1}"
        return Explicit(((Lit(y, False), Lit(y, True)),))

    def witness(self, node, group=None):
        i = index_of(node)
        return None if i is None else f"x:{i + 1}"

    def escape_rules(self):
        return {"all-false": ValuationRule.constant("all-false", False)}


class Procrastination(GraphGenerator):
    """Y:i = ~Y:(i+1) & X:(i+2),  X:i = ~Y:i & X:(i+1)."""
    conjunctive = True

    name = "procrastination"
    root = "Y:1"

    @staticmethod
    def _parse(node):
        p = node.split(":")
        if len(p) != 2 or p[0] not in ("X", "Y") or not p[1].isdigit():
            return None, None
        i = int(p[1])
        if (p[0] == "Y" and i < 1) or (p[0] == "X" and i < 3):
            return None, None
        return p[0], i

    def successors(self, node):
        kind, i = self._parse(node)
        if kind == "Y":
            return iter([(f"Y:{i + 1}", NEG, None), (f"X:{i + 2}", POS, None)])
        if kind == "X":
            return iter([(f"Y:{i}", NEG, None), (f"X:{i + 1}", POS, None)])
        return iter(())

    def level(self, node):
        kind, i = self._parse(node)
        return i - 1 if kind == "Y" else i - 2

    def arrow(self, a, b):
        for dst, s, g in self.successors(a):
            if dst == b:
                return s, g
        return None

    def escape_rules(self):
        return {"all-false": ValuationRule.constant("all-false", False)}
