"""Or-And matrices: columns of conjoined negations, disjunction between columns.

Node "x:i:j" sits in column i, row j.  A node points (negatively) to every
node visible from it under the chosen order, and its formula is the
disjunction, over columns, of the conjunction of the negated visible members.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from ..graph import NEG, GraphGenerator
from .rules import ValuationRule

ENUMERATION = "enumeration"
RANKED_HORIZONTAL = "ranked-horizontal"
RANKED_VERTICAL = "ranked-vertical"
MAX_RANK = "max-rank"
CUSTOM = "custom"
ORDERS = (ENUMERATION, RANKED_HORIZONTAL, RANKED_VERTICAL, MAX_RANK, CUSTOM)


def shell_index(i: int, j: int) -> int:
    """Position in the enumeration that walks shell m = max(i, j): first the
    top row left to right up to column m-1, then column m upwards."""
    m = max(i, j)
    if j == m and i < m:
        return m * m + i
    return m * m + m + j


@dataclass(frozen=True)
class OaSpec:
    columns: Optional[int] = None  # None = unbounded
    heights: Optional[int] = None
    order: str = ENUMERATION
    custom: Optional[Callable] = None  # ((i, j), (i', j')) -> bool: second visible from first

    def __post_init__(self):
        if self.order not in ORDERS:
            raise ValueError(f"unknown order {self.order}")
        for v in (self.columns, self.heights):
            if v is not None and v < 1:
                raise ValueError("columns and heights must be >= 1")
        if self.order == CUSTOM and (self.custom is None or self.columns is None or self.heights is None):
            raise ValueError("custom orders need a predicate and finite dimensions")


def _fmt(n):
    return "inf" if n is None else str(n)


class OrAnd(GraphGenerator):
    def __init__(self, spec: OaSpec):
        self.spec = spec
        self.name = f"oa:{spec.order}:{_fmt(spec.columns)}:{_fmt(spec.heights)}"
        self.root = "x:0:0"
        self._custom_levels = None
        if spec.order == CUSTOM:
            self._custom_levels = self._topo_levels()

    # -- coordinates

    @staticmethod
    @functools.lru_cache(maxsize=1 << 16)
    def parse(node):
        p = node.split(":")
        if len(p) != 3 or p[0] != "x" or not (p[1].isdigit() and p[2].isdigit()):
            return None
        return int(p[1]), int(p[2])

    def exists(self, i, j) -> bool:
        c, h = self.spec.columns, self.spec.heights
        return (c is None or i < c) and (h is None or j < h)

    def _coords(self, node):
        ij = self.parse(node)
        if ij is None or not self.exists(*ij):
            raise KeyError(node)
        return ij

    def visible(self, a, b) -> bool:
        """Is b visible from a (so a -o b)?"""
        (i, j), (k, l) = a, b
        o = self.spec.order
        if o == ENUMERATION:
            return shell_index(k, l) > shell_index(i, j)
        if o == RANKED_HORIZONTAL:
            return k > i
        if o == RANKED_VERTICAL:
            return l > j
        if o == MAX_RANK:
            return max(k, l) > max(i, j)
        return bool(self.spec.custom(a, b))

    def enumerate_nodes(self, start_shell: int = 0):
        """Existing nodes in shell order."""
        c, h = self.spec.columns, self.spec.heights
        for m in itertools.count(start_shell):
            if c is not None and h is not None and m >= max(c, h):
                return
            for i in range(m):
                if self.exists(i, m):
                    yield i, m
            for j in range(m + 1):
                if self.exists(m, j):
                    yield m, j

    def rank(self, i, j) -> int:
        """Number of existing nodes before (i, j) in the enumeration."""
        c, h = self.spec.columns, self.spec.heights
        cap_c = (lambda n: n) if c is None else (lambda n: min(n, c))
        cap_h = (lambda n: n) if h is None else (lambda n: min(n, h))
        m = max(i, j)
        r = cap_c(m) * cap_h(m)
        row_m = h is None or m < h
        if j == m and i < m:
            return r + (cap_c(i) if row_m else 0)
        r += cap_c(m) if row_m else 0
        return r + cap_h(j)

    def _topo_levels(self):
        nodes = [(i, j) for i in range(self.spec.columns) for j in range(self.spec.heights)]
        lv = {n: 0 for n in nodes}
        changed = True
        rounds = 0
        while changed:
            changed = False
            rounds += 1
            if rounds > len(nodes) + 1:
                raise ValueError("custom order is cyclic")
            for a in nodes:
                for b in nodes:
                    if a != b and self.visible(a, b) and lv[b] < lv[a] + 1:
                        lv[b] = lv[a] + 1
                        changed = True
        return lv

    def level(self, node):
        i, j = self._coords(node)
        o = self.spec.order
        if o == ENUMERATION:
            return self.rank(i, j)
        if o == RANKED_HORIZONTAL:
            return i
        if o == RANKED_VERTICAL:
            return j
        if o == MAX_RANK:
            return max(i, j)
        return self._custom_levels[(i, j)]

    # -- streams

    def _columns(self, start=0):
        c = self.spec.columns
        return itertools.count(start) if c is None else range(start, c)

    def _rows(self, start=0):
        h = self.spec.heights
        return itertools.count(start) if h is None else range(start, h)

    def _stream(self, a):
        i, j = a
        o = self.spec.order
        if o == ENUMERATION:
            after = False
            for n in self.enumerate_nodes(max(i, j)):
                if after:
                    yield n
                elif n == a:
                    after = True
        elif o == MAX_RANK:
            for n in self.enumerate_nodes(max(i, j) + 1):
                yield n
        elif o == RANKED_HORIZONTAL:
            for k in self._columns(i + 1):
                for l in self._rows():
                    yield k, l
        elif o == RANKED_VERTICAL:
            for l in self._rows(j + 1):
                for k in self._columns():
                    yield k, l
        else:
            lv = self._custom_levels
            yield from sorted((b for b in lv if b != a and self.visible(a, b)),
                              key=lambda b: (lv[b], b))

    def successors(self, node):
        try:
            a = self._coords(node)
        except KeyError:
            return iter(())
        return ((f"x:{k}:{l}", NEG, k) for k, l in self._stream(a))

    def arrow(self, a, b):
        try:
            pa, pb = self._coords(a), self._coords(b)
        except KeyError:
            return None
        if pa != pb and self.visible(pa, pb):
            return NEG, pb[0]
        return None

    def groups(self, node):
        i, j = self._coords(node)
        h = self.spec.heights
        top = (h - 1) if h is not None else max(i, j) + 1
        for c in self._columns():
            if (c, top) != (i, j) and self.visible((i, j), (c, top)):
                yield c

    def group_members(self, node, key):
        a = self._coords(node)
        for r in self._rows():
            if (key, r) != a and self.visible(a, (key, r)):
                yield f"x:{key}:{r}", NEG

    def witness(self, node, group=None):
        if group is None:
            group = next(iter(self.groups(node)), None)
            if group is None:
                return None
        return next((m for m, _ in self.group_members(node, group)), None)

    def transitive_hint(self, x, xp):
        return self.arrow(x, xp) is not None

    def escape_rules(self):
        def rows(node):
            ij = self.parse(node)
            return ij is not None and ij[1] == 0
        return {"oa2-rows": ValuationRule("oa2-rows", rows)}
