"""Saw blades: a negative back chain with teeth, and its variants.

Blade ids are "s0" for the first blade and "s0.3" for the blade started at
tooth 3 of s0.  Back node k of blade b is "x:b:k", tooth k is "y:b:k"; in a
child blade the start (back position 0) is the parent's tooth itself.
Decorations hang off teeth: "u:b:k", "v:b:k" (a Yablo cell) or "yp:b:k".
"""
from __future__ import annotations

import itertools
from typing import Optional

from ..graph import NEG, Explicit, GraphGenerator, Lit
from .rules import ValuationRule

RAW = "raw"
CLOSED = "closed"
COMPOSED = "composed"
DEC_YC = "dec-yc"
DEC_PAIR = "dec-pair"
SHARED_Y = "shared-y"
VARIANTS = (RAW, CLOSED, COMPOSED, DEC_YC, DEC_PAIR, SHARED_Y)

ROOT_BLADE = "s0"


def _blade_ok(blade: str) -> bool:
    parts = blade.split(".")
    return parts[0] == ROOT_BLADE and all(p.isdigit() for p in parts[1:])


def blade_base(blade: str) -> int:
    """Level of the blade's start node."""
    parts = blade.split(".")
    return sum(int(p) + 2 for p in parts[1:])


def nesting(blade: str) -> int:
    return blade.count(".")


class SawBlade(GraphGenerator):
    conjunctive = True
    def __init__(self, variant: str = CLOSED, depth: int = 1):
        if variant not in VARIANTS:
            raise ValueError(f"unknown saw blade variant {variant}")
        if variant == COMPOSED and depth < 1:
            raise ValueError("composed saw blades need depth >= 1")
        self.variant = variant
        self.depth = depth if variant == COMPOSED else 0
        self.name = f"sawblade:{variant}" + (f":{depth}" if variant == COMPOSED else "")
        self.root = f"x:{ROOT_BLADE}:0"

    # -- naming

    def back(self, blade, k) -> str:
        if k == 0 and blade != ROOT_BLADE:
            parent, i = blade.rsplit(".", 1)
            return f"y:{parent}:{i}"
        return f"x:{blade}:{k}"

    def tooth(self, blade, k) -> str:
        if self.variant == SHARED_Y:
            return f"y:{ROOT_BLADE}"
        return f"y:{blade}:{k}"

    def _parse(self, node):
        """(kind, blade, k); kind in back/tooth/u/v/yp/shared-y/shared-yp."""
        p = node.split(":")
        if self.variant == SHARED_Y and len(p) == 2 and p[1] == ROOT_BLADE:
            if p[0] == "y":
                return "shared-y", ROOT_BLADE, 0
            if p[0] == "yp":
                return "shared-yp", ROOT_BLADE, 0
            return None
        if len(p) != 3 or not p[2].isdigit() or not _blade_ok(p[1]):
            return None
        kind, blade, k = p[0], p[1], int(p[2])
        if nesting(blade) > self.depth:
            return None
        if kind == "x":
            if k == 0 and blade != ROOT_BLADE:
                return None
            return "back", blade, k
        if self.variant == SHARED_Y:
            return None
        if kind == "y":
            if self.variant == COMPOSED and nesting(blade) < self.depth:
                return "back", f"{blade}.{k}", 0
            return "tooth", blade, k
        if kind in ("u", "v") and self.variant == DEC_YC:
            return kind, blade, k
        if kind == "yp" and self.variant == DEC_PAIR:
            return kind, blade, k
        return None

    # -- structure

    def level(self, node):
        kind, blade, k = self._parse(node)
        if kind == "shared-y":
            return 1
        if kind == "shared-yp":
            return 2
        base = blade_base(blade)
        if kind == "back":
            return base + k
        tooth_level = base + k + 2
        return tooth_level + {"tooth": 0, "u": 1, "v": 2, "yp": 1}[kind]

    def successors(self, node):
        parsed = self._parse(node)
        if parsed is None:
            return iter(())
        kind, blade, k = parsed
        if kind == "back":
            return self._back_stream(blade, k)
        if kind == "shared-y":
            return iter([(f"yp:{ROOT_BLADE}", NEG, None)])
        if kind == "tooth":
            if self.variant == DEC_YC:
                return iter([(f"u:{blade}:{k}", NEG, None), (f"v:{blade}:{k}", NEG, None)])
            if self.variant == DEC_PAIR:
                return iter([(f"yp:{blade}:{k}", NEG, None)])
            return iter(())
        if kind == "u":
            return iter([(f"v:{blade}:{k}", NEG, None)])
        return iter(())

    def _back_stream(self, blade, k):
        if self.variant == RAW:
            out = [(self.back(blade, k + 1), NEG, None)]
            if k >= 1:
                out.append((self.tooth(blade, k - 1), NEG, None))
            out.append((self.tooth(blade, k), NEG, None))
            return iter(out)
        return self._closed_stream(blade, k)

    def _closed_stream(self, blade, k):
        if self.variant == SHARED_Y:
            yield self.tooth(blade, 0), NEG, None
        for lv in itertools.count(k + 1):
            yield self.back(blade, lv), NEG, None
            if self.variant != SHARED_Y and lv - 2 >= max(k - 1, 0):
                yield self.tooth(blade, lv - 2), NEG, None

    def explicit(self, node):
        parsed = self._parse(node)
        if parsed is None:
            return None
        kind, blade, k = parsed
        if kind == "tooth" and self.variant == DEC_PAIR:
            yp = f"yp:{blade}:{k}"
            return Explicit(((Lit(yp, False), Lit(yp, True)),))
        if kind == "shared-y":
            yp = f"yp:{ROOT_BLADE}"
            return Explicit(((Lit(yp, False), Lit(yp, True)),))
        return None

    def arrow(self, a, b):
        try:
            lb = self.level(b)
        except (TypeError, KeyError):
            return None
        if self._parse(a) is None:
            return None
        for dst, s, g in self.successors(a):
            if dst == b:
                return s, g
            if self.level(dst) > lb:
                return None
        return None

    def witness(self, node, group=None) -> Optional[str]:
        parsed = self._parse(node)
        if parsed is None:
            return None
        kind, blade, k = parsed
        if kind == "back" and self.variant != RAW:
            return self.back(blade, k + 1)
        if kind == "tooth" and self.variant == DEC_YC:
            return f"u:{blade}:{k}"
        return None

    def transitive_hint(self, x, xp):
        px, pxp = self._parse(x), self._parse(xp)
        if px is None or pxp is None or self.arrow(x, xp) is None:
            return False
        if self.variant == RAW:
            return False
        if px[0] == "back" and pxp[0] == "back":
            return px[1] == pxp[1]
        return px[0] == "tooth" and pxp[0] == "u"

    def escape_rules(self):
        rules = {}
        if self.variant == RAW:
            def alternating(parity):
                def assign(node):
                    p = self._parse(node)
                    return p is not None and p[0] == "back" and p[1] == ROOT_BLADE and p[2] % 2 == parity
                return assign
            rules["alternating"] = ValuationRule("alternating", alternating(0))
            rules["alternating-odd"] = ValuationRule("alternating-odd", alternating(1))
        if self.variant == CLOSED:
            rules["teeth-true"] = ValuationRule(
                "teeth-true", lambda node: (self._parse(node) or ("",))[0] == "tooth")
        return rules
