"""Total valuation rules over a generator's node namespace."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True)
class ValuationRule:
    name: str
    assign: Callable  # NodeId -> bool

    def __call__(self, node) -> bool:
        return bool(self.assign(node))

    @classmethod
    def constant(cls, name, value: bool) -> "ValuationRule":
        return cls(name, lambda node: value)


def _seg_match(pattern: list, parts: list) -> bool:
    return len(pattern) == len(parts) and all(p == "*" or p == q for p, q in zip(pattern, parts))


def parse_pattern_rule(text: str, default: bool = False) -> ValuationRule:
    """Rule from clauses like ``x:*:0=T,x:*:1=F``.

    ``*`` matches exactly one segment; the first matching clause wins and
    unmatched nodes get ``default``.
    """
    clauses = []
    for raw in text.split(","):
        raw = raw.strip()
        if not raw:
            continue
        if "=" not in raw:
            raise ValueError(f"rule clause {raw!r} lacks '='")
        pat, val = (s.strip() for s in raw.rsplit("=", 1))
        if val not in ("T", "F") or not pat:
            raise ValueError(f"bad rule clause {raw!r}")
        clauses.append((pat.split(":"), val == "T"))
    if not clauses:
        raise ValueError("empty rule")

    def assign(node):
        parts = node.split(":")
        for pat, val in clauses:
            if _seg_match(pat, parts):
                return val
        return default

    return ValuationRule(text, assign)


def model_rule(name: str, model: dict, default: bool = False) -> ValuationRule:
    """Extend a finite model by a constant outside its domain."""
    frozen = dict(model)
    return ValuationRule(name, lambda node: frozen.get(node, default))
