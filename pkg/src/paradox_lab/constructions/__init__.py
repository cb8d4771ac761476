"""Generators for the structures under study, addressable by name."""
from __future__ import annotations

from ..graph import GraphGenerator
from .diamonds import Essential, VersuchLeft, make_nested_diamond
from .or_and import (
    ENUMERATION,
    MAX_RANK,
    RANKED_HORIZONTAL,
    RANKED_VERTICAL,
    OaSpec,
    OrAnd,
    shell_index,
)
from .rules import ValuationRule, model_rule, parse_pattern_rule
from .sawblade import SawBlade
from .yablo import GappedYablo, GapSpec, Procrastination, TwoArrowChain, Yablo, default_gaps

__all__ = [
    "ValuationRule", "parse_pattern_rule", "model_rule", "Yablo", "GappedYablo", "GapSpec",
    "TwoArrowChain", "Procrastination", "SawBlade", "OrAnd", "OaSpec", "Essential",
    "VersuchLeft", "shell_index", "make_yablo", "make_saw_blade", "make_or_and",
    "make_procrastination", "make_two_arrow_chain", "make_nested_diamond",
    "make_gapped_yablo", "make_construction", "GALLERY",
]


def make_yablo() -> Yablo:
    return Yablo()


def make_saw_blade(variant: str = "closed", depth: int = 1) -> SawBlade:
    return SawBlade(variant, depth)


def make_or_and(spec: OaSpec) -> OrAnd:
    return OrAnd(spec)


def make_procrastination() -> Procrastination:
    return Procrastination()


def make_two_arrow_chain() -> TwoArrowChain:
    return TwoArrowChain()


def make_gapped_yablo(gaps) -> GappedYablo:
    if isinstance(gaps, int):
        return GappedYablo(default_gaps(gaps), f"gapped-yablo:{gaps}")
    return GappedYablo(gaps)


def _dim(text):
    return None if text in ("inf", "*") else int(text)


def make_construction(name: str) -> GraphGenerator:
    """Build a generator from its CLI name."""
    parts = name.split(":")
    head = parts[0]
    try:
        if head == "yablo" and len(parts) == 1:
            return make_yablo()
        if head == "procrastination" and len(parts) == 1:
            return make_procrastination()
        if head == "two-arrow" and len(parts) == 1:
            return make_two_arrow_chain()
        if head == "sawblade" and len(parts) >= 2:
            if parts[1] == "composed":
                return make_saw_blade("composed", int(parts[2]) if len(parts) > 2 else 1)
            if len(parts) == 2:
                return make_saw_blade(parts[1])
        if head == "oa" and len(parts) == 4:
            return make_or_and(OaSpec(_dim(parts[2]), _dim(parts[3]), parts[1]))
        if head == "diamond" and len(parts) == 2:
            return make_nested_diamond(parts[1])
        if head == "gapped-yablo" and len(parts) == 2:
            return make_gapped_yablo(int(parts[1]))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad construction name {name!r}: {exc}") from None
    raise ValueError(f"unknown construction {name!r}")


# construction name -> expected certification verdict
GALLERY = {
    "yablo": "certified",
    "gapped-yablo:1": "certified",
    "gapped-yablo:2": "certified",
    "gapped-yablo:3": "certified",
    "sawblade:closed": "certified",
    "sawblade:composed:3": "certified",
    "sawblade:dec-yc": "certified",
    "sawblade:dec-pair": "certified",
    "sawblade:shared-y": "certified",
    "oa:enumeration:inf:inf": "certified",
    "oa:enumeration:3:inf": "certified",
    "oa:ranked-horizontal:inf:inf": "certified",
    "oa:ranked-vertical:inf:inf": "certified",
    "oa:max-rank:inf:inf": "certified",
    "diamond:essential": "certified",
    "two-arrow": "escape",
    "sawblade:raw": "escape",
    "procrastination": "escape",
    "oa:enumeration:inf:2": "escape",
    "diamond:versuch-left": "escape",
    "diamond:versuch-right": "escape",
    "diamond:rhombus-basic": "escape",
    "diamond:matrix5": "escape",
}
