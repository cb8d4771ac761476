"""Graphviz DOT output."""
from __future__ import annotations

from .graph import NEG, FiniteGraph


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: FiniteGraph, name: str = "G") -> str:
    """Deterministic DOT text; Neg arrows dashed, Pos arrows solid."""
    out = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    for n in sorted(graph.nodes):
        out.append(f"  {_q(n)};")
    for a in sorted(graph.arrows, key=lambda a: (a.src, a.dst)):
        style = "dashed" if a.sign is NEG else "solid"
        out.append(f'  {_q(a.src)} -> {_q(a.dst)} [style={style}, label="{a.sign}"];')
    out.append("}")
    return "\n".join(out) + "\n"
