"""Line-oriented text format for finite graphs.

    node <id>
    <id> -> <id> [+|-]          (default -)
    <id> := <dnf>               conj (| conj)*, conj = lit (& lit)*, lit = [~]id | T | F
    clamp <id> = T|F
    # comment

Arrow endpoints and formula heads are declared implicitly on first use.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CycleError, DuplicateArrow, ParadoxLabError, ParseError
from .graph import Explicit, FiniteGraph, Grouped, Lit, Sign, build_finite_graph

_ID = r"[A-Za-z0-9_'.]+(?::[A-Za-z0-9_'.]+)*"
_ID_RE = re.compile(rf"^{_ID}$")
_NODE = re.compile(rf"^node\s+({_ID})$")
_ARROW = re.compile(rf"^({_ID})\s*->\s*({_ID})(?:\s+([+-]))?$")
_FORM = re.compile(rf"^({_ID})\s*:=\s*(.+)$")
_CLAMP = re.compile(rf"^clamp\s+({_ID})\s*=\s*([TF])$")


class Decl(NamedTuple):
    kind: str  # node | arrow | formula | clamp | comment
    line: int
    data: tuple


@dataclass
class DslDocument:
    declarations: list

    def render(self) -> str:
        return "".join(_render_decl(d) + "\n" for d in self.declarations)


def _located(exc: ParadoxLabError, line: int):
    out = type(exc)(f"line {line}: {exc}")
    out.line = line
    return out


def _parse_lit(tok: str, line: int):
    tok = tok.strip()
    if tok == "T":
        return True
    if tok == "F":
        return False
    neg = tok.startswith("~")
    name = tok[1:].strip() if neg else tok
    if not _ID_RE.match(name) or name in ("T", "F"):
        raise ParseError(line, f"bad literal {tok!r}")
    return Lit(name, neg)


def parse_formula(text: str, line: int = 0) -> Explicit:
    disj = []
    for part in text.split("|"):
        if not part.strip():
            raise ParseError(line, "empty disjunct")
        conj = []
        for tok in part.split("&"):
            if not tok.strip():
                raise ParseError(line, "empty conjunct item")
            conj.append(_parse_lit(tok, line))
        disj.append(tuple(conj))
    return Explicit(tuple(disj))


def parse_document(text: str) -> DslDocument:
    decls = []
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            decls.append(Decl("comment", no, (s[1:].strip(),)))
            continue
        m = _NODE.match(s)
        if m:
            decls.append(Decl("node", no, (m.group(1),)))
            continue
        m = _CLAMP.match(s)
        if m:
            decls.append(Decl("clamp", no, (m.group(1), m.group(2) == "T")))
            continue
        m = _ARROW.match(s)
        if m:
            decls.append(Decl("arrow", no, (m.group(1), m.group(2), Sign.parse(m.group(3) or "-"))))
            continue
        m = _FORM.match(s)
        if m:
            decls.append(Decl("formula", no, (m.group(1), parse_formula(m.group(2), no))))
            continue
        raise ParseError(no, f"cannot parse {s!r}")
    return DslDocument(decls)


def _reaches(succ, a, b) -> bool:
    stack, seen = [a], set()
    while stack:
        n = stack.pop()
        if n == b:
            return True
        if n not in seen:
            seen.add(n)
            stack.extend(succ.get(n, ()))
    return False


def build_document(doc: DslDocument):
    """Graph and clamp list described by a document."""
    from .solver import Clamp

    nodes, seen = [], set()

    def declare(n):
        if n not in seen:
            seen.add(n)
            nodes.append(n)

    arrows, signs, succ = [], {}, {}
    forms, form_line = {}, {}
    clamps = []
    for d in doc.declarations:
        if d.kind == "node":
            declare(d.data[0])
        elif d.kind == "arrow":
            a, b, s = d.data
            declare(a)
            declare(b)
            if a == b:
                raise _located(CycleError(f"self loop at {a}"), d.line)
            if (a, b) in signs:
                if signs[a, b] is not s:
                    raise _located(DuplicateArrow(f"two arrows {a}->{b} with different signs"), d.line)
                continue
            if _reaches(succ, b, a):
                raise _located(CycleError(f"arrow {a}->{b} closes a cycle"), d.line)
            signs[a, b] = s
            succ.setdefault(a, []).append(b)
            arrows.append((a, b, s))
        elif d.kind == "formula":
            n, f = d.data
            declare(n)
            if n in forms:
                raise ParseError(d.line, f"second formula for {n}")
            forms[n] = f
            form_line[n] = d.line
        elif d.kind == "clamp":
            clamps.append((d.line, Clamp(*d.data)))
    for line, c in clamps:
        if c.node not in seen:
            raise ParseError(line, f"clamp on undeclared node {c.node}")
    # formulas are checked one node at a time so errors carry their line
    for n, f in forms.items():
        own = [(a, b, s) for a, b, s in arrows if a == n]
        local = [n] + [b for _, b, _ in own]
        try:
            build_finite_graph(local, own, {n: f})
        except ParadoxLabError as exc:
            raise _located(exc, form_line[n]) from None
    graph = build_finite_graph(nodes, arrows, forms)
    return graph, [c for _, c in clamps]


def parse_dsl(text: str):
    """(FiniteGraph, clamps) from DSL text."""
    return build_document(parse_document(text))


def _render_lit(it) -> str:
    if it is True:
        return "T"
    if it is False:
        return "F"
    return str(it)


def render_formula(spec: Explicit) -> str:
    return " | ".join(" & ".join(_render_lit(it) for it in c) for c in spec.disjuncts)


def _render_decl(d: Decl) -> str:
    if d.kind == "comment":
        return f"# {d.data[0]}".rstrip()
    if d.kind == "node":
        return f"node {d.data[0]}"
    if d.kind == "arrow":
        return f"{d.data[0]} -> {d.data[1]} {d.data[2]}"
    if d.kind == "formula":
        return f"{d.data[0]} := {render_formula(d.data[1])}"
    return f"clamp {d.data[0]} = {'T' if d.data[1] else 'F'}"


def render_dsl(graph: FiniteGraph, clamps=()) -> str:
    """Canonical text: nodes, then arrows, then formulas, then clamps.

    Pure conjunctions of signed successors are implied and not written;
    grouped formulas with group keys are written out as explicit DNF.
    """
    lines = [f"node {n}" for n in graph.nodes]
    for a in graph.arrows:
        lines.append(f"{a.src} -> {a.dst} {a.sign}")
    for n in graph.nodes:
        spec = graph.spec(n)
        if spec is None or (isinstance(spec, Grouped) and spec.key_of is None):
            continue
        lines.append(f"{n} := {render_formula(graph.formula(n))}")
    for c in clamps:
        lines.append(f"clamp {c.node} = {'T' if c.value else 'F'}")
    return "".join(s + "\n" for s in lines)
