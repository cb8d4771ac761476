"""Paths, path values, contradictions and negation types."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import MixedSigns
from .graph import NEG, POS, FiniteGraph, Sign


@dataclass(frozen=True)
class Path:
    nodes: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "signs", tuple(self.signs))
        if len(self.nodes) < 2 or len(self.signs) != len(self.nodes) - 1:
            raise ValueError("a path needs >= 2 nodes and one sign per arrow")

    @property
    def start(self):
        return self.nodes[0]

    @property
    def end(self):
        return self.nodes[-1]

    @property
    def value(self) -> Sign:
        return path_value(self)

    def __len__(self):
        return len(self.signs)

    def __add__(self, other: "Path") -> "Path":
        if self.end != other.start:
            raise ValueError("paths do not connect")
        return Path(self.nodes + other.nodes[1:], self.signs + other.signs)

    def prefix_value(self, node) -> Sign:
        """Value of the prefix ending at ``node``."""
        k = self.nodes.index(node)
        return _parity(self.signs[:k])

    def __str__(self):
        out = [self.nodes[0]]
        for s, n in zip(self.signs, self.nodes[1:]):
            out.append(" -o " if s is NEG else " -> ")
            out.append(n)
        return "".join(out)

    def to_json(self):
        return {"nodes": list(self.nodes), "signs": [s.value for s in self.signs],
                "value": self.value.value}

    @classmethod
    def along(cls, graph: FiniteGraph, nodes) -> "Path":
        signs = []
        for a, b in zip(nodes, nodes[1:]):
            s = graph.arrow_sign(a, b)
            if s is None:
                raise ValueError(f"no arrow {a}->{b}")
            signs.append(s)
        return cls(tuple(nodes), tuple(signs))


def _parity(signs) -> Sign:
    return POS if sum(1 for s in signs if s is NEG) % 2 == 0 else NEG


def path_value(p: Path) -> Sign:
    """+ iff the path has an even number of negative arrows."""
    return _parity(p.signs)


def find_paths(graph: FiniteGraph, start, end, max_len: int, limit: Optional[int] = None) -> list:
    """All paths start->end with at most ``max_len`` arrows, sorted by node sequence."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if start == end or start not in graph or end not in graph:
        return []
    # prune to nodes that can still reach ``end``
    can = {end}
    for n in reversed(graph.topo):
        if any(b in can for b, _ in graph.successors(n)):
            can.add(n)
    out = []
    stack = [(start, (start,), ())]
    while stack:
        n, nodes, signs = stack.pop()
        if n == end:
            out.append(Path(nodes, signs))
            if limit is not None and len(out) >= limit:
                break
            continue
        if len(signs) >= max_len:
            continue
        for b, s in reversed(graph.successors(n)):
            if b in can:
                stack.append((b, nodes + (b,), signs + (s,)))
    out.sort(key=lambda p: p.nodes)
    return out


def contradiction_points(p: Path, q: Path) -> list:
    """Common nodes (after a shared start) where the prefix values differ."""
    if p.start != q.start:
        return []
    qset = set(q.nodes[1:])
    return [m for m in p.nodes[1:] if m in qset and p.prefix_value(m) != q.prefix_value(m)]


def contradictory(p: Path, q: Path, end_only: bool = False) -> bool:
    """Paths from a common start contradict when they reach a common node
    with different values.  ``end_only`` restricts to the common end node."""
    if p.start != q.start:
        return False
    if end_only:
        return p.end == q.end and path_value(p) != path_value(q)
    return bool(contradiction_points(p, q))


def first_meet(p: Path, q: Path) -> Optional[str]:
    qset = set(q.nodes[1:])
    for m in p.nodes[1:]:
        if m in qset:
            return m
    return None


def merges_after_meet(p: Path, q: Path) -> bool:
    """After their first common node the two paths coincide."""
    m = first_meet(p, q)
    if m is None:
        return True
    return p.nodes[p.nodes.index(m):] == q.nodes[q.nodes.index(m):]


@dataclass(frozen=True)
class LoopViolation:
    paths: tuple
    kind: str  # "merge-after-meet" (a genuine counterexample) or "re-branching"

    def to_json(self):
        return {"kind": self.kind, "paths": [p.to_json() for p in self.paths]}


def odd_loop_scan(graph: FiniteGraph, origin, end, max_len: int = 8, k: int = 3,
                  path_limit: int = 200) -> list:
    """Report k-tuples (k odd) of origin->end paths that pairwise contradict.

    Tuples whose members coincide after meeting would refute the two-valued
    argument and are tagged "merge-after-meet"; tuples that branch again after
    meeting are legitimate and tagged "re-branching".
    """
    if k < 3 or k % 2 == 0:
        raise ValueError("k must be odd and >= 3")
    paths = find_paths(graph, origin, end, max_len, limit=path_limit)
    n = len(paths)
    contra = {}
    merge = {}
    for i, j in itertools.combinations(range(n), 2):
        contra[i, j] = contradictory(paths[i], paths[j])
        merge[i, j] = merges_after_meet(paths[i], paths[j])
    out = []
    for combo in itertools.combinations(range(n), k):
        pairs = list(itertools.combinations(combo, 2))
        if all(contra[p] for p in pairs):
            kind = "merge-after-meet" if all(merge[p] for p in pairs) else "re-branching"
            out.append(LoopViolation(tuple(paths[i] for i in combo), kind))
    return out


# --------------------------------------------------------------------------
# negation types


def _fragment(graph: FiniteGraph, a, b, avoid=frozenset(), allowed=None) -> frozenset:
    """Edges lying on some a->b path whose inner nodes avoid ``avoid``."""
    edges = allowed if allowed is not None else {(u, v) for u in graph.nodes for v, _ in graph.successors(u)}
    succ: dict = {}
    for u, v in edges:
        succ.setdefault(u, []).append(v)
    reach_b = {b}
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            if u not in reach_b and v in reach_b and (u == a or u not in avoid) and u != b:
                reach_b.add(u)
                changed = True
    if a not in reach_b:
        return frozenset()
    out = set()
    seen = {a}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            continue
        for v in succ.get(u, ()):
            if v in reach_b and (v == b or v not in avoid):
                out.add((u, v))
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
    return frozenset(out)


def _leg_type(graph, a, b, edges) -> Optional[int]:
    if not edges:
        return None
    if edges == {(a, b)}:
        return 0 if graph.arrow_sign(a, b) is NEG else None
    if len(edges) == 2:
        # a -o m -> b : negation then identity
        (e1, e2) = sorted(edges, key=lambda e: e[0] != a)
        if e1[0] == a and e1[1] == e2[0] and e2[1] == b:
            m = e1[1]
            if graph.arrow_sign(a, m) is NEG and graph.arrow_sign(m, b) is POS:
                return 0
    inner = sorted({u for e in edges for u in e} - {a, b})
    best = None
    for y, yp in itertools.permutations(inner, 2):
        special = {a, b, y, yp}
        legs = [(a, b), (a, y), (y, b), (y, yp), (yp, b)]
        parts = [_fragment(graph, u, v, special - {u, v}, edges) for u, v in legs]
        if any(not p for p in parts):
            continue
        if sum(len(p) for p in parts) != len(edges) or frozenset().union(*parts) != edges:
            continue
        types = [_leg_type(graph, u, v, p) for (u, v), p in zip(legs, parts)]
        if any(t is None for t in types):
            continue
        t = max(types) + 1
        best = t if best is None else min(best, t)
    return best


def negation_type(graph: FiniteGraph, x, z) -> Optional[int]:
    """Rank of the negation diagram from x to z, or None if it is not one.

    Type 0 is a single negative arrow (or a negative arrow followed by an
    identity arrow).  Type n+1 combines legs x-z, x-y, y-z, y-y', y'-z that are
    negations of type <= n, at least one of type n.
    """
    edges = _fragment(graph, x, z)
    t = _leg_type(graph, x, z, edges)
    if t is None and any(graph.arrow_sign(u, v) is POS for u, v in edges):
        raise MixedSigns(f"fragment {x}..{z} has positive arrows outside identity legs")
    return t
