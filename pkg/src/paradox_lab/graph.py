"""Signed DAGs with node formulas, lazy generators and finite windows.

Node ids are plain strings with ':'-separated segments ("x:0", "y:s0:3").
A formula is either an explicit finite DNF or a "grouped" conjunction:
successors are partitioned into groups, the node is the disjunction over
groups of the conjunction of arrow-signed literals in each group.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, NamedTuple, Optional, Union

from .errors import (
    BudgetExceeded,
    CycleError,
    DanglingArrow,
    DuplicateArrow,
    FormulaVariableError,
    SignMismatch,
)

DEFAULT_FANOUT = 64
DEFAULT_NODE_CAP = 10_000


def check_node_id(node: str) -> str:
    if not isinstance(node, str) or not node or any(s == "" for s in node.split(":")):
        raise ValueError(f"bad node id {node!r}")
    return node


class Sign(Enum):
    POS = "+"
    NEG = "-"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, text: str) -> "Sign":
        return cls.POS if text == "+" else cls.NEG


POS = Sign.POS
NEG = Sign.NEG


class Arrow(NamedTuple):
    src: str
    dst: str
    sign: Sign = NEG


class Lit(NamedTuple):
    node: str
    negated: bool = False

    def __invert__(self) -> "Lit":
        return Lit(self.node, not self.negated)

    def __str__(self):
        return ("~" if self.negated else "") + self.node


Item = Union[Lit, bool]
Conjunct = tuple  # tuple[Item, ...]


def lit_for(dst: str, sign: Sign) -> Lit:
    """The literal an arrow contributes: Neg arrows give negated literals."""
    return Lit(dst, sign is NEG)


@dataclass(frozen=True)
class Explicit:
    disjuncts: tuple

    def __post_init__(self):
        ds = tuple(tuple(c) for c in self.disjuncts)
        if not ds:
            raise ValueError("explicit formula needs at least one disjunct")
        for c in ds:
            if not c:
                raise ValueError("empty conjunct")
            for it in c:
                if not isinstance(it, (Lit, bool)):
                    raise TypeError(f"bad conjunct item {it!r}")
        object.__setattr__(self, "disjuncts", ds)

    def variables(self) -> list:
        seen = {}
        for c in self.disjuncts:
            for it in c:
                if isinstance(it, Lit):
                    seen.setdefault(it.node, None)
        return list(seen)

    def polarities(self) -> dict:
        pol: dict = {}
        for c in self.disjuncts:
            for it in c:
                if isinstance(it, Lit):
                    pol.setdefault(it.node, set()).add(it.negated)
        return pol


@dataclass(frozen=True)
class Grouped:
    """Disjunction over groups; ``key_of`` maps a successor to its group."""

    key_of: Optional[Callable] = None

    def key(self, dst):
        return None if self.key_of is None else self.key_of(dst)


Formula = Union[Explicit, Grouped]


class FiniteGraph:
    """Validated finite signed DAG.  Treat as immutable."""

    def __init__(self, nodes, arrows, formulas, topo):
        self.nodes = tuple(nodes)
        self._index = {n: i for i, n in enumerate(self.nodes)}
        self._arrows = dict(arrows)  # (src, dst) -> Sign, insertion ordered
        self._succ = {n: [] for n in self.nodes}
        self._pred = {n: [] for n in self.nodes}
        for (a, b), s in self._arrows.items():
            self._succ[a].append((b, s))
            self._pred[b].append((a, s))
        self._formulas = dict(formulas)
        self.topo = tuple(topo)
        self._cache: dict = {}

    def __contains__(self, node):
        return node in self._index

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, FiniteGraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and list(self._arrows.items()) == list(other._arrows.items())
            and all(self.formula(n) == other.formula(n) for n in self.nodes)
        )

    def __hash__(self):
        return hash((self.nodes, tuple(self._arrows.items())))

    def index(self, node) -> int:
        return self._index[node]

    @property
    def arrows(self) -> list:
        return [Arrow(a, b, s) for (a, b), s in self._arrows.items()]

    def arrow_sign(self, a, b) -> Optional[Sign]:
        return self._arrows.get((a, b))

    def successors(self, node) -> list:
        return list(self._succ[node])

    def predecessors(self, node) -> list:
        return list(self._pred[node])

    def is_sink(self, node) -> bool:
        return not self._succ[node]

    def spec(self, node) -> Optional[Formula]:
        """The stored formula spec (None for a free node)."""
        return self._formulas.get(node)

    def has_formula(self, node) -> bool:
        return self._formulas.get(node) is not None

    def formula(self, node) -> Optional[Explicit]:
        """Finite explicit DNF of the node, or None when it is free."""
        if node in self._cache:
            return self._cache[node]
        spec = self._formulas.get(node)
        out = None
        if isinstance(spec, Explicit):
            out = spec
        elif isinstance(spec, Grouped) and self._succ[node]:
            groups: dict = {}
            for b, s in self._succ[node]:
                groups.setdefault(spec.key(b), []).append(lit_for(b, s))
            out = Explicit(tuple(tuple(g) for g in groups.values()))
        self._cache[node] = out
        return out

    def interior(self) -> list:
        return [n for n in self.nodes if self.formula(n) is not None]

    def free_nodes(self) -> list:
        return [n for n in self.nodes if self.formula(n) is None]

    def sinks(self) -> list:
        return [n for n in self.nodes if not self._succ[n]]

    def reachable(self, root) -> list:
        seen = {root}
        out = [root]
        q = deque([root])
        while q:
            n = q.popleft()
            for b, _ in self._succ[n]:
                if b not in seen:
                    seen.add(b)
                    out.append(b)
                    q.append(b)
        return out

    def formulas(self) -> dict:
        return dict(self._formulas)

    def subgraph(self, keep) -> "FiniteGraph":
        """Induced subgraph.  Explicit formulas mentioning dropped nodes are
        reduced to their grouped default over the remaining successors."""
        keep = [n for n in self.nodes if n in set(keep)]
        ks = set(keep)
        arrows = [Arrow(a, b, s) for (a, b), s in self._arrows.items() if a in ks and b in ks]
        forms = {}
        for n in keep:
            spec = self._formulas.get(n)
            if isinstance(spec, Explicit) and not set(spec.variables()) <= ks:
                spec = None
            forms[n] = spec
        return build_finite_graph(keep, arrows, forms)


def _topo_order(nodes, succ) -> list:
    indeg = {n: 0 for n in nodes}
    for n in nodes:
        for b in succ[n]:
            indeg[b] += 1
    q = deque(n for n in nodes if indeg[n] == 0)
    out = []
    while q:
        n = q.popleft()
        out.append(n)
        for b in succ[n]:
            indeg[b] -= 1
            if indeg[b] == 0:
                q.append(b)
    if len(out) != len(nodes):
        stuck = sorted(n for n in nodes if indeg[n] > 0)
        raise CycleError(f"arrow relation is cyclic through {stuck[:6]}")
    return out


def build_finite_graph(nodes: Iterable, arrows: Iterable, formulas: Optional[dict] = None) -> FiniteGraph:
    """Validate and assemble a finite graph.

    ``arrows`` holds Arrow values or (src, dst[, sign]) tuples.  Non-sink nodes
    without a formula get the pure conjunction of their arrow-signed successors.
    """
    formulas = dict(formulas or {})
    order = []
    seen = set()
    for n in nodes:
        check_node_id(n)
        if n not in seen:
            seen.add(n)
            order.append(n)
    amap: dict = {}
    succ = {n: [] for n in order}
    for a in arrows:
        a = Arrow(*a)
        if a.src not in seen or a.dst not in seen:
            missing = a.src if a.src not in seen else a.dst
            raise DanglingArrow(f"arrow {a.src}->{a.dst}: unknown node {missing}")
        if a.src == a.dst:
            raise CycleError(f"self loop at {a.src}")
        key = (a.src, a.dst)
        if key in amap:
            if amap[key] is not a.sign:
                raise DuplicateArrow(f"two arrows {a.src}->{a.dst} with different signs")
            continue
        amap[key] = a.sign
        succ[a.src].append(a.dst)
    topo = _topo_order(order, succ)
    for n in formulas:
        if n not in seen:
            raise DanglingArrow(f"formula for unknown node {n}")
    final = {}
    for n in order:
        spec = formulas.get(n)
        if isinstance(spec, Explicit):
            pol = spec.polarities()
            for v, ps in pol.items():
                s = amap.get((n, v))
                if s is None:
                    raise FormulaVariableError(f"formula of {n} mentions non-successor {v}")
                if len(ps) == 1 and (next(iter(ps)) != (s is NEG)):
                    raise SignMismatch(f"literal {v} in formula of {n} disagrees with arrow sign {s}")
        elif spec is None and succ[n]:
            spec = Grouped()
        final[n] = spec
    return FiniteGraph(order, amap, final, topo)


def transitive_closure_neg(graph: FiniteGraph, subset: Iterable) -> FiniteGraph:
    """Close the Neg arrows among ``subset`` under transitivity."""
    from .errors import NotNegative

    sub = [n for n in graph.nodes if n in set(subset)]
    ss = set(sub)
    for a in graph.arrows:
        if a.src in ss and a.dst in ss and a.sign is POS:
            raise NotNegative(f"positive arrow {a.src}->{a.dst} inside closure subset")
    reach = {n: set() for n in sub}
    for n in reversed(graph.topo):
        if n in ss:
            for b, _ in graph.successors(n):
                if b in ss:
                    reach[n].add(b)
                    reach[n] |= reach[b]
    arrows = graph.arrows
    extra = []
    for n in sub:
        for b in sorted(reach[n], key=graph.index):
            if graph.arrow_sign(n, b) is None:
                extra.append(Arrow(n, b, NEG))
    return build_finite_graph(graph.nodes, arrows + extra, graph.formulas())


# --------------------------------------------------------------------------
# lazy generators


class GraphGenerator:
    """A rule producing a possibly infinite signed DAG node by node.

    Subclasses implement ``successors`` (a deterministic stream of
    ``(dst, sign, group)`` with nondecreasing ``level``), ``level`` and
    ``arrow``.  Depth windows are cut by level, not by arrow distance, since
    Yablo-like nodes point to every later node.
    """

    name = "generator"
    root = "x:0"
    finite = False

    # every node formula is a single conjunction (one group)
    conjunctive = False

    def successors(self, node) -> Iterator:
        raise NotImplementedError

    def level(self, node) -> int:
        raise NotImplementedError

    def arrow(self, a, b):
        """(sign, group) if a->b exists, else None."""
        for dst, s, g in itertools.islice(self.successors(a), 100_000):
            if dst == b:
                return s, g
        return None

    def explicit(self, node) -> Optional[Explicit]:
        return None

    def witness(self, node, group=None) -> Optional[str]:
        return None

    def transitive_hint(self, x, xp) -> Optional[bool]:
        return None

    def escape_rules(self) -> dict:
        return {}

    def groups(self, node) -> Iterator:
        if self.conjunctive:
            first = next(iter(self.successors(node)), None)
            if first is not None:
                yield first[2]
            return
        seen = set()
        for _, _, g in itertools.islice(self.successors(node), GROUP_SCAN):
            if g not in seen:
                seen.add(g)
                yield g

    def group_members(self, node, key) -> Iterator:
        for dst, s, g in self.successors(node):
            if g == key:
                yield dst, s

    def is_sink(self, node) -> bool:
        return next(iter(self.successors(node)), None) is None and self.explicit(node) is None


@dataclass
class Window:
    root: str
    depth: int
    mode: str
    interior: tuple
    frontier: tuple
    remainder: dict
    truncated: frozenset = frozenset()
    lone: frozenset = frozenset()
    groups: dict = field(default_factory=dict)
    generator: Optional[GraphGenerator] = None

    def __post_init__(self):
        assert not set(self.interior) & set(self.frontier)

    @property
    def variables(self) -> tuple:
        return tuple(self.interior) + tuple(self.frontier) + tuple(self.remainder.values())


GROUP_SCAN = 4096  # successors scanned when listing groups of an infinite stream
REMAINDER = "remainder"
RESTRICTED = "restricted"


def remainder_name(node) -> str:
    return "r:" + node


def truncate(gen: GraphGenerator, depth: int, mode: str = REMAINDER,
             fanout: int = DEFAULT_FANOUT, node_cap: int = DEFAULT_NODE_CAP):
    """Materialize the level window of ``gen`` around its root.

    Nodes with level <= level(root) + depth are materialized; those strictly
    below the bound are expanded.  Successor streams are cut at the bound or at
    ``fanout`` elements.  In remainder mode a cut node gets a fresh free
    variable r conjoined to every disjunct (and as a lone disjunct when whole
    groups may be missing); setting r to the node's true value makes any global
    model restrict to a model of the window.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if mode not in (REMAINDER, RESTRICTED):
        raise ValueError(f"unknown mode {mode}")
    root = gen.root
    bound = gen.level(root) + depth
    order = [root]
    seen = {root}
    q = deque([root])
    arrows = []
    formulas = {}
    interior, frontier = [], []
    remainder = {}
    truncated, lone = set(), set()
    groups_info = {}

    def add(node):
        if node not in seen:
            seen.add(node)
            order.append(node)
            q.append(node)
            if len(order) > node_cap:
                raise BudgetExceeded(f"window exceeds node cap {node_cap}")

    while q:
        n = q.popleft()
        exp = gen.explicit(n)
        if gen.level(n) >= bound:
            frontier.append(n)
            continue
        succ = []
        cut = False
        if exp is not None:
            succ = list(gen.successors(n))
        else:
            for item in gen.successors(n):
                if gen.level(item[0]) > bound or len(succ) >= fanout:
                    cut = True
                    break
                succ.append(item)
        if exp is None and not succ and (not cut or mode == RESTRICTED):
            frontier.append(n)
            continue
        for dst, s, g in succ:
            arrows.append(Arrow(n, dst, s))
            add(dst)
        interior.append(n)
        if exp is not None:
            formulas[n] = exp
            continue
        gmap: dict = {}
        for dst, s, g in succ:
            gmap.setdefault(g, []).append((dst, s))
        groups_info[n] = [(g, tuple(d for d, _ in mem)) for g, mem in gmap.items()]
        disj = [[lit_for(d, s) for d, s in mem] for mem in gmap.values()]
        if cut:
            truncated.add(n)
        if cut and mode == REMAINDER:
            r = remainder_name(n)
            remainder[n] = r
            seen.add(r)
            order.append(r)
            arrows.append(Arrow(n, r, POS))
            disj = [c + [Lit(r)] for c in disj]
            if _missing_groups(gen, n, set(gmap), fanout):
                lone.add(n)
                disj.append([Lit(r)])
        formulas[n] = Explicit(tuple(tuple(c) for c in disj))
    graph = build_finite_graph(order, arrows, formulas)
    win = Window(root, depth, mode, tuple(interior), tuple(frontier), remainder,
                 frozenset(truncated), frozenset(lone), groups_info, gen)
    return graph, win


def _missing_groups(gen, node, seen_keys, fanout) -> bool:
    if seen_keys == {None}:
        return False
    for i, g in enumerate(gen.groups(node)):
        if i >= fanout or g not in seen_keys:
            return True
    return not seen_keys


class FiniteGenerator(GraphGenerator):
    """Wrap a finite graph as a generator; level = longest distance from root."""

    finite = True

    def __init__(self, graph: FiniteGraph, root: str, name: str = "finite", rules=None, witnesses=None):
        self.graph = graph
        self.root = root
        self.name = name
        self._rules = dict(rules or {})
        self._witness = dict(witnesses or {})
        lv = {n: 0 for n in graph.nodes}
        for n in graph.topo:
            for b, _ in graph.successors(n):
                lv[b] = max(lv[b], lv[n] + 1)
        self._level = lv

    def successors(self, node):
        if node not in self.graph:
            return iter(())
        spec = self.graph.spec(node)
        key = spec.key if isinstance(spec, Grouped) else (lambda b: None)
        succ = sorted(self.graph.successors(node), key=lambda t: (self._level[t[0]], self.graph.index(t[0])))
        return iter([(b, s, key(b)) for b, s in succ])

    def level(self, node):
        return self._level[node]

    def arrow(self, a, b):
        s = self.graph.arrow_sign(a, b)
        if s is None:
            return None
        spec = self.graph.spec(a)
        return s, (spec.key(b) if isinstance(spec, Grouped) else None)

    def explicit(self, node):
        spec = self.graph.spec(node)
        return spec if isinstance(spec, Explicit) else None

    def witness(self, node, group=None):
        return self._witness.get(node)

    def escape_rules(self):
        return dict(self._rules)

    def is_sink(self, node):
        return self.graph.formula(node) is None
