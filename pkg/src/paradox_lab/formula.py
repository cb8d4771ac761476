"""Two- and three-valued evaluation of node formulas and DNF algebra."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Iterable, Optional

from .errors import DnfTooLarge, TooManySinks, UnboundVariable
from .graph import Explicit, FiniteGraph, Lit, build_finite_graph, lit_for

DNF_CAP = 4096
SINK_CAP = 20


class Truth3(Enum):
    T = "T"
    F = "F"
    X = "X"

    def __str__(self):
        return self.value

    def __bool__(self):
        if self is Truth3.X:
            raise ValueError("X has no classical value")
        return self is Truth3.T

    @classmethod
    def of(cls, value) -> "Truth3":
        if isinstance(value, Truth3):
            return value
        if isinstance(value, bool):
            return cls.T if value else cls.F
        if isinstance(value, str) and value in ("T", "F", "X"):
            return cls(value)
        raise TypeError(f"not a truth value: {value!r}")


T, F, X = Truth3.T, Truth3.F, Truth3.X


def connective3(kind: str, a, b=None) -> Truth3:
    a = Truth3.of(a)
    if kind == "not":
        if b is not None:
            raise ValueError("not takes one argument")
        return {T: F, F: T, X: X}[a]
    if b is None:
        raise ValueError(f"{kind} takes two arguments")
    b = Truth3.of(b)
    if kind == "and":
        if F in (a, b):
            return F
        return X if X in (a, b) else T
    if kind == "or":
        if T in (a, b):
            return T
        return X if X in (a, b) else F
    raise ValueError(f"unknown connective {kind}")


def and3(values: Iterable) -> Truth3:
    return reduce(lambda p, q: connective3("and", p, q), values, T)


def or3(values: Iterable) -> Truth3:
    return reduce(lambda p, q: connective3("or", p, q), values, F)


def item_value(item, v) -> Truth3:
    if isinstance(item, bool):
        return T if item else F
    try:
        val = Truth3.of(v[item.node])
    except KeyError:
        raise UnboundVariable(f"no value for {item.node}") from None
    return connective3("not", val) if item.negated else val


def eval_dnf(spec: Explicit, v) -> Truth3:
    """Fold a finite DNF with the three-valued connectives."""
    for name in spec.variables():
        if name not in v:
            raise UnboundVariable(f"no value for {name}")
    return or3(and3(item_value(it, v) for it in conj) for conj in spec.disjuncts)


def eval_bool(spec: Explicit, v) -> bool:
    """Classical evaluation; v maps nodes to bools."""
    for conj in spec.disjuncts:
        for it in conj:
            if isinstance(it, bool):
                if not it:
                    break
            elif v[it.node] == it.negated:
                break
        else:
            return True
    return False


# --------------------------------------------------------------------------
# canonical DNF and choice-function negation


def _item_key(it):
    if isinstance(it, bool):
        return (0, "", it)
    return (1, it.node, it.negated)


def _canon_conj(conj):
    """Sorted, deduplicated conjunct; None if it contains FALSE."""
    items = set()
    for it in conj:
        if it is False:
            return None
        if it is True:
            continue
        items.add(it)
    if not items:
        return (True,)
    return tuple(sorted(items, key=_item_key))


def canonical(spec: Explicit) -> Explicit:
    conjs = set()
    for c in spec.disjuncts:
        cc = _canon_conj(c)
        if cc is not None:
            conjs.add(cc)
    if not conjs:
        return Explicit(((False,),))
    if (True,) in conjs:
        return Explicit(((True,),))
    ordered = sorted(conjs, key=lambda c: (len(c), [_item_key(i) for i in c]))
    kept = []
    for c in ordered:
        sc = set(c)
        if not any(set(k) <= sc for k in kept):
            kept.append(c)
    kept.sort(key=lambda c: [_item_key(i) for i in c])
    return Explicit(tuple(kept))


def _negate_item(it):
    if isinstance(it, bool):
        return not it
    return ~it


def _contradictory(conj) -> bool:
    lits = {it for it in conj if isinstance(it, Lit)}
    return any(~l in lits for l in lits)


def negate_dnf(spec: Explicit, cap: int = DNF_CAP) -> Explicit:
    """Complement via choice functions: one conjunct per choice of a literal
    from every disjunct, each chosen literal negated."""
    acc = [()]
    for conj in canonical(spec).disjuncts:
        nxt = set()
        for partial in acc:
            for it in conj:
                c = _canon_conj(partial + (_negate_item(it),))
                if c is not None and not _contradictory(c):
                    nxt.add(c)
        if not nxt:
            return Explicit(((False,),))
        acc = canonical(Explicit(tuple(nxt))).disjuncts
        if len(acc) > cap:
            raise DnfTooLarge(f"negation exceeds {cap} disjuncts")
    return canonical(Explicit(tuple(acc)))


def truth_table_of(spec: Explicit, variables=None) -> tuple:
    """Classical table over ``variables`` (default: spec variables sorted)."""
    vs = sorted(spec.variables()) if variables is None else list(variables)
    rows = []
    for bits in itertools.product((False, True), repeat=len(vs)):
        rows.append(eval_bool(spec, dict(zip(vs, bits))))
    return tuple(vs), tuple(rows)


def equivalent(a: Explicit, b: Explicit) -> bool:
    vs = sorted(set(a.variables()) | set(b.variables()))
    return truth_table_of(a, vs)[1] == truth_table_of(b, vs)[1]


def depends_on(spec: Explicit, var: str) -> bool:
    vs = sorted(spec.variables())
    if var not in vs:
        return False
    others = [x for x in vs if x != var]
    for bits in itertools.product((False, True), repeat=len(others)):
        v = dict(zip(others, bits))
        v[var] = False
        lo = eval_bool(spec, v)
        v[var] = True
        if eval_bool(spec, v) != lo:
            return True
    return False


def cofactor(spec: Explicit, lit: Lit) -> Explicit:
    """Formula with ``lit`` fixed TRUE."""
    out = []
    for conj in spec.disjuncts:
        if ~lit in conj:
            continue
        rest = tuple(it for it in conj if it != lit)
        out.append(rest or (True,))
    if not out:
        return Explicit(((False,),))
    return Explicit(tuple(out))


def _guard(spec: Explicit, var: str, cap: int) -> Explicit:
    """Replace every literal of ``var`` by the guard (var | ~var), distributed."""
    out = []
    for conj in spec.disjuncts:
        rest = tuple(it for it in conj if not (isinstance(it, Lit) and it.node == var))
        if len(rest) == len(conj):
            out.append(conj)
        else:
            out.append(rest + (Lit(var, False),))
            out.append(rest + (Lit(var, True),))
        if len(out) > cap:
            raise DnfTooLarge(f"trivialization exceeds {cap} disjuncts")
    return Explicit(tuple(out))


def trivialize_outside(graph: FiniteGraph, keep_arrows, cap: int = DNF_CAP) -> FiniteGraph:
    """Make every arrow outside ``keep_arrows`` irrelevant to its owner.

    A single-polarity literal is replaced by the tautology guard (b | ~b); a
    variable occurring with both polarities is fixed to its arrow-signed
    literal (cofactor) when the formula actually depends on it.
    """
    keep = {(a[0], a[1]) for a in keep_arrows}
    forms = graph.formulas()
    for n in graph.nodes:
        spec = graph.formula(n)
        if spec is None:
            continue
        drop = [(b, s) for b, s in graph.successors(n) if (n, b) not in keep]
        if not drop:
            continue
        pol = spec.polarities()
        cur = spec
        for b, s in drop:
            ps = pol.get(b)
            if not ps:
                continue
            if len(ps) == 2:
                if not depends_on(cur, b):
                    continue
                cur = cofactor(cur, lit_for(b, s))
            cur = _guard(cur, b, cap)
        forms[n] = cur
    return build_finite_graph(graph.nodes, graph.arrows, forms)


@dataclass(frozen=True)
class TruthTable:
    sinks: tuple
    values: tuple  # Truth3 per row; rows enumerate sinks F before T, first sink slowest

    def rows(self):
        for bits, val in zip(itertools.product((False, True), repeat=len(self.sinks)), self.values):
            yield dict(zip(self.sinks, bits)), val

    def __call__(self, assignment) -> Truth3:
        idx = 0
        for s in self.sinks:
            idx = idx * 2 + (1 if assignment[s] else 0)
        return self.values[idx]

    def is_constant(self) -> Optional[Truth3]:
        vals = set(self.values)
        return vals.pop() if len(vals) == 1 else None

    def same_function(self, fn) -> bool:
        """Compare with a Python predicate over the sink assignment dict."""
        return all(Truth3.of(bool(fn(a))) is v for a, v in self.rows())


def propagate(graph: FiniteGraph, assignment: dict, nodes=None) -> dict:
    """Classical bottom-up values for every node given values on free nodes."""
    vals = dict(assignment)
    todo = graph.topo if nodes is None else [n for n in graph.topo if n in nodes]
    for n in reversed(todo):
        spec = graph.formula(n)
        if spec is None:
            if n not in vals:
                raise UnboundVariable(f"free node {n} has no value")
            continue
        vals[n] = eval_bool(spec, vals)
    return vals


def effective_function(graph: FiniteGraph, root: str, cap: int = SINK_CAP) -> TruthTable:
    """Boolean function the diagram denotes at ``root`` over its free nodes."""
    reach = set(graph.reachable(root))
    sinks = tuple(sorted(n for n in reach if graph.formula(n) is None))
    if len(sinks) > cap:
        raise TooManySinks(f"{len(sinks)} sinks exceed cap {cap}")
    values = []
    for bits in itertools.product((False, True), repeat=len(sinks)):
        vals = propagate(graph, dict(zip(sinks, bits)), reach)
        values.append(T if vals[root] else F)
    return TruthTable(sinks, tuple(values))
