"""Paradoxicality certificates.

For each node v we try to show two facts:

* plus-impossible (v = T cannot hold).  Every disjunct D of v is refuted:
  it contains FALSE or a complementary pair; or one of its literals is known
  false; or it contains a literal ~w (w a "knee") such that some disjunct of
  w lies inside D, so D being true would make w true as well.
* minus-impossible (v = F cannot hold).  Some disjunct D of v has every
  literal forced true: ~u with u plus-impossible, u with u minus-impossible,
  or ~u where every disjunct of u contains a disjunct of v (so u = T would
  make v = T).

The root is certified when both facts hold.  Infinite successor streams are
sampled, and nodes equivalent to a single literal of a successor are
contracted first.  The certificate covers every finitely checkable premise;
the step to the infinite structure relies on the recursion being uniform.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .constructions.rules import ValuationRule, model_rule
from .errors import WitnessInvalid
from .formula import TruthTable, effective_function, eval_bool, trivialize_outside
from .graph import NEG, RESTRICTED, FiniteGraph, GraphGenerator, Lit, build_finite_graph, truncate
from .paths import find_paths, path_value
from .solver import Clamp, search_escape, solve, verify_rule

CAVEAT = ("Certificate is conditional: every premise was checked on the examined nodes "
          "(infinite successor streams sampled); paradoxicality of the infinite structure "
          "follows only by the uniform recursion over all nodes.")

CERTIFIED = "CertifiedParadoxical"
ESCAPE = "EscapeFound"
INCONCLUSIVE = "Inconclusive"


class _Disj:
    """One disjunct of a node formula, possibly an infinite group."""

    __slots__ = ("owner", "key", "lits", "const_false", "lookup", "wide")

    def __init__(self, owner, key, lits, const_false=False, lookup=None, wide=None):
        self.owner = owner
        self.key = key
        self.lits = lits  # sampled, contracted literals
        self.const_false = const_false
        self.lookup = lookup  # exact membership predicate (grouped), or None
        self.wide = wide  # larger contracted sample for membership

    def contains(self, lit: Lit) -> bool:
        if lit in self.wide:
            return True
        if self.lookup is None:
            return False
        hit = self.lookup(lit)
        if hit:
            self.wide.add(lit)
        return hit


class Engine:
    def __init__(self, gen: GraphGenerator, sample: int = 16, wide: int = 64, infer_depth: int = 3):
        self.gen = gen
        self.sample = sample
        self.wide = wide
        self.infer_depth = infer_depth
        self._disj = {}
        self._keyed = {}
        self._ref = {}
        self._trans = {}
        self._p = {}
        self._n = {}
        self.knee = {}

    # -- formula views

    def transparent(self, node) -> Optional[Lit]:
        """Literal equivalent to an explicit node formula, if there is one."""
        if node in self._trans:
            return self._trans[node]
        out = None
        exp = self.gen.explicit(node)
        if exp is not None:
            vs = sorted(exp.variables())
            if 0 < len(vs) <= 10:
                rows = [(dict(zip(vs, bits)), eval_bool(exp, dict(zip(vs, bits))))
                        for bits in itertools.product((False, True), repeat=len(vs))]
                for w in vs:
                    if all(val == v[w] for v, val in rows):
                        out = Lit(w, False)
                        break
                    if all(val != v[w] for v, val in rows):
                        out = Lit(w, True)
                        break
        self._trans[node] = out
        return out

    def contract(self, lit: Lit) -> Lit:
        for _ in range(16):
            t = self.transparent(lit.node)
            if t is None:
                return lit
            lit = ~t if lit.negated else t
        return lit

    def _group_disj(self, node, key):
        gen = self.gen
        members = list(itertools.islice(gen.group_members(node, key), self.wide))
        if not members:
            return None
        lits = [self.contract(Lit(m, s is NEG)) for m, s in members]

        def lookup(lit):
            a = gen.arrow(node, lit.node)
            return a is not None and a[1] == key and (a[0] is NEG) == lit.negated

        return _Disj(node, key, lits[: self.sample], False, lookup, set(lits))

    def disjuncts(self, node) -> list:
        if node in self._disj:
            return self._disj[node]
        exp = self.gen.explicit(node)
        out = []
        if exp is not None:
            for conj in exp.disjuncts:
                lits = [self.contract(it) for it in conj if isinstance(it, Lit)]
                out.append(_Disj(node, None, lits, False in conj, None, set(lits)))
        else:
            for key in itertools.islice(self.gen.groups(node), self.sample):
                d = self._group_disj(node, key)
                if d is not None:
                    out.append(d)
                    self._keyed[node, key] = d
        self._disj[node] = out
        return out

    def disjunct_for(self, node, key) -> Optional[_Disj]:
        """The disjunct of ``node`` for group ``key`` (grouped nodes only)."""
        if self.gen.explicit(node) is not None:
            return None
        if (node, key) not in self._keyed:
            self._keyed[node, key] = self._group_disj(node, key)
        return self._keyed[node, key]

    # -- facts

    def forced_false(self, lit: Lit, k) -> bool:
        if k < 0:
            return False
        return self.minus_impossible(lit.node, k) if lit.negated else self.plus_impossible(lit.node, k)

    def forced_true(self, lit: Lit, k) -> bool:
        if k < 0:
            return False
        return self.plus_impossible(lit.node, k) if lit.negated else self.minus_impossible(lit.node, k)

    def _covers(self, e: _Disj, d: _Disj, k) -> bool:
        """Every sampled literal of e is in d, or forced true when k >= 0."""
        if e.const_false:
            return False
        return all(d.contains(l) or self.forced_true(l, k) for l in e.lits)

    def _knees(self, d: _Disj) -> list:
        hint = self.gen.witness(d.owner, d.key)
        cands = [l for l in d.lits if l.negated]
        if hint is not None:
            h = self.contract(Lit(hint, True))
            if h.negated and h in d.wide:
                cands = [h] + [l for l in cands if l != h]
        return cands

    def _cell(self, d: _Disj, knees, k) -> bool:
        for l in knees:
            for e in self.disjuncts(l.node):
                if self._covers(e, d, k):
                    self.knee.setdefault(d.owner, l.node)
                    return True
        return False

    def _refuted(self, d: _Disj, k) -> Optional[str]:
        key = (id(d), k)
        if key not in self._ref:
            self._ref[key] = self._refute(d, k)
        return self._ref[key]

    def _refute(self, d: _Disj, k) -> Optional[str]:
        if d.const_false:
            return "constant"
        if any(~l in d.wide for l in d.lits):
            return "complementary"
        knees = self._knees(d)
        if self._cell(d, knees, -1):
            return "cell"
        if k > 0:
            if any(self.forced_false(l, k - 1) for l in d.lits):
                return "forced"
            if self._cell(d, knees[:4], k - 1):
                return "cell"
        return None

    def plus_impossible(self, node, k=None) -> bool:
        k = self.infer_depth if k is None else k
        key = (node, k)
        if key in self._p:
            return self._p[key]
        self._p[key] = False  # guard against re-entry
        ds = self.disjuncts(node)
        res = bool(ds) and all(self._refuted(d, k) for d in ds)
        self._p[key] = res
        return res

    def _blocked_by_owner(self, u, v, k) -> bool:
        """u = T would make some disjunct of v true."""
        eds = self.disjuncts(u)
        if not eds:
            return False
        v_ds = self.disjuncts(v)
        for e in eds:
            same = self.disjunct_for(v, e.key) if e.key is not None else None
            order = ([same] if same is not None else []) + [d for d in v_ds if d is not same]
            if any(self._covers(d, e, -1) for d in order):
                continue
            if k > 0 and any(self._covers(d, e, k - 1) for d in order[:4]):
                continue
            if not self._refuted(e, k):
                return False
        return True

    def minus_impossible(self, node, k=None) -> bool:
        k = self.infer_depth if k is None else k
        key = (node, k)
        if key in self._n:
            return self._n[key]
        self._n[key] = False
        ds = self.disjuncts(node)
        res = False
        for d in ds[:4]:
            if d.const_false:
                continue
            ok = True
            for l in d.lits:
                if l.negated and self._blocked_by_owner(l.node, node, 0):
                    continue
                if k > 0 and self.forced_true(l, k - 1):
                    continue
                if l.negated and k > 0 and self._blocked_by_owner(l.node, node, k - 1):
                    continue
                ok = False
                break
            if ok:
                res = True
                break
        self._n[key] = res
        return res


@dataclass
class ChainWitness:
    chain: tuple
    paths: dict  # (i, j) -> Path

    def to_json(self):
        return {"chain": list(self.chain),
                "paths": {f"{i},{j}": p.to_json() for (i, j), p in sorted(self.paths.items())}}


def _as_graph(g, chain, max_len):
    if isinstance(g, FiniteGraph):
        return g
    if isinstance(g, tuple):
        return g[0]
    top = max(g.level(c) for c in chain) - g.level(g.root)
    graph, _ = truncate(g, top, RESTRICTED)
    return graph


def chain_failure(graph_or_gen, chain, max_len: int = 6):
    """First pair (i, j) without a negative path, or None."""
    graph = _as_graph(graph_or_gen, chain, max_len)
    for i, j in itertools.combinations(range(len(chain)), 2):
        if _neg_path(graph, chain[i], chain[j], max_len) is None:
            return i, j
    return None


def _neg_path(graph, a, b, max_len):
    if a not in graph or b not in graph:
        return None
    cands = [p for p in find_paths(graph, a, b, max_len, limit=5000) if path_value(p) is NEG]
    if not cands:
        return None
    return min(cands, key=lambda p: (len(p), p.nodes))


def check_yablo_condition(graph_or_gen, chain, max_len: int = 6) -> Optional[ChainWitness]:
    """Negative paths between every ordered pair of chain nodes (shortest,
    then lexicographically first), or None if some pair has none."""
    graph = _as_graph(graph_or_gen, chain, max_len)
    paths = {}
    for i, j in itertools.combinations(range(len(chain)), 2):
        p = _neg_path(graph, chain[i], chain[j], max_len)
        if p is None:
            return None
        paths[i, j] = p
    return ChainWitness(tuple(chain), paths)


def reduce_via_trivialization(graph: FiniteGraph, witness: ChainWitness) -> FiniteGraph:
    """Keep only the witness-path arrows; every other arrow becomes a guard."""
    keep = set()
    for (i, j), p in witness.paths.items():
        if p.start != witness.chain[i] or p.end != witness.chain[j]:
            raise WitnessInvalid(f"path {p} does not connect chain nodes {i} and {j}")
        if path_value(p) is not NEG:
            raise WitnessInvalid(f"path {p} is positive")
        for a, b, s in zip(p.nodes, p.nodes[1:], p.signs):
            if graph.arrow_sign(a, b) is not s:
                raise WitnessInvalid(f"arrow {a}->{b} with sign {s} not in graph")
            keep.add((a, b))
    return trivialize_outside(graph, keep)


def chain_tables(graph: FiniteGraph, chain) -> list:
    """Effective table of each chain node with the last chain node made free.

    Entries are tables over (last,) when the node depends on nothing else,
    otherwise the full table.
    """
    last = chain[-1]
    forms = graph.formulas()
    forms[last] = None
    arrows = [a for a in graph.arrows if a.src != last]
    cut = build_finite_graph(graph.nodes, arrows, forms)
    out = []
    for c in chain[:-1]:
        t = effective_function(cut, c)
        rest = [s for s in t.sinks if s != last]
        proj = []
        ok = True
        for bit in (False, True):
            vals = {t(dict(a, **{last: bit})) for a in _assignments(rest)} if last in t.sinks \
                else {t(a) for a in _assignments(rest)}
            if len(vals) != 1:
                ok = False
                break
            proj.append(vals.pop())
        out.append(TruthTable((last,), tuple(proj)) if ok else t)
    return out


def _assignments(names):
    for bits in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


def yablo_prefix_tables(n: int) -> list:
    """Chain tables of the n-node Yablo prefix (for comparison)."""
    from .constructions import make_yablo

    graph, _ = truncate(make_yablo(), n - 1, RESTRICTED)
    chain = [f"x:{i}" for i in range(n)]
    return [TruthTable(("x",), t.values) for t in chain_tables(graph, chain)]


def cell_check(gen: GraphGenerator, x, knee, sample: int = 64):
    """Restricted solve of {x} + succ(x) + succ(knee) with x clamped TRUE."""
    succ_x = list(itertools.islice(gen.successors(x), sample))
    succ_k = list(itertools.islice(gen.successors(knee), sample))
    nodes = [x] + [d for d, _, _ in succ_x]
    arrows = [(x, d, s) for d, s, _ in succ_x]
    groups_x = {d: g for d, _, g in succ_x}
    groups_k = {d: g for d, _, g in succ_k}
    for d, s, g in succ_k:
        if d not in nodes:
            nodes.append(d)
            a = gen.arrow(x, d)
            if a is not None:
                arrows.append((x, d, a[0]))
                groups_x[d] = a[1]
        arrows.append((knee, d, s))
    if knee not in nodes:
        nodes.append(knee)
    from .graph import Grouped

    forms = {x: Grouped(lambda d: groups_x.get(d)), knee: Grouped(lambda d: groups_k.get(d))}
    for n in nodes:
        forms.setdefault(n, None)
    exp_x, exp_k = gen.explicit(x), gen.explicit(knee)
    if exp_x is not None:
        forms[x] = exp_x
    if exp_k is not None:
        forms[knee] = exp_k
    graph = build_finite_graph(nodes, arrows, forms)
    return solve(graph, [Clamp(x, True)], constrained=[x, knee])


@dataclass
class NodeReport:
    witness: Optional[str]
    all_neg: bool
    plus_impossible: bool
    minus_impossible: bool

    def to_json(self):
        return {"localTransWitness": self.witness, "allArrowsNeg": self.all_neg,
                "plusImpossible": self.plus_impossible, "minusImpossible": self.minus_impossible}


@dataclass
class CertifyReport:
    construction: str
    depth: int
    verdict: str
    reason: str = ""
    rule: Optional[str] = None
    per_node: dict = field(default_factory=dict)
    chain: Optional[ChainWitness] = None
    caveat: str = CAVEAT
    sample: int = 16

    def to_json(self):
        out = {"construction": self.construction, "depth": self.depth,
               "verdict": {"kind": self.verdict}, "caveat": self.caveat,
               "sample": self.sample,
               "perNode": {k: v.to_json() for k, v in self.per_node.items()},
               "witnessPaths": self.chain.to_json() if self.chain else None}
        if self.verdict == CERTIFIED:
            out["verdict"]["depth"] = self.depth
        if self.rule is not None:
            out["verdict"]["rule"] = self.rule
        if self.reason:
            out["verdict"]["reason"] = self.reason
        return out


def _candidate_rules(gen: GraphGenerator, depth: int, budget):
    rules = list(gen.escape_rules().values())
    rules.append(ValuationRule.constant("all-false", False))
    rules.append(ValuationRule.constant("all-true", True))
    if gen.finite:
        # a window over the whole graph gives exact models
        depth = max(depth, max(gen.level(n) for n in gen.graph.nodes) - gen.level(gen.root))
    esc = search_escape(gen, depth, budget)
    for label, out in (("root-false", esc.root_false), ("root-true", esc.root_true)):
        if out.is_sat:
            rules.append(model_rule(f"window-model-{label}", out.model, False))
    return rules


def find_escape(gen: GraphGenerator, depth: int, budget=None) -> Optional[ValuationRule]:
    """First candidate rule that survives verification at depth and 2*depth."""
    for rule in _candidate_rules(gen, depth, budget):
        if verify_rule(gen, rule, depth, max_violations=1).ok and \
                verify_rule(gen, rule, 2 * depth, max_violations=1).ok:
            return rule
    return None


def certify_paradoxical(gen: GraphGenerator, depth: int, sample: int = 16, budget=None,
                        report_limit: int = 64) -> CertifyReport:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    eng = Engine(gen, sample=sample)
    root = gen.root
    certified = eng.plus_impossible(root) and eng.minus_impossible(root)
    graph, win = truncate(gen, depth, RESTRICTED)
    per = {}
    for n in win.interior[:report_limit]:
        p = eng.plus_impossible(n)
        m = eng.minus_impossible(n)
        all_neg = all(s is NEG for _, s, _ in itertools.islice(gen.successors(n), 64))
        per[n] = NodeReport(eng.knee.get(n), all_neg, p, m)
    chain = _root_chain(gen, graph)
    rule = find_escape(gen, depth, budget)
    if certified and rule is not None:
        return CertifyReport(gen.name, depth, INCONCLUSIVE, "certificate and escape rule conflict",
                             rule.name, per, chain, sample=sample)
    if certified:
        return CertifyReport(gen.name, depth, CERTIFIED, "", None, per, chain, sample=sample)
    if rule is not None:
        return CertifyReport(gen.name, depth, ESCAPE, "", rule.name, per, chain, sample=sample)
    reason = "root value TRUE not refuted" if not eng.plus_impossible(root) else \
        "root value FALSE not refuted"
    return CertifyReport(gen.name, depth, INCONCLUSIVE, reason, None, per, chain, sample=sample)


def _root_chain(gen, graph, length: int = 6) -> Optional[ChainWitness]:
    chain = [gen.root]
    while len(chain) < length:
        w = gen.witness(chain[-1])
        if w is None or w not in graph:
            break
        chain.append(w)
    if len(chain) < 2:
        return None
    return check_yablo_condition(graph, chain)


def _expected():
    from .constructions import GALLERY

    return {n: CERTIFIED if v == "certified" else ESCAPE for n, v in GALLERY.items()}


# construction name -> verdict the gallery is expected to reach
EXPECTED_VERDICTS = _expected()
