"""Satisfiability over finite windows, valuation checks and escape search."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import kernel
from .constructions.rules import ValuationRule
from .errors import NotAModel, UnboundVariable
from .formula import T, Truth3, eval_dnf
from .graph import NEG, REMAINDER, RESTRICTED, FiniteGraph, GraphGenerator, Lit, truncate

DEFAULT_BUDGET = 10_000_000
RESTRICTED_CAVEAT = "restricted mode is one-sided: Unsat under a clamp is meaningful, Sat is not"
ESCAPE_CAVEAT = ("a Sat window shows only that no contradiction appears up to this depth; "
                 "it does not decide the infinite structure")


def default_budget() -> int:
    env = os.environ.get("PARADOX_LAB_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"PARADOX_LAB_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


class Clamp(NamedTuple):
    node: str
    value: bool

    @classmethod
    def parse(cls, text: str) -> "Clamp":
        if "=" not in text:
            raise ValueError(f"clamp {text!r} must look like node=T or node=F")
        node, val = text.rsplit("=", 1)
        if val not in ("T", "F"):
            raise ValueError(f"clamp value must be T or F, not {val!r}")
        return cls(node.strip(), val == "T")

    def __str__(self):
        return f"{self.node}={'T' if self.value else 'F'}"


def _clamps(clamps):
    if clamps is None:
        return []
    if isinstance(clamps, dict):
        return [Clamp(k, bool(Truth3.of(v))) for k, v in clamps.items()]
    return [c if isinstance(c, Clamp) else Clamp(*c) for c in clamps]


SAT, UNSAT, UNKNOWN = "sat", "unsat", "unknown"


@dataclass
class SatOutcome:
    status: str
    model: Optional[dict] = None  # node -> bool, window variables only
    core: Optional[list] = None
    steps: int = 0
    budget: int = 0

    @property
    def is_sat(self):
        return self.status == SAT

    @property
    def is_unsat(self):
        return self.status == UNSAT

    def to_json(self):
        out = {"status": self.status, "steps": self.steps}
        if self.model is not None:
            out["model"] = {k: ("T" if v else "F") for k, v in self.model.items()}
        if self.core is not None:
            out["core"] = list(self.core)
        if self.status == UNKNOWN:
            out["budget"] = self.budget
        return out


class Encoding:
    """CNF of the biconditionals x <-> phi_x with one selector per disjunct."""

    def __init__(self, graph: FiniteGraph, constrained=None):
        self.graph = graph
        self.var = {n: i + 1 for i, n in enumerate(graph.nodes)}
        self.num_vars = len(graph.nodes)
        self.clauses = []
        nodes = graph.interior() if constrained is None else [n for n in graph.nodes if n in set(constrained)]
        for n in nodes:
            self._encode(n, graph.formula(n))

    def lit(self, item: Lit) -> int:
        v = self.var[item.node]
        return -v if item.negated else v

    def _encode(self, node, spec):
        if spec is None:
            return
        x = self.var[node]
        conjs = []
        for conj in spec.disjuncts:
            if False in conj:
                continue
            lits = sorted({self.lit(it) for it in conj if not isinstance(it, bool)}, key=lambda l: (abs(l), l))
            if not lits:
                self.clauses.append([x])
                return
            conjs.append(lits)
        if not conjs:
            self.clauses.append([-x])
            return
        if len(conjs) == 1:
            c = conjs[0]
            for l in c:
                self.clauses.append([-x, l])
            self.clauses.append([x] + [-l for l in c])
            return
        sels = []
        for c in conjs:
            self.num_vars += 1
            s = self.num_vars
            sels.append(s)
            for l in c:
                self.clauses.append([-s, l])
            self.clauses.append([s] + [-l for l in c])
            self.clauses.append([x, -s])
        self.clauses.append([-x] + sels)

    def run(self, clamps, budget, backend=None):
        cl = list(self.clauses)
        for c in clamps:
            if c.node not in self.var:
                raise ValueError(f"clamp on unknown node {c.node}")
            v = self.var[c.node]
            cl.append([v if c.value else -v])
        order = list(range(1, self.num_vars + 1))
        return kernel.solve_cnf(self.num_vars, cl, order, budget, backend)


def solve(graph: FiniteGraph, clamps=(), budget: Optional[int] = None, constrained=None,
          want_core: bool = True, backend: Optional[str] = None) -> SatOutcome:
    """Decide the window's biconditionals plus clamps.

    Variables are tried in window creation order, FALSE first, so the first
    model found is reproducible.  On Unsat, a deletion-minimal set of interior
    nodes whose constraints already conflict (with the clamps) is returned.
    """
    if isinstance(graph, tuple):
        graph = graph[0]
    budget = default_budget() if budget is None else budget
    clamps = _clamps(clamps)
    nodes = graph.interior() if constrained is None else [n for n in graph.nodes if n in set(constrained)]
    enc = Encoding(graph, nodes)
    status, values, steps = enc.run(clamps, budget, backend)
    if status == kernel.SAT:
        model = {n: values[enc.var[n]] == 1 for n in graph.nodes}
        return SatOutcome(SAT, model=model, steps=steps, budget=budget)
    if status == kernel.UNKNOWN:
        return SatOutcome(UNKNOWN, steps=steps, budget=budget)
    core = None
    if want_core:
        core = list(nodes)
        for n in list(core):
            trial = [m for m in core if m != n]
            st, _, s2 = Encoding(graph, trial).run(clamps, budget, backend)
            steps += s2
            if st == kernel.UNSAT:
                core = trial
    return SatOutcome(UNSAT, core=core, steps=steps, budget=budget)


def brute_force(graph: FiniteGraph, clamps=(), limit: int = 20):
    """Exhaustive oracle: list of all models (as dicts) of the window."""
    nodes = list(graph.nodes)
    if len(nodes) > limit:
        raise ValueError(f"{len(nodes)} variables exceed brute-force limit {limit}")
    clamps = _clamps(clamps)
    interior = [(n, graph.formula(n)) for n in graph.interior()]
    from .formula import eval_bool

    out = []
    for bits in itertools.product((False, True), repeat=len(nodes)):
        v = dict(zip(nodes, bits))
        if any(v[c.node] != c.value for c in clamps):
            continue
        if all(eval_bool(f, v) == v[n] for n, f in interior):
            out.append(v)
    return out


@dataclass(frozen=True)
class Violation:
    node: str
    assigned: Truth3
    computed: Truth3

    def to_json(self):
        return {"node": self.node, "assigned": str(self.assigned), "computed": str(self.computed)}


def check_valuation(graph: FiniteGraph, v) -> list:
    """Interior nodes whose value differs from their formula's value."""
    out = []
    for n in graph.nodes:
        spec = graph.formula(n)
        if spec is None:
            continue
        if n not in v:
            raise UnboundVariable(f"no value for {n}")
        got = eval_dnf(spec, v)
        want = Truth3.of(v[n])
        if got is not want:
            out.append(Violation(n, want, got))
    return out


@dataclass
class RuleReport:
    rule: str
    depth: int
    checked: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {"rule": self.rule, "depth": self.depth, "checked": self.checked,
                "violations": [x.to_json() for x in self.violations]}


def rule_value_at(gen: GraphGenerator, node, rule, sample: int = 64) -> bool:
    """Evaluate ``node``'s formula under ``rule`` (streams sampled)."""
    exp = gen.explicit(node)
    if exp is not None:
        v = {name: rule(name) for name in exp.variables()}
        return eval_dnf(exp, v) is T
    for gi, key in enumerate(gen.groups(node)):
        if gi >= sample:
            break
        if all(rule(m) != (s is NEG) for m, s in itertools.islice(gen.group_members(node, key), sample)):
            return True
    return False


def verify_rule(gen: GraphGenerator, rule: ValuationRule, depth: int, sample: int = 64,
                max_violations: Optional[int] = None) -> RuleReport:
    """Check that ``rule`` agrees with every formula inside the depth window.

    Successors outside the window are valued by the rule itself, so no
    remainder variables are needed; infinite streams are sampled.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    graph, win = truncate(gen, depth, RESTRICTED, fanout=sample)
    checked = 0
    bad = []
    for n in win.interior:
        checked += 1
        got = rule_value_at(gen, n, rule, sample)
        want = rule(n)
        if got != want:
            bad.append(Violation(n, Truth3.of(want), Truth3.of(got)))
            if max_violations is not None and len(bad) >= max_violations:
                break
    return RuleReport(rule.name, depth, checked, bad)


@dataclass
class EscapeReport:
    construction: str
    depth: int
    root_false: SatOutcome
    root_true: SatOutcome
    note: str = ESCAPE_CAVEAT

    @property
    def verdict(self):
        f, t = self.root_false.is_sat, self.root_true.is_sat
        if f and t:
            return "both-values-consistent"
        if f:
            return "only-false-consistent"
        if t:
            return "only-true-consistent"
        if self.root_false.is_unsat and self.root_true.is_unsat:
            return "no-value-consistent"
        return "unknown"

    def to_json(self):
        return {"construction": self.construction, "depth": self.depth, "verdict": self.verdict,
                "rootFalse": self.root_false.to_json(), "rootTrue": self.root_true.to_json(),
                "note": self.note}


def search_escape(gen: GraphGenerator, depth: int, budget: Optional[int] = None) -> EscapeReport:
    graph, win = truncate(gen, depth, REMAINDER)
    f = solve(graph, [Clamp(gen.root, False)], budget)
    t = solve(graph, [Clamp(gen.root, True)], budget)
    return EscapeReport(gen.name, depth, f, t)


@dataclass(frozen=True)
class OaReading:
    """How a model justifies one Or-And node.

    For a TRUE node, ``column`` is a visible column whose visible members are
    all FALSE.  For a FALSE node, ``choice`` picks one TRUE member per visible
    column.  ``unresolved`` marks nodes whose justification lies outside the
    window (remainder variables).
    """

    node: str
    value: bool
    column: Optional[tuple] = None
    choice: Optional[dict] = None
    unresolved: bool = False


def interpret_oa_model(graph: FiniteGraph, window, model: dict) -> dict:
    """Column / choice-function reading of a model over an Or-And window."""
    bad = check_valuation(graph, {n: model[n] for n in graph.nodes if n in model})
    if bad:
        raise NotAModel(f"model violates {bad[0].node}")
    out = {}
    for n in window.interior:
        groups = window.groups.get(n)
        if not groups:
            out[n] = None
            continue
        val = model[n]
        open_end = n in window.remainder
        if val:
            col = next(((k, mem) for k, mem in groups if not any(model[m] for m in mem)), None)
            if col is None and not open_end:
                raise NotAModel(f"{n} is TRUE but every visible column has a TRUE member")
            out[n] = OaReading(n, True, column=col, unresolved=col is None)
        else:
            choice = {}
            missing = False
            for k, mem in groups:
                t = next((m for m in mem if model[m]), None)
                if t is None:
                    missing = True
                else:
                    choice[k] = t
            if missing and not open_end:
                raise NotAModel(f"{n} is FALSE but some visible column has no TRUE member")
            out[n] = OaReading(n, False, choice=choice, unresolved=missing)
    return out
