"""Self-referential signed graphs: constructions, truncation solving and
paradoxicality certificates."""
from .graph import (
    NEG,
    POS,
    Arrow,
    Explicit,
    FiniteGraph,
    GraphGenerator,
    Grouped,
    Lit,
    Sign,
    Window,
    build_finite_graph,
    transitive_closure_neg,
    truncate,
)
from .formula import Truth3, connective3, effective_function, eval_dnf, negate_dnf, trivialize_outside

__version__ = "0.1.0"
