"""Selects the DPLL kernel: the compiled extension when it imports, else the
pure-Python reference.  Both expose ``solve_cnf(num_vars, clauses, order,
budget) -> (status, values, steps)`` and return identical results."""
from . import _dpll_py

try:
    from . import _dpll as _compiled
except ImportError:  # extension not built
    _compiled = None

SAT, UNSAT, UNKNOWN = _dpll_py.SAT, _dpll_py.UNSAT, _dpll_py.UNKNOWN

BACKENDS = {"python": _dpll_py.solve_cnf}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.solve_cnf

BACKEND = "cython" if _compiled is not None else "python"


def solve_cnf(num_vars, clauses, order, budget, backend=None):
    return BACKENDS[backend or BACKEND](num_vars, clauses, order, budget)


def use_backend(name):
    """Switch the default backend; returns the previous one."""
    global BACKEND
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    prev, BACKEND = BACKEND, name
    return prev
