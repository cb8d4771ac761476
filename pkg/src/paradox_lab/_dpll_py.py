"""Pure-Python DPLL kernel (reference backend).

Clauses use DIMACS literals: variable v is ``v`` (true) or ``-v`` (false).
Search: two-watched-literal unit propagation, decisions in the given
variable order with FALSE tried first, chronological backtracking.
The Cython kernel implements the same procedure step for step.
"""

SAT = 1
UNSAT = 0
UNKNOWN = -1


def solve_cnf(num_vars, clauses, order, budget):
    """Return (status, values, steps); values[v] in {0, 1, -1} for v >= 1."""
    assign = [-1] * (num_vars + 1)
    nlit = 2 * num_vars + 2
    watches = [[] for _ in range(nlit)]
    cls = []
    units = []
    for c in clauses:
        c = list(c)
        if not c:
            return UNSAT, assign, 0
        if len(c) == 1:
            units.append(c[0])
            continue
        ci = len(cls)
        cls.append(c)
        watches[_idx(c[0])].append(ci)
        watches[_idx(c[1])].append(ci)

    trail = []
    for lit in units:
        v = lit if lit > 0 else -lit
        want = 1 if lit > 0 else 0
        if assign[v] == -1:
            assign[v] = want
            trail.append(lit)
        elif assign[v] != want:
            return UNSAT, assign, 0

    seen = set()
    full_order = []
    for v in order:
        if 1 <= v <= num_vars and v not in seen:
            seen.add(v)
            full_order.append(v)
    full_order.extend(v for v in range(1, num_vars + 1) if v not in seen)

    qhead = 0
    decisions = []  # (trail position, order position, flipped)
    pointer = 0
    steps = 0
    nord = len(full_order)

    while True:
        # propagate
        conflict = False
        while qhead < len(trail):
            lit = trail[qhead]
            qhead += 1
            false_lit = -lit
            wl = watches[_idx(false_lit)]
            i = 0
            while i < len(wl):
                ci = wl[i]
                c = cls[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], c[0]
                first = c[0]
                fv = assign[first if first > 0 else -first]
                if fv != -1 and (fv == 1) == (first > 0):
                    i += 1
                    continue
                moved = False
                for k in range(2, len(c)):
                    l2 = c[k]
                    v2 = assign[l2 if l2 > 0 else -l2]
                    if v2 == -1 or (v2 == 1) == (l2 > 0):
                        c[1], c[k] = c[k], c[1]
                        watches[_idx(c[1])].append(ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        moved = True
                        break
                if moved:
                    continue
                if fv == -1:
                    assign[first if first > 0 else -first] = 1 if first > 0 else 0
                    trail.append(first)
                    i += 1
                else:
                    conflict = True
                    break
            if conflict:
                break

        if conflict:
            steps += 1
            if steps > budget:
                return UNKNOWN, assign, steps
            while decisions:
                pos, opos, flipped = decisions.pop()
                for lit in trail[pos:]:
                    assign[lit if lit > 0 else -lit] = -1
                del trail[pos:]
                qhead = pos
                if not flipped:
                    v = full_order[opos]
                    assign[v] = 1
                    trail.append(v)
                    decisions.append((pos, opos, True))
                    pointer = opos
                    break
            else:
                return UNSAT, assign, steps
            continue

        while pointer < nord and assign[full_order[pointer]] != -1:
            pointer += 1
        if pointer == nord:
            return SAT, assign, steps
        steps += 1
        if steps > budget:
            return UNKNOWN, assign, steps
        v = full_order[pointer]
        decisions.append((len(trail), pointer, False))
        assign[v] = 0
        trail.append(-v)


def _idx(lit):
    return 2 * lit if lit > 0 else -2 * lit + 1
