# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled DPLL kernel; mirrors _dpll_py.solve_cnf step for step."""

from libc.stdlib cimport malloc, realloc, free

cdef enum:
    SAT = 1
    UNSAT = 0
    UNKNOWN = -1


cdef struct IntVec:
    int *data
    int size
    int cap


cdef inline int vec_push(IntVec *v, int x) except -1:
    cdef int *nd
    if v.size == v.cap:
        v.cap = 4 if v.cap == 0 else v.cap * 2
        nd = <int *> realloc(v.data, v.cap * sizeof(int))
        if nd == NULL:
            raise MemoryError()
        v.data = nd
    v.data[v.size] = x
    v.size += 1
    return 0


cdef inline int lidx(int lit) nogil:
    return 2 * lit if lit > 0 else -2 * lit + 1


def solve_cnf(int num_vars, clauses, order, long long budget):
    cdef int nlit = 2 * num_vars + 2
    cdef int ncl = 0, total = 0, ci, k, i, n
    cdef int *assign = <int *> malloc((num_vars + 1) * sizeof(int))
    cdef IntVec *watches = <IntVec *> malloc(nlit * sizeof(IntVec))
    cdef int *lits = NULL
    cdef int *start = NULL
    cdef int *length = NULL
    cdef int *trail = <int *> malloc((num_vars + 1) * sizeof(int))
    cdef int *full_order = <int *> malloc((num_vars + 1) * sizeof(int))
    cdef int *dpos = <int *> malloc((num_vars + 1) * sizeof(int))
    cdef int *dopos = <int *> malloc((num_vars + 1) * sizeof(int))
    cdef char *dflip = <char *> malloc((num_vars + 1) * sizeof(char))
    cdef char *seen = <char *> malloc((num_vars + 1) * sizeof(char))
    cdef int ntrail = 0, qhead = 0, ndec = 0, pointer = 0, nord = 0
    cdef long long steps = 0
    cdef int lit, v, want, false_lit, first, fv, l2, v2, tmp, pos, opos
    cdef bint conflict, moved, flipped
    cdef IntVec *wl
    cdef int *c
    status = None
    units = []
    py_clauses = []
    try:
        for j in range(nlit):
            watches[j].data = NULL
            watches[j].size = 0
            watches[j].cap = 0
        for v in range(num_vars + 1):
            assign[v] = -1
            seen[v] = 0
        for cl in clauses:
            cl = list(cl)
            if len(cl) == 0:
                status = UNSAT
                break
            if len(cl) == 1:
                units.append(cl[0])
            else:
                py_clauses.append(cl)
                total += len(cl)
        if status is None:
            ncl = len(py_clauses)
            lits = <int *> malloc((total + 1) * sizeof(int))
            start = <int *> malloc((ncl + 1) * sizeof(int))
            length = <int *> malloc((ncl + 1) * sizeof(int))
            k = 0
            for ci in range(ncl):
                cl = py_clauses[ci]
                start[ci] = k
                length[ci] = len(cl)
                for x in cl:
                    lits[k] = x
                    k += 1
                vec_push(&watches[lidx(lits[start[ci]])], ci)
                vec_push(&watches[lidx(lits[start[ci] + 1])], ci)
            for x in units:
                lit = x
                v = lit if lit > 0 else -lit
                want = 1 if lit > 0 else 0
                if assign[v] == -1:
                    assign[v] = want
                    trail[ntrail] = lit
                    ntrail += 1
                elif assign[v] != want:
                    status = UNSAT
                    break
        if status is None:
            for x in order:
                v = x
                if 1 <= v <= num_vars and not seen[v]:
                    seen[v] = 1
                    full_order[nord] = v
                    nord += 1
            for v in range(1, num_vars + 1):
                if not seen[v]:
                    full_order[nord] = v
                    nord += 1
            status = _search(num_vars, assign, watches, lits, start, length, trail, full_order,
                             dpos, dopos, dflip, nord, ntrail, budget, &steps)
        values = [assign[v] for v in range(num_vars + 1)]
        return status, values, steps
    finally:
        for j in range(nlit):
            free(watches[j].data)
        free(watches)
        free(assign)
        free(lits)
        free(start)
        free(length)
        free(trail)
        free(full_order)
        free(dpos)
        free(dopos)
        free(dflip)
        free(seen)


cdef int _search(int num_vars, int *assign, IntVec *watches, int *lits, int *start,
                 int *length, int *trail, int *full_order, int *dpos, int *dopos,
                 char *dflip, int nord, int ntrail, long long budget,
                 long long *steps_out) except -2:
    cdef int qhead = 0, ndec = 0, pointer = 0
    cdef long long steps = 0
    cdef int lit, v, false_lit, first, fv, l2, v2, tmp, pos, opos, ci, i, k, s, n, j
    cdef bint conflict, moved
    cdef IntVec *wl
    while True:
        conflict = False
        while qhead < ntrail:
            lit = trail[qhead]
            qhead += 1
            false_lit = -lit
            wl = &watches[lidx(false_lit)]
            i = 0
            while i < wl.size:
                ci = wl.data[i]
                s = start[ci]
                n = length[ci]
                if lits[s] == false_lit:
                    tmp = lits[s]
                    lits[s] = lits[s + 1]
                    lits[s + 1] = tmp
                first = lits[s]
                fv = assign[first if first > 0 else -first]
                if fv != -1 and (fv == 1) == (first > 0):
                    i += 1
                    continue
                moved = False
                for k in range(2, n):
                    l2 = lits[s + k]
                    v2 = assign[l2 if l2 > 0 else -l2]
                    if v2 == -1 or (v2 == 1) == (l2 > 0):
                        lits[s + k] = lits[s + 1]
                        lits[s + 1] = l2
                        vec_push(&watches[lidx(l2)], ci)
                        wl = &watches[lidx(false_lit)]
                        wl.data[i] = wl.data[wl.size - 1]
                        wl.size -= 1
                        moved = True
                        break
                if moved:
                    continue
                if fv == -1:
                    assign[first if first > 0 else -first] = 1 if first > 0 else 0
                    trail[ntrail] = first
                    ntrail += 1
                    i += 1
                else:
                    conflict = True
                    break
            if conflict:
                break

        if conflict:
            steps += 1
            if steps > budget:
                steps_out[0] = steps
                return UNKNOWN
            while ndec > 0:
                ndec -= 1
                pos = dpos[ndec]
                opos = dopos[ndec]
                for j in range(pos, ntrail):
                    lit = trail[j]
                    assign[lit if lit > 0 else -lit] = -1
                ntrail = pos
                qhead = pos
                if not dflip[ndec]:
                    v = full_order[opos]
                    assign[v] = 1
                    trail[ntrail] = v
                    ntrail += 1
                    dpos[ndec] = pos
                    dopos[ndec] = opos
                    dflip[ndec] = 1
                    ndec += 1
                    pointer = opos
                    break
            else:
                steps_out[0] = steps
                return UNSAT
            continue

        while pointer < nord and assign[full_order[pointer]] != -1:
            pointer += 1
        if pointer == nord:
            steps_out[0] = steps
            return SAT
        steps += 1
        if steps > budget:
            steps_out[0] = steps
            return UNKNOWN
        v = full_order[pointer]
        dpos[ndec] = ntrail
        dopos[ndec] = pointer
        dflip[ndec] = 0
        ndec += 1
        assign[v] = 0
        trail[ntrail] = -v
        ntrail += 1
