"""Exact rational simplex for packing LPs of the form

    max 1.x   s.t.  Ax <= caps,  x >= 0

with A a 0/1 incidence matrix and caps >= 0.  The slack basis is feasible,
Bland's rule prevents cycling, and the region is bounded (every column has
at least one 1), so the method terminates at an exact optimum.  The dual
solution is read off the slack columns of the objective row.
"""

from .errors import InfeasibleError
from .rational import Q, as_fraction


def solve_packing(columns, caps):
    """Maximize sum(x) subject to incidence constraints.

    columns: list of iterables of row indices (the rows each variable hits).
    caps:    list of rational row capacities (>= 0).

    Returns (x, y, value): primal values per column, dual values per row,
    optimal value; all as exact internal rationals.
    """
    m = len(caps)
    n = len(columns)
    if n == 0:
        return [], [Q(0)] * m, Q(0)
    zero, one = Q(0), Q(1)
    width = n + m + 1
    rows = []
    for i in range(m):
        if caps[i] < 0:
            raise InfeasibleError("negative capacity")
        row = [zero] * width
        row[n + i] = one
        row[-1] = Q(caps[i])
        rows.append(row)
    for j, col in enumerate(columns):
        if not col:
            raise InfeasibleError("column hits no row; LP unbounded")
        for i in col:
            rows[i][j] = one
    obj = [zero] * width
    for j in range(n):
        obj[j] = -one
    basis = [n + i for i in range(m)]

    while True:
        enter = -1
        for j in range(n + m):
            if obj[j] < zero:
                enter = j
                break
        if enter < 0:
            break
        leave, best = -1, None
        for i in range(m):
            a = rows[i][enter]
            if a > zero:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave < 0:
            raise InfeasibleError("LP unbounded; malformed incidence input")
        piv = rows[leave][enter]
        prow = rows[leave]
        if piv != one:
            rows[leave] = prow = [v / piv for v in prow]
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f != zero:
                ri = rows[i]
                rows[i] = [ri[t] - f * prow[t] for t in range(width)]
        f = obj[enter]
        if f != zero:
            obj = [obj[t] - f * prow[t] for t in range(width)]
        basis[leave] = enter

    x = [zero] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = rows[i][-1]
    y = [obj[n + i] for i in range(m)]
    value = sum(x, zero)
    return x, y, value


def solve_packing_fractions(columns, caps):
    """As solve_packing, with all outputs converted to Fraction."""
    x, y, value = solve_packing(columns, [Q(c) for c in caps])
    return ([as_fraction(v) for v in x],
            [as_fraction(v) for v in y],
            as_fraction(value))
