"""Pure-Python integer-preserving simplex kernel.

The tableau is a list of integer rows.  Every stored entry equals the true
rational tableau entry multiplied by the common denominator ``det`` (the
determinant of the current basis, kept positive), so pivots are exact
integer operations with an exact division by the previous ``det``.

Layout: rows ``0 .. n_rows-1`` are constraints, every later row is an
objective row that is carried along through each pivot.  The last column
holds the right-hand side.  Columns ``>= n_allowed`` never enter the basis.
"""

OPTIMAL = 0
UNBOUNDED = 1


def pivot(T, basis, det, r, s):
    """Pivot on ``T[r][s]`` and return the new common denominator."""
    p = T[r][s]
    row_r = T[r]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[s]
        if f == 0:
            if p != det:
                T[i] = [x * p // det for x in row]
        else:
            T[i] = [(x * p - f * y) // det for x, y in zip(row, row_r)]
    basis[r] = s
    if p < 0:
        for i, row in enumerate(T):
            T[i] = [-x for x in row]
        p = -p
    return p


def simplex_iterate(T, basis, det, obj_row, n_rows, n_allowed):
    """Run Bland-rule pivots until optimal or unbounded.

    Mutates ``T`` and ``basis`` in place and returns
    ``(status, det, n_pivots)``.
    """
    obj = T[obj_row]
    rhs = len(obj) - 1
    pivots = 0
    while True:
        obj = T[obj_row]
        s = -1
        for j in range(n_allowed):
            if obj[j] < 0:
                s = j
                break
        if s < 0:
            return OPTIMAL, det, pivots
        r = -1
        best_num = best_den = 0
        for i in range(n_rows):
            a = T[i][s]
            if a <= 0:
                continue
            b = T[i][rhs]
            if r < 0:
                r, best_num, best_den = i, b, a
                continue
            lhs = b * best_den
            rhs_v = best_num * a
            if lhs < rhs_v or (lhs == rhs_v and basis[i] < basis[r]):
                r, best_num, best_den = i, b, a
        if r < 0:
            return UNBOUNDED, det, pivots
        det = pivot(T, basis, det, r, s)
        pivots += 1
