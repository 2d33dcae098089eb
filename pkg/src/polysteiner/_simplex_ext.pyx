# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of :mod:`polysteiner._simplex`.

Same algorithm and pivot sequence, run on 64-bit integers with 128-bit
intermediates.  Raises ``OverflowError`` (leaving the inputs untouched)
when an entry would leave the safe range; the caller then reruns the
pure-Python kernel on the original tableau.
"""

cdef extern from *:
    """
    typedef __int128 wide_t;
    #define PS_LIMIT (((long long)1) << 62)
    """
    ctypedef long long wide_t
    long long LIMIT "PS_LIMIT"

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef int _run(long long *T, long long *basis, long long *det_io,
              Py_ssize_t nr, Py_ssize_t nc, Py_ssize_t obj_row,
              Py_ssize_t n_rows, Py_ssize_t n_allowed, long long *piv_out) nogil:
    # 0 optimal, 1 unbounded, 2 overflow
    cdef Py_ssize_t rhs = nc - 1
    cdef Py_ssize_t i, j, r, s
    cdef long long det = det_io[0]
    cdef long long p, f, a, b, best_num, best_den
    cdef wide_t lhs, rv, v
    cdef long long *row
    cdef long long *prow
    cdef long long pivots = 0
    while True:
        s = -1
        for j in range(n_allowed):
            if T[obj_row * nc + j] < 0:
                s = j
                break
        if s < 0:
            det_io[0] = det
            piv_out[0] = pivots
            return 0
        r = -1
        best_num = 0
        best_den = 0
        for i in range(n_rows):
            a = T[i * nc + s]
            if a <= 0:
                continue
            b = T[i * nc + rhs]
            if r < 0:
                r = i
                best_num = b
                best_den = a
                continue
            lhs = <wide_t>b * best_den
            rv = <wide_t>best_num * a
            if lhs < rv or (lhs == rv and basis[i] < basis[r]):
                r = i
                best_num = b
                best_den = a
        if r < 0:
            det_io[0] = det
            piv_out[0] = pivots
            return 1
        p = T[r * nc + s]
        prow = T + r * nc
        for i in range(nr):
            if i == r:
                continue
            row = T + i * nc
            f = row[s]
            if f == 0:
                if p != det:
                    for j in range(nc):
                        v = (<wide_t>row[j] * p) / det
                        if v >= LIMIT or v <= -LIMIT:
                            return 2
                        row[j] = <long long>v
            else:
                for j in range(nc):
                    v = (<wide_t>row[j] * p - <wide_t>f * prow[j]) / det
                    if v >= LIMIT or v <= -LIMIT:
                        return 2
                    row[j] = <long long>v
        basis[r] = s
        det = p
        pivots += 1


def simplex_iterate(T, basis, det, Py_ssize_t obj_row, Py_ssize_t n_rows,
                    Py_ssize_t n_allowed):
    """See :func:`polysteiner._simplex.simplex_iterate`."""
    cdef Py_ssize_t nr = len(T)
    cdef Py_ssize_t nc = len(T[0])
    cdef Py_ssize_t nb = len(basis)
    cdef Py_ssize_t i, j
    cdef long long c_det, pivots = 0
    cdef int status
    cdef object x
    if det >= LIMIT:
        raise OverflowError("det out of int64 range")
    cdef long long *buf = <long long *>PyMem_Malloc(nr * nc * sizeof(long long))
    cdef long long *bas = <long long *>PyMem_Malloc((nb + 1) * sizeof(long long))
    if buf == NULL or bas == NULL:
        PyMem_Free(buf)
        PyMem_Free(bas)
        raise MemoryError()
    try:
        for i in range(nr):
            row = T[i]
            for j in range(nc):
                x = row[j]
                if x >= LIMIT or x <= -LIMIT:
                    raise OverflowError("entry out of int64 range")
                buf[i * nc + j] = x
        for i in range(nb):
            bas[i] = basis[i]
        c_det = det
        with nogil:
            status = _run(buf, bas, &c_det, nr, nc, obj_row, n_rows, n_allowed, &pivots)
        if status == 2:
            raise OverflowError("tableau entry exceeded int64 range")
        for i in range(nr):
            T[i] = [buf[i * nc + j] for j in range(nc)]
        for i in range(nb):
            basis[i] = bas[i]
        return status, c_det, pivots
    finally:
        PyMem_Free(buf)
        PyMem_Free(bas)
