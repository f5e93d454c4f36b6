# cython: language_level=3
# cython: boundscheck=False
"""Hot kernels, compiled twin of _kernels.py.

Same names, same exact semantics. Scalars stay Python ints and Fractions
(arbitrary precision is the point), so the win comes from typed loop
counters and C-level list indexing, not from C arithmetic.
"""

from fractions import Fraction


def dot(u, v):
    cdef Py_ssize_t i, n
    n = min(len(u), len(v))
    acc = 0
    for i in range(n):
        a = u[i]
        b = v[i]
        if a and b:
            acc += a * b
    return acc


def mat_mul(A, B):
    """Product of two row-major matrices, skipping zero entries."""
    cdef Py_ssize_t n, inner, m, i, k, j
    n = len(A)
    inner = len(B)
    m = len(B[0]) if inner else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Ci = out[i]
        for k in range(inner):
            a = Ai[k]
            if a:
                Bk = B[k]
                for j in range(m):
                    b = Bk[j]
                    if b:
                        Ci[j] = Ci[j] + a * b
    return out


def mat_mul_t(A, B):
    """A times transpose(B), without materializing the transpose."""
    cdef Py_ssize_t n, m, i, j
    n = len(A)
    m = len(B)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        Ci = out[i]
        for j in range(m):
            Ci[j] = dot(Ai, B[j])
    return out


def _halve(v):
    if isinstance(v, int):
        q, rem = divmod(v, 2)
        return q if rem == 0 else Fraction(v, 2)
    return v / 2


def sym_pair_scalar(X, Y):
    """Scalar c with (X·ᵗY + Y·ᵗX)/2 == c·I, or None if there is no such c."""
    cdef Py_ssize_t n, i, j
    n = len(X)
    if n == 0:
        return 0
    c2 = None
    for i in range(n):
        for j in range(i, n):
            v = dot(X[i], Y[j]) + dot(Y[i], X[j])
            if i == j:
                if c2 is None:
                    c2 = v
                elif v != c2:
                    return None
            elif v:
                return None
    return _halve(c2)


def bareiss_minors(A):
    """All leading principal minors of an integer matrix, fraction-free."""
    cdef Py_ssize_t n, k, i, j
    n = len(A)
    M = [list(row) for row in A]
    minors = []
    prev = 1
    for k in range(n):
        Mk = M[k]
        piv = Mk[k]
        minors.append(piv)
        if k == n - 1:
            return minors, True
        if piv == 0:
            return minors, False
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            for j in range(k + 1, n):
                Mi[j] = (Mi[j] * piv - mik * Mk[j]) // prev
        prev = piv
    return minors, True


def bareiss_det(A):
    """Exact determinant of an integer matrix, fraction-free with pivoting."""
    cdef Py_ssize_t n, k, i, j
    cdef int sign = 1
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        Mk = M[k]
        piv = Mk[k]
        for i in range(k + 1, n):
            Mi = M[i]
            mik = Mi[k]
            if mik:
                for j in range(k + 1, n):
                    Mi[j] = (Mi[j] * piv - mik * Mk[j]) // prev
                Mi[k] = 0
            elif prev != piv:
                for j in range(k + 1, n):
                    if Mi[j]:
                        Mi[j] = (Mi[j] * piv) // prev
        prev = piv
    return sign * M[n - 1][n - 1]


def reduce_and_collect(v, rows, piv_cols, piv_invs):
    """Eliminate v in place against mutually reduced echelon rows."""
    cdef Py_ssize_t t, j, width, nrows
    coeffs = []
    width = len(v)
    nrows = len(rows)
    for t in range(nrows):
        c = v[piv_cols[t]]
        if c:
            f = c * piv_invs[t]
            row = rows[t]
            for j in range(width):
                rj = row[j]
                if rj:
                    v[j] = v[j] - f * rj
            coeffs.append(f)
        else:
            coeffs.append(0)
    return coeffs
