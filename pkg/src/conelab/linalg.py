"""Exact rational linear algebra on row-major list matrices.

Everything here is exact: scalars are ints or Fractions, determinants go
through fraction-free integer elimination after clearing denominators, and
span membership is decided by Gaussian elimination against a fixed basis.
"""

from __future__ import annotations

import math
from fractions import Fraction

from conelab.backend import kernels
from conelab.errors import StructureError

dot = kernels.dot
mat_mul = kernels.mat_mul
mat_mul_t = kernels.mat_mul_t


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(n, m):
    return [[0] * m for _ in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def mat_vec(A, v):
    return [dot(row, v) for row in A]


def scalar_mul(c, A):
    return [[c * e if e else 0 for e in row] for row in A]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def kron(A, B):
    """Kronecker product of two row-major matrices."""
    if not A or not B:
        return []
    p, q = len(B), len(B[0])
    out = []
    for ra in A:
        for rb in B:
            out.append([a * b if a and b else 0 for a in ra for b in rb])
    return out


def vec_matrix(A):
    """Row-major flattening."""
    return [e for row in A for e in row]


def is_symmetric(A):
    n = len(A)
    return all(A[i][j] == A[j][i] for i in range(n) for j in range(i + 1, n))


def exact_inv(x):
    """1/x as an exact rational; x must be nonzero."""
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def exact_div(a, b):
    return a * exact_inv(b)


def _as_int_ratio(x):
    if isinstance(x, int):
        return x, 1
    return x.numerator, x.denominator


def normalize_rational(x):
    """Collapse Fractions with denominator 1 to plain ints."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def clear_denominators(A):
    """Scale a rational matrix to an integer one; returns (A_int, scale)."""
    scale = 1
    for row in A:
        for e in row:
            _, den = _as_int_ratio(e)
            scale = scale * den // math.gcd(scale, den)
    out = []
    for row in A:
        int_row = []
        for e in row:
            num, den = _as_int_ratio(e)
            int_row.append(num * (scale // den))
        out.append(int_row)
    return out, scale


def det_exact(A):
    """Determinant of a square rational matrix."""
    n = len(A)
    if n == 0:
        return 1
    A_int, scale = clear_denominators(A)
    d = kernels.bareiss_det(A_int)
    return normalize_rational(Fraction(d, scale**n))


def leading_principal_minors(A):
    """Leading principal minors of a square rational matrix.

    Returns (minors, completed); completed is False when a zero minor stopped
    the fraction-free recurrence before the last position.
    """
    A_int, scale = clear_denominators(A)
    raw, completed = kernels.bareiss_minors(A_int)
    minors = [
        normalize_rational(Fraction(m, scale ** (k + 1))) for k, m in enumerate(raw)
    ]
    return minors, completed


def is_positive_definite_minors(A):
    """Sylvester test: all leading principal minors positive.

    The independent membership oracle; returns (verdict, minors).
    """
    minors, completed = leading_principal_minors(A)
    return completed and all(m > 0 for m in minors), minors


def solve_linear(A, b):
    """Solve A·x = b exactly; raises StructureError if A is singular."""
    n = len(A)
    M = [list(row) + [bv] for row, bv in zip(A, b)]
    for k in range(n):
        piv_row = next((i for i in range(k, n) if M[i][k]), None)
        if piv_row is None:
            raise StructureError("singular system")
        if piv_row != k:
            M[k], M[piv_row] = M[piv_row], M[k]
        inv = exact_inv(M[k][k])
        for i in range(k + 1, n):
            c = M[i][k]
            if c:
                f = c * inv
                for j in range(k, n + 1):
                    if M[k][j]:
                        M[i][j] -= f * M[k][j]
    x = [0] * n
    for k in range(n - 1, -1, -1):
        acc = M[k][n]
        for j in range(k + 1, n):
            if M[k][j] and x[j]:
                acc -= M[k][j] * x[j]
        x[k] = acc * exact_inv(M[k][k])
    return x


class SpanSolver:
    """Row space of a fixed list of vectors, echelonized once.

    Builds a mutually reduced (Gauss-Jordan) echelon basis with a transform
    back to the original vectors, so repeated membership queries and
    coordinate recoveries cost one elimination pass each. A dependent input
    vector is a StructureError: declared bases must be linearly independent.
    """

    def __init__(self, vectors, label=""):
        rows = []
        trans = []
        piv_cols = []
        piv_invs = []
        count = len(vectors)
        for idx, start in enumerate(vectors):
            v = list(start)
            t = [0] * count
            t[idx] = 1
            for u in range(len(rows)):
                c = v[piv_cols[u]]
                if c:
                    f = c * piv_invs[u]
                    row = rows[u]
                    tu = trans[u]
                    for j in range(len(v)):
                        if row[j]:
                            v[j] -= f * row[j]
                    for j in range(count):
                        if tu[j]:
                            t[j] -= f * tu[j]
            pc = next((j for j in range(len(v)) if v[j]), None)
            if pc is None:
                raise StructureError(
                    "linearly dependent basis%s (vector %d)"
                    % (" in " + label if label else "", idx + 1)
                )
            inv = exact_inv(v[pc])
            for u in range(len(rows)):
                c = rows[u][pc]
                if c:
                    f = c * inv
                    row = rows[u]
                    tu = trans[u]
                    for j in range(len(v)):
                        if v[j]:
                            row[j] -= f * v[j]
                    for j in range(count):
                        if t[j]:
                            tu[j] -= f * t[j]
            rows.append(v)
            trans.append(t)
            piv_cols.append(pc)
            piv_invs.append(inv)
        self.rows = rows
        self.trans = trans
        self.piv_cols = piv_cols
        self.piv_invs = piv_invs
        self.dim = count

    def solve(self, vector):
        """Coordinates of vector in the original basis, or None if outside."""
        v = list(vector)
        coeffs = kernels.reduce_and_collect(v, self.rows, self.piv_cols, self.piv_invs)
        if any(v):
            return None
        out = [0] * self.dim
        for u, f in enumerate(coeffs):
            if f:
                tu = self.trans[u]
                for a in range(self.dim):
                    if tu[a]:
                        out[a] += f * tu[a]
        return out

    def contains(self, vector):
        v = list(vector)
        kernels.reduce_and_collect(v, self.rows, self.piv_cols, self.piv_invs)
        return not any(v)
