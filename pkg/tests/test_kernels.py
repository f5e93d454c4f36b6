"""Kernel tests, run against both backends.

Oracles are deliberately naive: permutation-expansion determinants, cofactor
minors, and schoolbook matrix products over Fraction arithmetic.
"""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st


def naive_mat_mul(A, B):
    n, inner, m = len(A), len(B), len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(m)]
        for i in range(n)
    ]


def naive_det(A):
    n = len(A)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        prod = sign
        for i in range(n):
            prod *= A[i][perm[i]]
        total += prod
    return total


def _rand_matrix(rng, rows, cols, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


ints = st.integers(min_value=-30, max_value=30)


@given(st.lists(st.tuples(ints, ints), max_size=8))
def test_dot_matches_sum(kernels, pairs):
    u = [p[0] for p in pairs]
    v = [p[1] for p in pairs]
    assert kernels.dot(u, v) == sum(a * b for a, b in zip(u, v))


def test_dot_empty(kernels):
    assert kernels.dot([], []) == 0


def test_mat_mul_matches_naive(kernels):
    rng = random.Random(1)
    for _ in range(30):
        n, k, m = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 6)
        A = _rand_matrix(rng, n, k)
        B = _rand_matrix(rng, k, m)
        assert kernels.mat_mul(A, B) == naive_mat_mul(A, B)


def test_mat_mul_fractions(kernels):
    A = [[Fraction(1, 2), Fraction(1, 3)], [0, Fraction(-2, 5)]]
    B = [[Fraction(3, 7), 1], [Fraction(5, 2), Fraction(1, 6)]]
    assert kernels.mat_mul(A, B) == naive_mat_mul(A, B)


def test_mat_mul_t_is_mul_by_transpose(kernels):
    rng = random.Random(2)
    for _ in range(20):
        n, k, m = rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 5)
        A = _rand_matrix(rng, n, k)
        B = _rand_matrix(rng, m, k)
        Bt = [[B[j][i] for j in range(m)] for i in range(k)]
        assert kernels.mat_mul_t(A, B) == naive_mat_mul(A, Bt)


def test_sym_pair_scalar_identity_pair(kernels):
    X = [[1, 0], [0, 1]]
    assert kernels.sym_pair_scalar(X, X) == 1


def test_sym_pair_scalar_orthogonal_slabs(kernels):
    X = [[1, 0, 0, 0], [0, 1, 0, 0]]
    Y = [[0, 0, 1, 0], [0, 0, 0, 1]]
    assert kernels.sym_pair_scalar(X, Y) == 0
    assert kernels.sym_pair_scalar(X, X) == 1


def test_sym_pair_scalar_rows(kernels):
    # 1x2 rows: the symmetrized product is the 1x1 matrix (2 u.v)
    assert kernels.sym_pair_scalar([[1, 1]], [[1, 0]]) == 1
    assert kernels.sym_pair_scalar([[1, 2]], [[1, 2]]) == 5


def test_sym_pair_scalar_rejects_non_scalar(kernels):
    X = [[1, 0], [0, 1]]
    N = [[0, 1], [0, 0]]
    assert kernels.sym_pair_scalar(X, N) is None


def test_sym_pair_scalar_halves_odd_values(kernels):
    v = kernels.sym_pair_scalar([[1, 1]], [[1, 0]])
    assert v == 1 and isinstance(v, int)
    assert kernels.sym_pair_scalar([[1]], [[3]]) == 3


def test_bareiss_det_matches_naive(kernels):
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(1, 5)
        A = _rand_matrix(rng, n, n)
        assert kernels.bareiss_det(A) == naive_det(A)


def test_bareiss_det_singular_and_pivoting(kernels):
    assert kernels.bareiss_det([[0, 1], [1, 0]]) == -1
    assert kernels.bareiss_det([[0, 0], [0, 0]]) == 0
    assert kernels.bareiss_det([[1, 2], [2, 4]]) == 0
    # zero leading pivot forces a row swap mid-elimination
    A = [[0, 2, 1], [3, 0, 0], [1, 1, 1]]
    assert kernels.bareiss_det(A) == naive_det(A)


def test_bareiss_det_zero_multiplier_rows_rescale(kernels):
    # rows with a zero under the pivot still need the prev-divisor rescale
    A = [[2, 0, 1], [0, 3, 1], [4, 0, 5]]
    assert kernels.bareiss_det(A) == naive_det(A)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-6, max_value=6), min_size=4, max_size=4),
        min_size=4,
        max_size=4,
    )
)
def test_bareiss_det_property(kernels, rows):
    assert kernels.bareiss_det(rows) == naive_det(rows)


def test_bareiss_minors_match_cofactor_dets(kernels):
    rng = random.Random(4)
    for _ in range(25):
        n = rng.randint(1, 5)
        A = _rand_matrix(rng, n, n)
        minors, completed = kernels.bareiss_minors(A)
        expected = [naive_det([row[: k + 1] for row in A[: k + 1]]) for k in range(n)]
        assert minors == expected[: len(minors)]
        if completed:
            assert len(minors) == n
        else:
            assert 0 in minors[:-1] or minors[-1] == 0


def test_bareiss_minors_stop_on_zero(kernels):
    minors, completed = kernels.bareiss_minors([[0, 1], [1, 0]])
    assert minors == [0] and not completed
    minors, completed = kernels.bareiss_minors([[1, 1], [1, 1]])
    assert minors == [1, 0] and completed


def test_reduce_and_collect_residual_identity(kernels):
    rows = [[1, 0, 2], [0, 1, -1]]
    piv_cols = [0, 1]
    piv_invs = [1, 1]
    v = [3, 4, 1]
    coeffs = kernels.reduce_and_collect(v, rows, piv_cols, piv_invs)
    assert coeffs == [3, 4]
    # v now holds the residual: original - 3*row0 - 4*row1
    assert v == [0, 0, 1 - 6 + 4]


def test_reduce_and_collect_fraction_pivots(kernels):
    rows = [[Fraction(2), 0], [0, Fraction(3)]]
    piv_invs = [Fraction(1, 2), Fraction(1, 3)]
    v = [Fraction(1), Fraction(1)]
    coeffs = kernels.reduce_and_collect(v, rows, [0, 1], piv_invs)
    assert coeffs == [Fraction(1, 2), Fraction(1, 3)]
    assert v == [0, 0]


def test_backends_agree_on_everything():
    from conelab import _kernels

    try:
        from conelab import _speedups
    except ImportError:
        pytest.skip("compiled backend not built")
    rng = random.Random(5)
    for _ in range(10):
        n = rng.randint(1, 6)
        A = _rand_matrix(rng, n, n)
        B = _rand_matrix(rng, n, n)
        assert _kernels.mat_mul(A, B) == _speedups.mat_mul(A, B)
        assert _kernels.bareiss_det(A) == _speedups.bareiss_det(A)
        assert _kernels.bareiss_minors(A) == _speedups.bareiss_minors(A)
        assert _kernels.sym_pair_scalar(A, B) == _speedups.sym_pair_scalar(A, B)
