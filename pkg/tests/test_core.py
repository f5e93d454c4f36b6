"""Realization data model: embedding, projection, the group action, and the
block elimination membership test.

The 3x3 realization with partition (2, 1) and the standard slab basis is
small enough to check everything by hand; larger cases lean on oracles
(naive determinants, trace forms, minors).
"""

import random
from fractions import Fraction

import pytest

from conelab import linalg
from conelab.core import (
    BlockPartition,
    VCollection,
    cone_element,
    dual_pairing_positive,
    element_is_zero,
    embed,
    embed_group,
    group_compose,
    group_element,
    group_identity,
    identity_element,
    inner_product_V,
    inner_product_space,
    is_member,
    ldl_decompose,
    project,
    project_group,
    rho_act,
    verify_v_conditions,
)
from conelab.errors import (
    ClosureViolationError,
    NotInSpaceError,
    StructureError,
)
from conelab.sampling import RationalSampler


@pytest.fixture(scope="module")
def omega2():
    return VCollection(BlockPartition((2, 1)), {(2, 1): [[[1, 0]], [[0, 1]]]})


@pytest.fixture(scope="module")
def omega3():
    from conelab.doubling import iterate_construction

    return iterate_construction(3)


def test_block_partition_basics():
    p = BlockPartition((4, 2, 1))
    assert p.r == 3 and p.total == 7
    assert p.size(1) == 4 and p.size(3) == 1
    assert p.offset(1) == 0 and p.offset(2) == 4 and p.offset(3) == 6
    with pytest.raises(StructureError):
        BlockPartition(())
    with pytest.raises(StructureError):
        BlockPartition((2, 0))


def test_vcollection_shape_checks():
    with pytest.raises(StructureError, match="bad space index"):
        VCollection(BlockPartition((2, 1)), {(1, 2): [[[1, 0]]]})
    with pytest.raises(StructureError, match="not 1 x 2"):
        VCollection(BlockPartition((2, 1)), {(2, 1): [[[1], [0]]]})
    with pytest.raises(StructureError, match="non-rational"):
        VCollection(BlockPartition((2, 1)), {(2, 1): [[[0.5, 0]]]})


def test_vcollection_dims_and_pairs(omega2, omega3):
    assert omega2.dim(2, 1) == 2
    assert omega2.pairs() == [(2, 1)]
    assert omega3.dims_table().d(3, 1) == 4
    assert omega3.spaces() == [(2, 1), (3, 1), (3, 2)]


def test_cone_element_canonicalization(omega2):
    x = cone_element(omega2, (1, 2))
    assert x.off[(2, 1)] == (0, 0)
    with pytest.raises(StructureError):
        cone_element(omega2, (1,))
    with pytest.raises(StructureError):
        cone_element(omega2, (1, 1), {(3, 1): (1,)})
    with pytest.raises(StructureError):
        cone_element(omega2, (1, 1), {(2, 1): (1,)})
    with pytest.raises(StructureError):
        cone_element(omega2, (1.5, 1))


def test_group_element_rejects_zero_diag(omega2):
    with pytest.raises(StructureError, match="nonzero"):
        group_element(omega2, (0, 1))


def test_identity_and_zero(omega2):
    e = identity_element(omega2)
    assert e.diag == (1, 1) and not any(e.off[(2, 1)])
    assert element_is_zero(cone_element(omega2, (0, 0)))
    assert not element_is_zero(e)
    h = group_identity(omega2)
    assert h.diag == (1, 1)


def test_embed_omega2_example(omega2):
    x = cone_element(omega2, (1, 1), {(2, 1): (1, 0)})
    assert embed(x, omega2) == [[1, 0, 1], [0, 1, 0], [1, 0, 1]]


def test_embed_project_round_trip(omega2, omega3):
    sampler = RationalSampler(seed=3)
    for V in (omega2, omega3):
        for _ in range(10):
            x = sampler.cone_element(V)
            assert project(embed(x, V), V) == x


def test_project_rejects_outside_V(omega3):
    M = linalg.identity(7)
    M[1][0] = M[0][1] = 1
    with pytest.raises(NotInSpaceError, match="diagonal"):
        project(M, omega3)
    with pytest.raises(StructureError, match="symmetric"):
        project([[0, 1], [0, 0]], VCollection(BlockPartition((1, 1)), {}))


def test_project_zero_dim_block_must_vanish():
    V = VCollection(BlockPartition((1, 1)), {})
    M = [[1, 1], [1, 1]]
    with pytest.raises(NotInSpaceError) as err:
        project(M, V)
    assert err.value.block == (2, 1)


def test_group_round_trip(omega2, omega3):
    sampler = RationalSampler(seed=4)
    for V in (omega2, omega3):
        for _ in range(10):
            h = sampler.group_element(V)
            assert project_group(embed_group(h, V), V) == h


def test_project_group_rejects_upper_entries(omega2):
    M = embed_group(group_identity(omega2), omega2)
    M[0][2] = 1
    with pytest.raises(StructureError, match="lower"):
        project_group(M, omega2)


def test_inner_product_space_examples(omega2):
    X = [[1, 0]]
    Y = [[0, 1]]
    assert inner_product_space(X, Y) == 0
    assert inner_product_space(X, X) == 1
    with pytest.raises(StructureError):
        inner_product_space([[1, 0], [0, 1]], [[0, 1], [0, 0]])


def test_inner_product_V_single_coordinate(omega2):
    x = cone_element(omega2, (0, 0), {(2, 1): (1, 0)})
    assert inner_product_V(x, x, omega2) == 2


def test_inner_product_V_trace_oracle(omega3):
    # block trace form: <X,Y> on V_kj equals tr(X tY)/n_k
    sampler = RationalSampler(seed=5)
    part = omega3.partition
    for _ in range(10):
        x = sampler.cone_element(omega3)
        y = sampler.cone_element(omega3)
        expected = sum(
            a * b for a, b in zip(x.diag, y.diag)
        )
        from conelab.core import block_from_coords

        for (k, j) in omega3.spaces():
            X = block_from_coords(omega3, k, j, x.off[(k, j)])
            Y = block_from_coords(omega3, k, j, y.off[(k, j)])
            t = 0
            for u in range(part.size(k)):
                for v in range(part.size(j)):
                    t += X[u][v] * Y[u][v]
            expected += 2 * Fraction(t) / part.size(k)
        assert inner_product_V(x, y, omega3) == expected


def test_rho_act_unipotent_example(omega2):
    h = group_element(omega2, (1, 1), {(2, 1): (1, 0)})
    x = rho_act(h, identity_element(omega2), omega2)
    assert x.diag == (1, 2)
    assert x.off[(2, 1)] == (1, 0)


def test_rho_act_matches_matrix_conjugation(omega2, omega3):
    sampler = RationalSampler(seed=6)
    for V in (omega2, omega3):
        for _ in range(8):
            h = sampler.group_element(V)
            x = sampler.cone_element(V)
            H = embed_group(h, V)
            X = embed(x, V)
            HX = [[sum(H[i][k] * X[k][j] for k in range(len(X))) for j in range(len(X))] for i in range(len(X))]
            HXHt = [
                [sum(HX[i][k] * H[j][k] for k in range(len(X))) for j in range(len(X))]
                for i in range(len(X))
            ]
            assert embed(rho_act(h, x, V), V) == HXHt


def test_rho_act_scaling_diag(omega2):
    h = group_element(omega2, (2, 3))
    x = cone_element(omega2, (1, 1), {(2, 1): (1, 1)})
    y = rho_act(h, x, omega2)
    assert y.diag == (4, 9)
    assert y.off[(2, 1)] == (6, 6)


def test_group_compose_is_matrix_product(omega3):
    sampler = RationalSampler(seed=7)
    for _ in range(8):
        h1 = sampler.group_element(omega3)
        h2 = sampler.group_element(omega3)
        H = embed_group(group_compose(h1, h2, omega3), omega3)
        H1 = embed_group(h1, omega3)
        H2 = embed_group(h2, omega3)
        prod = [
            [sum(H1[i][k] * H2[k][j] for k in range(7)) for j in range(7)]
            for i in range(7)
        ]
        assert H == prod


def test_rho_is_group_action(omega3):
    sampler = RationalSampler(seed=8)
    for _ in range(5):
        h1 = sampler.group_element(omega3)
        h2 = sampler.group_element(omega3)
        x = sampler.cone_element(omega3)
        lhs = rho_act(group_compose(h1, h2, omega3), x, omega3)
        rhs = rho_act(h1, rho_act(h2, x, omega3), omega3)
        assert lhs == rhs


def test_closure_violation_detected():
    # V_31 too small: acting can land outside the declared spaces
    V = VCollection(
        BlockPartition((1, 1, 1)),
        {(2, 1): [[[1]]], (3, 2): [[[1]]]},
    )
    h = group_element(V, (1, 1, 1), {(3, 2): (1,)})
    x = cone_element(V, (1, 1, 1), {(2, 1): (1,)})
    with pytest.raises(ClosureViolationError):
        rho_act(h, x, V)


def test_verify_v_conditions_good(omega2, omega3):
    for V in (omega2, omega3):
        report = verify_v_conditions(V)
        assert report.passed and report.orthonormal
        assert report.v1.passed and report.v2.passed and report.v3.passed


def test_verify_v2_counterexample():
    V = VCollection(
        BlockPartition((1, 1, 1)),
        {(2, 1): [[[1]]], (3, 1): [[[1]]]},
    )
    report = verify_v_conditions(V)
    assert not report.passed
    assert not report.v2.passed
    assert report.v2.counterexample == (1, 2, 3, 1, 1)


def test_verify_v1_counterexample():
    # X_32 X_21 must land in V_31, which is empty here
    V = VCollection(
        BlockPartition((1, 1, 1)),
        {(2, 1): [[[1]]], (3, 2): [[[1]]]},
    )
    report = verify_v_conditions(V)
    assert not report.passed
    assert not report.v1.passed


def test_verify_v3_counterexample():
    V = VCollection(
        BlockPartition((2, 2)),
        {(2, 1): [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]},
    )
    report = verify_v_conditions(V)
    assert not report.passed
    assert not report.v3.passed
    assert report.v3.counterexample == (2, 1, 1, 2)


def test_verify_skewed_basis_passes_but_not_orthonormal():
    V = VCollection(BlockPartition((2, 1)), {(2, 1): [[[1, 1]], [[1, 0]]]})
    report = verify_v_conditions(V)
    assert report.passed
    assert not report.orthonormal


def test_verify_dependent_basis_rejected():
    V = VCollection(BlockPartition((2, 1)), {(2, 1): [[[1, 0]], [[2, 0]]]})
    with pytest.raises(StructureError):
        verify_v_conditions(V)


def test_ldl_identity(omega2, omega3):
    for V in (omega2, omega3):
        res = ldl_decompose(identity_element(V), V)
        assert res.status == "positive" and res.is_member
        assert res.pivots == (1,) * V.r


def test_ldl_member_example(omega2):
    x = cone_element(omega2, (2, 1), {(2, 1): (1, 0)})
    res = ldl_decompose(x, omega2)
    assert res.is_member and res.pivots == (2, Fraction(1, 2))
    # pivot determinant identity against the embedded matrix
    assert linalg.det_exact(embed(x, omega2)) == 2


def test_ldl_non_member_example(omega2):
    x = cone_element(omega2, (1, 1), {(2, 1): (2, 0)})
    res = ldl_decompose(x, omega2)
    assert not res.is_member and res.pivots == (1, -3)
    assert res.status == "indefinite"


def test_ldl_boundary(omega2):
    x = cone_element(omega2, (1, 1), {(2, 1): (1, 0)})
    res = ldl_decompose(x, omega2)
    assert res.status == "boundary" and not res.is_member
    assert res.pivots == (1, 0)


def test_ldl_undefined(omega2):
    x = cone_element(omega2, (0, 1), {(2, 1): (1, 0)})
    res = ldl_decompose(x, omega2)
    assert res.status == "undefined"
    assert res.unit is None
    assert res.pivots == (0,)
    assert not res.is_member


def test_ldl_reconstruction(omega3):
    sampler = RationalSampler(seed=9)
    part = omega3.partition
    for _ in range(10):
        x = sampler.interior_element(omega3)
        res = ldl_decompose(x, omega3)
        assert res.is_member
        U = embed_group(res.unit, omega3)
        D = linalg.zeros(7, 7)
        for i in range(1, 4):
            for t in range(part.size(i)):
                D[part.offset(i) + t][part.offset(i) + t] = res.pivots[i - 1]
        UD = [[sum(U[a][b] * D[b][c] for b in range(7)) for c in range(7)] for a in range(7)]
        UDUt = [
            [sum(UD[a][b] * U[c][b] for b in range(7)) for c in range(7)]
            for a in range(7)
        ]
        assert UDUt == embed(x, omega3)
        # det X = prod pivot^block-size
        det = 1
        for i in range(1, 4):
            det *= res.pivots[i - 1] ** part.size(i)
        assert linalg.det_exact(embed(x, omega3)) == det


def test_ldl_agrees_with_minors(omega2, omega3):
    sampler = RationalSampler(seed=10, max_numerator=20)
    for V in (omega2, omega3):
        for _ in range(40):
            x = sampler.cone_element(V)
            verdict, _ = linalg.is_positive_definite_minors(embed(x, V))
            assert is_member(x, V) == verdict


def test_interior_sampler_members(omega2, omega3):
    sampler = RationalSampler(seed=11)
    for V in (omega2, omega3):
        for _ in range(10):
            assert is_member(sampler.interior_element(V), V)


def test_boundary_sampler(omega3):
    sampler = RationalSampler(seed=12)
    for _ in range(10):
        x = sampler.boundary_element(omega3, zeros=1)
        res = ldl_decompose(x, omega3)
        assert res.status in ("boundary", "undefined")
        assert not element_is_zero(x)


def test_dual_pairing_positive(omega2):
    sampler = RationalSampler(seed=13)
    samples = [sampler.interior_element(omega2) for _ in range(6)]
    samples.append(sampler.boundary_element(omega2, zeros=1))
    y = identity_element(omega2)
    report = dual_pairing_positive(y, samples, omega2)
    assert report.all_positive and report.checked == 7
    # a non-member direction fails against some interior point
    bad = cone_element(omega2, (1, 1), {(2, 1): (2, 0)})
    with pytest.raises(ValueError):
        dual_pairing_positive(y, [bad], omega2)
    far = cone_element(omega2, (1, -1))
    report = dual_pairing_positive(far, samples, omega2)
    assert not report.all_positive
    assert report.failures
