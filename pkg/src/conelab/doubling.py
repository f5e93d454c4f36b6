"""Rank-raising construction: prepend a block of size 2*n_1.

Starting from a realization with partition (n_1, ..., n_r), the new datum has
partition (2n_1, n_1, ..., n_r). The new first column consists of the two
identity slabs (I 0), (0 I) over block 1 and, for every old space V_k1 with
basis {E_a}, the widened matrices (E_a 0) and (0 E_a). Every old space is
also carried over unchanged with both indices shifted by one (the old first
column reappears as the new second column). Iterating from the rank-1 datum
yields partitions (2^{r-1}, ..., 2, 1) with dim V_kj = 2^{k-j}.
"""

import os

from conelab.core import BlockPartition, VCollection, verify_v_conditions
from conelab.errors import StructureError

DEFAULT_RANK_CAP = 12
RANK_CAP_ENV = "CONELAB_RANK_CAP"


def _widen(E, n1, half):
    """Place E into the left (half=0) or right (half=1) n1-column slab."""
    nk = len(E)
    wide = [[0] * (2 * n1) for _ in range(nk)]
    for u in range(nk):
        Eu = E[u]
        row = wide[u]
        for v in range(n1):
            if Eu[v]:
                row[half * n1 + v] = Eu[v]
    return wide


def double(V):
    """One rank-raising step; the input must pass verify_v_conditions."""
    report = verify_v_conditions(V)
    if not report.passed:
        raise StructureError(
            "input realization fails its closure conditions: %r" % (report,)
        )
    part = V.partition
    n1 = part.size(1)
    sizes = (2 * n1,) + part.sizes
    bases = {}
    slab = []
    for half in range(2):
        M = [[0] * (2 * n1) for _ in range(n1)]
        for t in range(n1):
            M[t][half * n1 + t] = 1
        slab.append(M)
    bases[(2, 1)] = slab
    for k in range(2, part.r + 1):
        old = V.basis(k, 1)
        if old:
            bases[(k + 1, 1)] = [
                _widen(E, n1, half) for half in range(2) for E in old
            ]
    for (k, j) in V.spaces():
        bases[(k + 1, j + 1)] = [
            [list(row) for row in E] for E in V.basis(k, j)
        ]
    return VCollection(BlockPartition(sizes), bases)


def rank_cap():
    raw = os.environ.get(RANK_CAP_ENV)
    if raw is None:
        return DEFAULT_RANK_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise StructureError(
            "%s must be an integer, got %r" % (RANK_CAP_ENV, raw)
        ) from None
    if cap < 1:
        raise StructureError("%s must be >= 1" % RANK_CAP_ENV)
    return cap


def iterate_construction(r, cap=None):
    """Apply double r-1 times starting from the rank-1 datum.

    The result has partition (2^{r-1}, ..., 2, 1) and total size 2^r - 1.
    The default cap of 12 keeps the exact verification work bounded; it can
    be lifted via the cap argument or the CONELAB_RANK_CAP variable.
    """
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise StructureError("rank must be a positive integer")
    limit = cap if cap is not None else rank_cap()
    if r > limit:
        raise StructureError(
            "rank %d exceeds the cap %d (set %s to raise it)"
            % (r, limit, RANK_CAP_ENV)
        )
    V = VCollection(BlockPartition((1,)), {})
    for _ in range(r - 1):
        V = double(V)
    return V
