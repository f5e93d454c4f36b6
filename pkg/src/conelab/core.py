"""Block matrix realizations of homogeneous cones and their group action.

A realization is a partition N = n_1 + ... + n_r together with declared
subspaces V_kj of the real n_k x n_j matrices for 1 <= j < k <= r. The
symmetric matrices with scalar diagonal blocks x_ii I and lower blocks taken
from the V_kj form the ambient space V; the block lower triangular matrices
with scalar diagonal blocks and the same off-diagonal spans act on V by
h.x = h x th, and the positive definite elements of V form the cone.

Three closure conditions make this work, checked here on basis elements:

  (V1)  X_kj * X_ji lies in V_ki            for i < j < k,
  (V2)  X_ki * t(X_ji) lies in V_kj         for i < j < k,
  (V3)  X_kj * t(Y_kj) + Y_kj * t(X_kj) is a multiple of the identity.

Everything is exact rational arithmetic; no floats enter at any point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from conelab import linalg
from conelab.backend import kernels
from conelab.degrees import DimTable
from conelab.errors import ClosureViolationError, NotInSpaceError, StructureError

_RATIONAL_TYPES = (int, Fraction)


def _is_rational(x):
    return isinstance(x, _RATIONAL_TYPES) and not isinstance(x, bool)


@dataclass(frozen=True)
class BlockPartition:
    """Sizes (n_1, ..., n_r) of the diagonal blocks."""

    sizes: tuple

    def __post_init__(self):
        if not self.sizes:
            raise StructureError("partition must have at least one block")
        for n in self.sizes:
            if not isinstance(n, int) or isinstance(n, bool) or n < 1:
                raise StructureError("block sizes must be positive integers")
        object.__setattr__(self, "sizes", tuple(self.sizes))

    @property
    def r(self):
        return len(self.sizes)

    @property
    def total(self):
        return sum(self.sizes)

    def size(self, i):
        return self.sizes[i - 1]

    def offset(self, i):
        return sum(self.sizes[: i - 1])


class VCollection:
    """A block partition plus declared off-diagonal spaces (lower triangle).

    bases maps (k, j) with 1 <= j < k <= r to a list of n_k x n_j basis
    matrices with rational entries. Missing pairs (or empty lists) declare a
    zero-dimensional space, which is legal. Matrices are stored as nested
    tuples; treat a constructed collection as immutable.
    """

    def __init__(self, partition, bases):
        if not isinstance(partition, BlockPartition):
            partition = BlockPartition(tuple(partition))
        self.partition = partition
        r = partition.r
        stored = {}
        for (k, j), mats in bases.items():
            if not (1 <= j < k <= r):
                raise StructureError(
                    "bad space index (%d, %d) for rank %d" % (k, j, r)
                )
            if not mats:
                continue
            nk, nj = partition.size(k), partition.size(j)
            frozen = []
            for idx, mat in enumerate(mats):
                if len(mat) != nk or any(len(row) != nj for row in mat):
                    raise StructureError(
                        "basis element %d of V_%d%d is not %d x %d"
                        % (idx + 1, k, j, nk, nj)
                    )
                for row in mat:
                    for e in row:
                        if not _is_rational(e):
                            raise StructureError(
                                "non-rational entry in basis of V_%d%d" % (k, j)
                            )
                frozen.append(tuple(tuple(row) for row in mat))
            stored[(k, j)] = tuple(frozen)
        self._bases = stored
        self._solvers = {}
        self._grams = {}

    @property
    def r(self):
        return self.partition.r

    def pairs(self):
        """All lower index pairs (k, j), declared or not."""
        r = self.partition.r
        return [(k, j) for k in range(2, r + 1) for j in range(1, k)]

    def spaces(self):
        """Index pairs with a nonzero-dimensional declared space, sorted."""
        return sorted(self._bases)

    def basis(self, k, j):
        return self._bases.get((k, j), ())

    def dim(self, k, j):
        return len(self._bases.get((k, j), ()))

    def dims_table(self):
        return DimTable(self.r, {(k, j): self.dim(k, j) for (k, j) in self.pairs()})

    def solver(self, k, j):
        """Span solver for V_kj; building it checks linear independence."""
        key = (k, j)
        if key not in self._solvers:
            vectors = [linalg.vec_matrix(E) for E in self.basis(k, j)]
            self._solvers[key] = linalg.SpanSolver(vectors, label="V_%d%d" % key)
        return self._solvers[key]

    def gram(self, k, j):
        """Gram matrix of the basis of V_kj in the scalar product of (V3)."""
        key = (k, j)
        if key not in self._grams:
            basis = self.basis(k, j)
            d = len(basis)
            G = [[0] * d for _ in range(d)]
            for a in range(d):
                for b in range(a, d):
                    c = kernels.sym_pair_scalar(basis[a], basis[b])
                    if c is None:
                        raise StructureError(
                            "(V3) violation in V_%d%d: symmetrized product of "
                            "basis elements %d and %d is not scalar"
                            % (k, j, a + 1, b + 1)
                        )
                    G[a][b] = c
                    G[b][a] = c
            self._grams[key] = tuple(tuple(row) for row in G)
        return self._grams[key]

    def is_orthonormal(self):
        for k, j in self.spaces():
            G = self.gram(k, j)
            for a, row in enumerate(G):
                if any(row[b] != (1 if a == b else 0) for b in range(len(row))):
                    return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, VCollection)
            and self.partition == other.partition
            and self._bases == other._bases
        )


@dataclass(frozen=True)
class ConeElement:
    """diag holds (x_11, ..., x_rr); off maps (k, j) to basis coordinates."""

    diag: tuple
    off: dict

    __hash__ = None


@dataclass(frozen=True)
class GroupElement:
    """Block lower triangular: nonzero diag scalars plus lower coordinates."""

    diag: tuple
    lower: dict

    __hash__ = None


def cone_element(V, diag, off=None):
    """Build a canonical ConeElement for V, filling absent coordinates with 0."""
    diag = tuple(diag)
    if len(diag) != V.r:
        raise StructureError("need %d diagonal values" % V.r)
    if not all(_is_rational(c) for c in diag):
        raise StructureError("diagonal values must be rational")
    coords = {}
    off = dict(off or {})
    for key in V.spaces():
        d = V.dim(*key)
        vals = tuple(off.pop(key, (0,) * d))
        if len(vals) != d:
            raise StructureError(
                "V_%d%d expects %d coordinates, got %d" % (*key, d, len(vals))
            )
        if not all(_is_rational(c) for c in vals):
            raise StructureError("coordinates must be rational")
        coords[key] = vals
    if off:
        raise StructureError("coordinates for undeclared spaces: %r" % sorted(off))
    return ConeElement(diag=diag, off=coords)


def group_element(V, diag, lower=None):
    """Build a canonical GroupElement for V; diagonal scalars must be nonzero."""
    diag = tuple(diag)
    if len(diag) != V.r:
        raise StructureError("need %d diagonal values" % V.r)
    for t in diag:
        if not _is_rational(t) or t == 0:
            raise StructureError("group diagonal values must be nonzero rationals")
    coords = {}
    lower = dict(lower or {})
    for key in V.spaces():
        d = V.dim(*key)
        vals = tuple(lower.pop(key, (0,) * d))
        if len(vals) != d:
            raise StructureError(
                "V_%d%d expects %d coordinates, got %d" % (*key, d, len(vals))
            )
        if not all(_is_rational(c) for c in vals):
            raise StructureError("coordinates must be rational")
        coords[key] = vals
    if lower:
        raise StructureError("coordinates for undeclared spaces: %r" % sorted(lower))
    return GroupElement(diag=diag, lower=coords)


def identity_element(V):
    return cone_element(V, (1,) * V.r)


def group_identity(V):
    return group_element(V, (1,) * V.r)


def element_is_zero(x):
    return all(c == 0 for c in x.diag) and all(
        all(c == 0 for c in coords) for coords in x.off.values()
    )


def block_from_coords(V, k, j, coords):
    """Materialize sum(coords[a] * E_a) as an n_k x n_j matrix."""
    nk, nj = V.partition.size(k), V.partition.size(j)
    out = [[0] * nj for _ in range(nk)]
    for c, E in zip(coords, V.basis(k, j)):
        if c:
            for u in range(nk):
                Eu = E[u]
                row = out[u]
                for v in range(nj):
                    if Eu[v]:
                        row[v] += c * Eu[v]
    return out


def embed(x, V):
    """Symmetric N x N matrix of a ConeElement."""
    part = V.partition
    N = part.total
    M = [[0] * N for _ in range(N)]
    for i in range(1, part.r + 1):
        o = part.offset(i)
        c = x.diag[i - 1]
        if c:
            for t in range(part.size(i)):
                M[o + t][o + t] = c
    for (k, j), coords in x.off.items():
        if not any(coords):
            continue
        block = block_from_coords(V, k, j, coords)
        ok, oj = part.offset(k), part.offset(j)
        for u, row in enumerate(block):
            for v, e in enumerate(row):
                if e:
                    M[ok + u][oj + v] = e
                    M[oj + v][ok + u] = e
    return M


def _extract_block(M, part, k, j):
    ok, oj = part.offset(k), part.offset(j)
    nk, nj = part.size(k), part.size(j)
    return [M[ok + u][oj:oj + nj] for u in range(nk)]


def _scalar_of_diag_block(M, part, i):
    """The value c with block (i, i) == c I, or None."""
    o = part.offset(i)
    n = part.size(i)
    c = M[o][o]
    for u in range(n):
        row = M[o + u]
        for v in range(n):
            want = c if u == v else 0
            if row[o + v] != want:
                return None
    return c


def project(M, V):
    """Inverse of embed; raises NotInSpaceError at the first offending block."""
    part = V.partition
    N = part.total
    if len(M) != N or any(len(row) != N for row in M):
        raise StructureError("matrix is not %d x %d" % (N, N))
    if not linalg.is_symmetric(M):
        raise StructureError("matrix is not symmetric")
    diag = []
    for i in range(1, part.r + 1):
        c = _scalar_of_diag_block(M, part, i)
        if c is None:
            raise NotInSpaceError(
                "diagonal block %d is not a scalar matrix" % i, ("diag", i)
            )
        diag.append(c)
    off = {}
    for k, j in V.pairs():
        block = _extract_block(M, part, k, j)
        if V.dim(k, j) == 0:
            if any(any(row) for row in block):
                raise NotInSpaceError(
                    "block (%d, %d) must vanish (zero-dimensional space)" % (k, j),
                    (k, j),
                )
            continue
        coords = V.solver(k, j).solve(linalg.vec_matrix(block))
        if coords is None:
            raise NotInSpaceError(
                "block (%d, %d) is outside its declared span" % (k, j), (k, j)
            )
        off[(k, j)] = tuple(coords)
    return ConeElement(diag=tuple(diag), off=off)


def embed_group(h, V):
    """Block lower triangular N x N matrix of a GroupElement."""
    part = V.partition
    N = part.total
    M = [[0] * N for _ in range(N)]
    for i in range(1, part.r + 1):
        o = part.offset(i)
        t = h.diag[i - 1]
        for u in range(part.size(i)):
            M[o + u][o + u] = t
    for (k, j), coords in h.lower.items():
        if not any(coords):
            continue
        block = block_from_coords(V, k, j, coords)
        ok, oj = part.offset(k), part.offset(j)
        for u, row in enumerate(block):
            for v, e in enumerate(row):
                if e:
                    M[ok + u][oj + v] = e
    return M


def project_group(M, V):
    """Inverse of embed_group for block lower triangular matrices."""
    part = V.partition
    N = part.total
    if len(M) != N or any(len(row) != N for row in M):
        raise StructureError("matrix is not %d x %d" % (N, N))
    for j in range(1, part.r + 1):
        oj = part.offset(j)
        for k in range(1, j):
            ok = part.offset(k)
            for u in range(part.size(k)):
                row = M[ok + u]
                for v in range(part.size(j)):
                    if row[oj + v]:
                        raise StructureError(
                            "matrix is not block lower triangular at (%d, %d)"
                            % (k, j)
                        )
    diag = []
    for i in range(1, part.r + 1):
        c = _scalar_of_diag_block(M, part, i)
        if c is None:
            raise NotInSpaceError(
                "diagonal block %d is not a scalar matrix" % i, ("diag", i)
            )
        if c == 0:
            raise StructureError("diagonal block %d vanishes" % i)
        diag.append(c)
    lower = {}
    for k, j in V.pairs():
        block = _extract_block(M, part, k, j)
        if V.dim(k, j) == 0:
            if any(any(row) for row in block):
                raise NotInSpaceError(
                    "block (%d, %d) must vanish (zero-dimensional space)" % (k, j),
                    (k, j),
                )
            continue
        coords = V.solver(k, j).solve(linalg.vec_matrix(block))
        if coords is None:
            raise NotInSpaceError(
                "block (%d, %d) is outside its declared span" % (k, j), (k, j)
            )
        lower[(k, j)] = tuple(coords)
    return GroupElement(diag=tuple(diag), lower=lower)


def inner_product_space(X, Y):
    """The scalar c with (X tY + Y tX)/2 = c I; StructureError if not scalar."""
    c = kernels.sym_pair_scalar(X, Y)
    if c is None:
        raise StructureError(
            "(V3) violation: symmetrized product is not a scalar matrix"
        )
    return c


def _bilinear(a, G, b):
    acc = 0
    for u, av in enumerate(a):
        if av:
            row = G[u]
            for v, bv in enumerate(b):
                if bv and row[v]:
                    acc += av * row[v] * bv
    return acc


def inner_product_V(x, y, V):
    """Trace form on V: sum of diagonal products plus twice the block pairings."""
    total = 0
    for a, b in zip(x.diag, y.diag):
        if a and b:
            total += a * b
    for key in V.spaces():
        a = x.off.get(key)
        b = y.off.get(key)
        if a and b:
            total += 2 * _bilinear(a, V.gram(*key), b)
    return total


def rho_act(h, x, V):
    """The action h.x = h x th, computed by embedding and projecting back."""
    H = embed_group(h, V)
    P = kernels.mat_mul_t(kernels.mat_mul(H, embed(x, V)), H)
    try:
        return project(P, V)
    except NotInSpaceError as exc:
        raise ClosureViolationError(
            "action left the space: %s" % exc, exc.block
        ) from exc


def group_compose(h1, h2, V):
    """Product in the acting group, via embedded matrices."""
    P = kernels.mat_mul(embed_group(h1, V), embed_group(h2, V))
    try:
        return project_group(P, V)
    except NotInSpaceError as exc:
        raise ClosureViolationError(
            "product left the group: %s" % exc, exc.block
        ) from exc


@dataclass(frozen=True)
class ConditionReport:
    passed: bool
    counterexample: tuple | None = None


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    v1: ConditionReport
    v2: ConditionReport
    v3: ConditionReport
    dims: DimTable
    orthonormal: bool


def verify_v_conditions(V):
    """Check (V1), (V2), (V3) on basis elements.

    Structural defects (bad shapes, dependent bases) raise StructureError;
    genuine condition failures come back in the report, with the first
    counterexample per condition. The orthonormal flag is informational and
    not part of the conditions.
    """
    for key in V.spaces():
        V.solver(*key)

    v3 = ConditionReport(True)
    grams_ok = True
    for k, j in V.spaces():
        basis = V.basis(k, j)
        done = False
        for a in range(len(basis)):
            for b in range(a, len(basis)):
                if kernels.sym_pair_scalar(basis[a], basis[b]) is None:
                    v3 = ConditionReport(False, (k, j, a + 1, b + 1))
                    grams_ok = False
                    done = True
                    break
            if done:
                break
        if done:
            break

    r = V.partition.r
    v1 = ConditionReport(True)
    for k in range(3, r + 1):
        if not v1.passed:
            break
        for j in range(2, k):
            if not v1.passed:
                break
            for i in range(1, j):
                basis_kj = V.basis(k, j)
                basis_ji = V.basis(j, i)
                if not basis_kj or not basis_ji:
                    continue
                target = V.solver(k, i) if V.dim(k, i) else None
                stop = False
                for a, E in enumerate(basis_kj):
                    for b, F in enumerate(basis_ji):
                        P = linalg.vec_matrix(kernels.mat_mul(E, F))
                        ok = target.contains(P) if target else not any(P)
                        if not ok:
                            v1 = ConditionReport(False, (i, j, k, a + 1, b + 1))
                            stop = True
                            break
                    if stop:
                        break
                if stop:
                    break

    v2 = ConditionReport(True)
    for k in range(3, r + 1):
        if not v2.passed:
            break
        for j in range(2, k):
            if not v2.passed:
                break
            for i in range(1, j):
                basis_ki = V.basis(k, i)
                basis_ji = V.basis(j, i)
                if not basis_ki or not basis_ji:
                    continue
                target = V.solver(k, j) if V.dim(k, j) else None
                stop = False
                for a, E in enumerate(basis_ki):
                    for b, F in enumerate(basis_ji):
                        P = linalg.vec_matrix(kernels.mat_mul_t(E, F))
                        ok = target.contains(P) if target else not any(P)
                        if not ok:
                            v2 = ConditionReport(False, (i, j, k, a + 1, b + 1))
                            stop = True
                            break
                    if stop:
                        break
                if stop:
                    break

    orthonormal = grams_ok and V.is_orthonormal()
    passed = v1.passed and v2.passed and v3.passed
    return VerificationReport(
        passed=passed,
        v1=v1,
        v2=v2,
        v3=v3,
        dims=V.dims_table(),
        orthonormal=orthonormal,
    )


@dataclass(frozen=True)
class LdlResult:
    """Outcome of the square-root-free block decomposition.

    pivots are the scalar block pivots d_1, ..., d_r; unit is the block lower
    triangular factor with unit diagonal (None when the elimination hit a
    zero pivot under a nonzero column, status "undefined"). For any defined
    decomposition embed(x) equals U D tU with D the pivot block diagonal.
    """

    pivots: tuple
    unit: GroupElement | None
    is_member: bool
    status: str  # positive, boundary, indefinite, undefined


def ldl_decompose(x, V):
    """Block elimination of a ConeElement, entirely inside V.

    At step j the pivot is the current x_jj; the column blocks X_kj give the
    factor column, the remaining blocks pick up -X_kj t(X_j'j) / d_j, and the
    diagonal entries drop by the (V3) scalar of X_kj with itself over d_j.
    (V1)-(V3) keep every intermediate block inside its declared span, which
    is what lets the factor be read back in coordinates at the end.
    """
    part = V.partition
    r = part.r
    diag = list(x.diag)
    blocks = {}
    for key, coords in x.off.items():
        if any(coords):
            blocks[key] = block_from_coords(V, *key, coords)
    pivots = []
    unit_cols = {}
    for j in range(1, r + 1):
        d = diag[j - 1]
        pivots.append(d)
        col = [(k, blocks[(k, j)]) for k in range(j + 1, r + 1) if (k, j) in blocks]
        if d == 0:
            if col:
                return LdlResult(
                    pivots=tuple(pivots),
                    unit=None,
                    is_member=False,
                    status="undefined",
                )
            continue
        inv = linalg.exact_inv(d)
        for k, X in col:
            unit_cols[(k, j)] = linalg.scalar_mul(inv, X)
            c = kernels.sym_pair_scalar(X, X)
            if c is None:
                raise StructureError(
                    "(V3) violation during elimination at block (%d, %d)" % (k, j)
                )
            if c:
                diag[k - 1] = diag[k - 1] - c * inv
        for k, X in col:
            for j2, Y in col:
                if j2 >= k:
                    continue
                # here (j2, Y) plays the row role: update block (k, j2)
                P = kernels.mat_mul_t(X, Y)
                if not any(any(row) for row in P):
                    continue
                update = linalg.scalar_mul(inv, P)
                cur = blocks.get((k, j2))
                blocks[(k, j2)] = (
                    linalg.mat_sub(cur, update)
                    if cur is not None
                    else linalg.scalar_mul(-1, update)
                )
        for k, _ in col:
            del blocks[(k, j)]
    if all(p > 0 for p in pivots):
        status = "positive"
    elif all(p >= 0 for p in pivots):
        status = "boundary"
    else:
        status = "indefinite"
    lower = {}
    for (k, j), L in unit_cols.items():
        coords = V.solver(k, j).solve(linalg.vec_matrix(L))
        if coords is None:
            raise NotInSpaceError(
                "elimination block (%d, %d) left its declared span" % (k, j),
                (k, j),
            )
        lower[(k, j)] = tuple(coords)
    unit = group_element(V, (1,) * r, lower)
    return LdlResult(
        pivots=tuple(pivots),
        unit=unit,
        is_member=status == "positive",
        status=status,
    )


def is_member(x, V):
    return ldl_decompose(x, V).is_member


@dataclass(frozen=True)
class PairingReport:
    all_positive: bool
    checked: int
    failures: tuple


def dual_pairing_positive(y, samples, V):
    """Test <x, y> > 0 against nonzero samples from the closed cone.

    Each sample must actually lie in the closed cone (pivots defined and
    nonnegative) and be nonzero, otherwise ValueError; the report carries
    the indices and values of failed pairings.
    """
    failures = []
    count = 0
    for idx, x in enumerate(samples):
        if element_is_zero(x):
            raise ValueError("sample %d is zero" % idx)
        res = ldl_decompose(x, V)
        if res.status not in ("positive", "boundary"):
            raise ValueError(
                "sample %d is not in the closed cone (status %s)" % (idx, res.status)
            )
        val = inner_product_V(x, y, V)
        count += 1
        if not val > 0:
            failures.append((idx, val))
    return PairingReport(
        all_positive=not failures, checked=count, failures=tuple(failures)
    )
