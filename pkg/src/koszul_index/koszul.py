"""Koszul complexes of commuting tuples on finite-dimensional spaces.

The chain space in degree k is V tensored with the k-th exterior power of
C^n; the differential contracts each exterior slot against the matching
operator. Basis subsets are ordered lexicographically and the interior
product uses the sign (-1)^(position-1), which pins every differential
matrix bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .errors import CommutatorError
from .linalg import Matrix, Subspace
from .scalars import EXACT, QQi, TolerancePolicy


def subsets(n: int, k: int):
    """Size-k subsets of {1..n} in lexicographic order."""
    return list(combinations(range(1, n + 1), k))


def removal_sign(subset, i) -> int:
    """Sign of contracting e_i out of e_subset: (-1)^(position-1)."""
    return -1 if subset.index(i) % 2 else 1


class CommutingTuple:
    """n square matrices on a common space, verified commuting at build."""

    __slots__ = ("operators", "n", "dim", "backend")

    def __init__(self, operators, tol: TolerancePolicy | None = None):
        operators = tuple(operators)
        if not operators:
            raise ValueError("empty tuple of operators")
        d = operators[0].rows
        backend = operators[0].backend
        for op in operators:
            if op.rows != op.cols or op.rows != d:
                raise ValueError("operators must be square of a common size")
            if op.backend != backend:
                raise CommutatorError("operators mix scalar backends")
        for a in range(len(operators)):
            for b in range(a + 1, len(operators)):
                if not linalg.commutes(operators[a], operators[b], tol):
                    raise CommutatorError(
                        f"operators {a + 1} and {b + 1} do not commute")
        object.__setattr__(self, "operators", operators)
        object.__setattr__(self, "n", len(operators))
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "backend", backend)

    def __setattr__(self, name, value):
        raise AttributeError("CommutingTuple values are immutable")

    def shift(self, point) -> "CommutingTuple":
        """The tuple A - lambda."""
        if len(point) != self.n:
            raise ValueError("point dimension differs from tuple length")
        ident = Matrix.identity(self.dim, self.backend)
        ops = [op - ident.scale(lam) for op, lam in zip(self.operators, point)]
        return CommutingTuple(ops)

    def extend(self, extra: Matrix) -> "CommutingTuple":
        """The (n+1)-tuple with `extra` appended; commutation re-verified."""
        return CommutingTuple(self.operators + (extra,))

    def join(self, other: "CommutingTuple") -> "CommutingTuple":
        """Concatenation of two tuples on the same space."""
        return CommutingTuple(self.operators + other.operators)

    def conjugate(self, s: Matrix, s_inv: Matrix) -> "CommutingTuple":
        return CommutingTuple(tuple(s @ op @ s_inv for op in self.operators))

    def __repr__(self):
        return f"CommutingTuple(n={self.n}, dim={self.dim}, {self.backend})"


class ChainComplex:
    """A finite chain complex with spaces indexed 0..length and
    differentials d_k: C_k -> C_(k-1)."""

    def __init__(self, dims, diffs, tol: TolerancePolicy | None = None, check=True):
        self.dims = list(dims)
        self.length = len(self.dims) - 1
        self.diffs = dict(diffs)  # k -> Matrix for 1 <= k <= length
        self.backend = next(iter(self.diffs.values())).backend if self.diffs else EXACT
        if check:
            for k in range(1, self.length + 1):
                dk = self.d(k)
                if dk.shape != (self.dims[k - 1], self.dims[k]):
                    raise ValueError(f"differential {k} has the wrong shape")
            for k in range(1, self.length):
                prod = self.d(k) @ self.d(k + 1)
                if not prod.is_zero(tol):
                    raise AssertionError(f"d_{k} after d_{k + 1} is nonzero")

    def d(self, k: int) -> Matrix:
        if k in self.diffs:
            return self.diffs[k]
        rows = self.dims[k - 1] if 1 <= k <= self.length else 0
        cols = self.dims[k] if 0 <= k <= self.length else 0
        return Matrix.zeros(rows, cols, self.backend)

    def cycles(self, k: int, tol=None) -> Subspace:
        if k == 0:
            return Subspace.full(self.dims[0], self.backend)
        return linalg.kernel_basis(self.d(k), tol)

    def boundaries(self, k: int, tol=None) -> Subspace:
        if k >= self.length:
            return Subspace.trivial(self.dims[k], self.backend)
        return linalg.image_basis(self.d(k + 1), tol)

    def homology_dims(self, tol=None):
        ranks = [linalg.rank(self.d(k), tol) for k in range(1, self.length + 1)]
        ranks = [0] + ranks + [0]  # pad so ranks[k] = rank d_k
        return [self.dims[k] - ranks[k] - ranks[k + 1] for k in range(self.length + 1)]


class KoszulComplex(ChainComplex):
    """The Koszul complex of a commuting tuple, with its subset bookkeeping."""

    def __init__(self, tuple_: CommutingTuple, dims, diffs, tol=None):
        super().__init__(dims, diffs, tol)
        self.tuple = tuple_
        self.n = tuple_.n
        self.space_dim = tuple_.dim


@dataclass(frozen=True)
class HomologyProfile:
    """Homology dimensions with the Euler characteristic and Fredholm index;
    the index is minus the Euler characteristic."""

    dims: tuple
    euler: int
    index: int

    @staticmethod
    def from_dims(dims) -> "HomologyProfile":
        dims = tuple(dims)
        euler = sum((-1) ** k * d for k, d in enumerate(dims))
        return HomologyProfile(dims, euler, -euler)


def build_complex(t: CommutingTuple, tol: TolerancePolicy | None = None) -> KoszulComplex:
    """The Koszul complex of t; d squared = 0 is asserted eagerly."""
    n, d = t.n, t.dim
    backend = t.backend
    zero = QQi(0) if backend == EXACT else 0.0 + 0j
    dims = [d * len(subsets(n, k)) for k in range(n + 1)]
    diffs = {}
    for k in range(1, n + 1):
        source = subsets(n, k)
        target = subsets(n, k - 1)
        target_pos = {s: i for i, s in enumerate(target)}
        rows = [[zero] * (d * len(source)) for _ in range(d * len(target))]
        for ci, subset in enumerate(source):
            for i in subset:
                sign = removal_sign(subset, i)
                ri = target_pos[tuple(x for x in subset if x != i)]
                op = t.operators[i - 1]
                for r in range(d):
                    row = rows[ri * d + r]
                    oprow = op.entries[r]
                    for c in range(d):
                        v = oprow[c]
                        if v:
                            row[ci * d + c] = row[ci * d + c] + (v if sign > 0 else -v)
        diffs[k] = Matrix(rows, backend, shape=(d * len(target), d * len(source)))
    return KoszulComplex(t, dims, diffs, tol)


def homology(c: ChainComplex, tol: TolerancePolicy | None = None) -> HomologyProfile:
    """Homology dimensions of a complex.

    For Koszul complexes the top and bottom groups are cross-checked against
    the joint kernel and the cokernel of the combined image.
    """
    dims = c.homology_dims(tol)
    profile = HomologyProfile.from_dims(dims)
    if isinstance(c, KoszulComplex):
        ops = c.tuple.operators
        top = linalg.kernel_basis(Matrix.vstack(ops), tol).dim
        bottom = c.space_dim - linalg.rank(Matrix.hstack(ops), tol)
        if top != dims[-1] or bottom != dims[0]:
            raise AssertionError("homology cross-check failed at the ends")
    return profile


def mapping_cone(c: KoszulComplex, b: Matrix, tol: TolerancePolicy | None = None) -> ChainComplex:
    """The cone over the chain self-map induced by b on the complex of A.

    Requires b to commute with every operator of the tuple. The cone in
    degree k is K_k + K_(k-1) with differential [[d, b], [0, -d]].
    """
    for op in c.tuple.operators:
        if not linalg.commutes(op, b, tol):
            raise CommutatorError("cone operator does not commute with the tuple")
    n = c.n
    dims = [c.dims[k] if k <= n else 0 for k in range(n + 1)]
    cone_dims = [(dims[k] if k <= n else 0) + (dims[k - 1] if k >= 1 else 0)
                 for k in range(n + 2)]
    diffs = {}
    for k in range(1, n + 2):
        blocks = []
        top_rows = dims[k - 1] if k - 1 <= n else 0
        if top_rows:
            row = []
            if k <= n:
                row.append(c.d(k))
            bmap = Matrix.identity(len(subsets(n, k - 1)), c.backend).kron(b)
            row.append(bmap)
            blocks.append(row)
        if k >= 2 and dims[k - 2]:
            row = []
            if k <= n:
                row.append(Matrix.zeros(dims[k - 2], dims[k], c.backend))
            row.append(-c.d(k - 1))
            blocks.append(row)
        diffs[k] = Matrix.block(blocks)
    return ChainComplex(cone_dims, diffs, tol)


def verify_cone_isomorphism(t: CommutingTuple, b: Matrix,
                            tol: TolerancePolicy | None = None) -> bool:
    """Check that the explicit degreewise map from the cone of b over K(A,V)
    onto K(A + b, V) is a bijective chain map.

    The map sends the K_k summand to the matching subsets of {1..n} and the
    K_(k-1) summand to the subsets extended by n+1, with the sign of moving
    the new generator into last position.
    """
    extended = t.extend(b)
    cone = mapping_cone(build_complex(t, tol), b, tol)
    full = build_complex(extended, tol)
    n, d = t.n, t.dim
    backend = t.backend
    zero = QQi(0) if backend == EXACT else 0.0 + 0j
    one = QQi(1) if backend == EXACT else 1.0 + 0j
    alphas = {}
    for k in range(n + 2):
        target = subsets(n + 1, k)
        target_pos = {s: i for i, s in enumerate(target)}
        rows = [[zero] * cone.dims[k] for _ in range(full.dims[k])]
        col = 0
        if k <= n:
            for subset in subsets(n, k):
                ri = target_pos[subset]
                for v in range(d):
                    rows[ri * d + v][col] = one
                    col += 1
        if k >= 1:
            sign = one if (k - 1) % 2 == 0 else -one
            for subset in subsets(n, k - 1):
                ri = target_pos[subset + (n + 1,)]
                for v in range(d):
                    rows[ri * d + v][col] = sign
                    col += 1
        alphas[k] = Matrix(rows, backend, shape=(full.dims[k], cone.dims[k]))
        if full.dims[k] != cone.dims[k]:
            return False
        if linalg.rank(alphas[k], tol) != full.dims[k]:
            return False
    for k in range(1, n + 2):
        lhs = full.d(k) @ alphas[k]
        rhs = alphas[k - 1] @ cone.d(k)
        if not (lhs - rhs).is_zero(tol):
            return False
    return True
