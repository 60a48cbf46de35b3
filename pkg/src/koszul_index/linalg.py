"""Dense linear algebra over the two scalar backends: rank, kernel, image,
solving and subspace calculus.

Exact ranks and kernels run fraction-free (Bareiss) over Gaussian integers
after clearing row denominators; float ranks use singular values with the
relative cutoff carried by an explicit TolerancePolicy, never a global.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import BackendMismatch, InconsistentSystem, NotContained
from .scalars import DEFAULT_TOL, EXACT, FLOAT, QQi, TolerancePolicy, as_scalar


class Matrix:
    """An immutable dense rows x cols matrix over a single scalar backend."""

    __slots__ = ("rows", "cols", "backend", "entries")

    def __init__(self, rows_data, backend=None, *, shape=None):
        if shape is not None:
            nrows, ncols = shape
        else:
            rows_data = [list(r) for r in rows_data]
            nrows = len(rows_data)
            ncols = len(rows_data[0]) if nrows else 0
        if backend is None:
            backend = _infer_backend(rows_data)
        data = []
        for r in rows_data:
            if len(r) != ncols:
                raise ValueError("ragged rows in matrix literal")
            data.append(tuple(as_scalar(x, backend) for x in r))
        object.__setattr__(self, "rows", nrows)
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "entries", tuple(data))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix values are immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def identity(n: int, backend: str = EXACT) -> "Matrix":
        one = QQi(1) if backend == EXACT else 1.0 + 0j
        zero = QQi(0) if backend == EXACT else 0.0 + 0j
        return Matrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)],
            backend,
        )

    @staticmethod
    def zeros(rows: int, cols: int, backend: str = EXACT) -> "Matrix":
        zero = QQi(0) if backend == EXACT else 0.0 + 0j
        return Matrix([[zero] * cols for _ in range(rows)], backend, shape=(rows, cols))

    @staticmethod
    def from_numpy(arr) -> "Matrix":
        return Matrix([[complex(x) for x in row] for row in np.atleast_2d(arr)], FLOAT)

    @staticmethod
    def hstack(blocks) -> "Matrix":
        blocks = list(blocks)
        backend = blocks[0].backend
        rows = blocks[0].rows
        for b in blocks:
            if b.rows != rows:
                raise ValueError("hstack: row counts differ")
            _same_backend(b, blocks[0])
        data = [sum((list(b.entries[i]) for b in blocks), []) for i in range(rows)]
        return Matrix(data, backend, shape=(rows, sum(b.cols for b in blocks)))

    @staticmethod
    def vstack(blocks) -> "Matrix":
        blocks = list(blocks)
        backend = blocks[0].backend
        cols = blocks[0].cols
        data = []
        for b in blocks:
            if b.cols != cols:
                raise ValueError("vstack: column counts differ")
            _same_backend(b, blocks[0])
            data.extend(list(r) for r in b.entries)
        return Matrix(data, backend, shape=(sum(b.rows for b in blocks), cols))

    @staticmethod
    def block(grid) -> "Matrix":
        """Assemble a matrix from a 2D grid of conforming blocks."""
        return Matrix.vstack([Matrix.hstack(row) for row in grid])

    # -- access ------------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def col(self, j: int) -> "Matrix":
        return Matrix([[self.entries[i][j]] for i in range(self.rows)], self.backend)

    def take_rows(self, indices) -> "Matrix":
        idx = list(indices)
        return Matrix([list(self.entries[i]) for i in idx], self.backend,
                      shape=(len(idx), self.cols))

    def take_cols(self, indices) -> "Matrix":
        idx = list(indices)
        return Matrix([[r[j] for j in idx] for r in self.entries], self.backend,
                      shape=(self.rows, len(idx)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        _same_shape(self, other)
        _same_backend(self, other)
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.backend, shape=self.shape)

    def __sub__(self, other):
        _same_shape(self, other)
        _same_backend(self, other)
        return Matrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.backend, shape=self.shape)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.entries], self.backend, shape=self.shape)

    def scale(self, s) -> "Matrix":
        s = as_scalar(s, self.backend)
        return Matrix([[s * a for a in r] for r in self.entries], self.backend, shape=self.shape)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        _same_backend(self, other)
        if self.cols != other.rows:
            raise ValueError(f"matmul: {self.shape} @ {other.shape}")
        if self.backend == FLOAT:
            return Matrix.from_numpy(self.to_numpy() @ other.to_numpy()) \
                if self.cols and self.rows and other.cols else \
                Matrix.zeros(self.rows, other.cols, FLOAT)
        zero = QQi(0)
        cols_other = list(zip(*other.entries)) if other.rows else []
        data = []
        for r in self.entries:
            out_row = []
            for c in range(other.cols):
                acc = zero
                col = cols_other[c] if cols_other else ()
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + a * b
                out_row.append(acc)
            data.append(out_row)
        return Matrix(data, self.backend, shape=(self.rows, other.cols))

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.rows, self.backend)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.entries)] if self.rows else [],
                      self.backend, shape=(self.cols, self.rows))

    def kron(self, other: "Matrix") -> "Matrix":
        _same_backend(self, other)
        data = []
        for ra in self.entries:
            for rb in other.entries:
                data.append([a * b for a in ra for b in rb])
        return Matrix(data, self.backend, shape=(self.rows * other.rows, self.cols * other.cols))

    def is_zero(self, tol: TolerancePolicy | None = None) -> bool:
        if self.backend == EXACT:
            return all(not a for r in self.entries for a in r)
        tol = tol or DEFAULT_TOL
        return self.norm() <= tol.rel

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.backend == other.backend and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.backend, self.entries))

    def to_numpy(self):
        return np.array(
            [[complex(a) for a in r] for r in self.entries], dtype=np.complex128
        ).reshape(self.rows, self.cols)

    def norm(self) -> float:
        """Largest singular value (0 for empty shapes)."""
        if 0 in self.shape:
            return 0.0
        return float(np.linalg.norm(self.to_numpy(), 2))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.backend})"


def _infer_backend(rows_data) -> str:
    has_exact = has_float = False
    for r in rows_data:
        for x in r:
            if isinstance(x, QQi):
                has_exact = True
            elif isinstance(x, (complex, float, np.complexfloating, np.floating)):
                has_float = True
    if has_exact and has_float:
        raise BackendMismatch("mixed exact and float entries in one matrix")
    return FLOAT if has_float else EXACT


def _same_backend(a: Matrix, b: Matrix):
    if a.backend != b.backend:
        raise BackendMismatch(f"{a.backend} vs {b.backend}")


def _same_shape(a: Matrix, b: Matrix):
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def commutes(a: Matrix, b: Matrix, tol: TolerancePolicy | None = None) -> bool:
    c = commutator(a, b)
    if a.backend == EXACT:
        return c.is_zero()
    tol = tol or DEFAULT_TOL
    return c.norm() <= tol.rel * max(a.norm(), 1.0) * max(b.norm(), 1.0)


# -- fraction-free elimination over Gaussian integers ------------------------


def _clear_denominators(m: Matrix):
    """Scale each row to Gaussian-integer pairs; preserves rank, kernel and
    pivot-column structure."""
    out = []
    for r in m.entries:
        lcm = 1
        for a in r:
            lcm = lcm * a.re.denominator // _gcd(lcm, a.re.denominator)
            lcm = lcm * a.im.denominator // _gcd(lcm, a.im.denominator)
        out.append([(int(a.re * lcm), int(a.im * lcm)) for a in r])
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _is_real(rows) -> bool:
    return all(b == 0 for r in rows for (_, b) in r)


def _bareiss(rows, ncols, pivot_limit=None):
    """One-step Bareiss elimination in place.

    Returns (rank, pivot_cols, swap_sign, last_pivot). Rows are Gaussian
    integer pairs; entries after return form a staircase whose row space
    equals the input row space. Pivot search is restricted to columns
    < pivot_limit (for augmented solves).
    """
    nrows = len(rows)
    limit = ncols if pivot_limit is None else pivot_limit
    if _is_real(rows):
        int_rows = [[a for (a, _) in r] for r in rows]
        rank, pivots, sign, last = _bareiss_real(int_rows, ncols, limit)
        for i in range(nrows):
            rows[i] = [(a, 0) for a in int_rows[i]]
        return rank, pivots, sign, (last, 0)
    return _bareiss_gauss(rows, ncols, limit)


def _bareiss_real(rows, ncols, limit):
    nrows = len(rows)
    rank = 0
    prev = 1
    sign = 1
    pivots = []
    for col in range(limit):
        piv = -1
        for r in range(rank, nrows):
            if rows[r][col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign = -sign
        p = rows[rank][col]
        for r in range(rank + 1, nrows):
            rowr = rows[r]
            x = rowr[col]
            rowp = rows[rank]
            if x:
                for c in range(col, ncols):
                    rowr[c] = (rowr[c] * p - x * rowp[c]) // prev
            elif prev != 1 or p != 1:
                for c in range(col, ncols):
                    rowr[c] = rowr[c] * p // prev
        prev = p
        pivots.append(col)
        rank += 1
    return rank, pivots, sign, prev


def _bareiss_gauss(rows, ncols, limit):
    nrows = len(rows)
    rank = 0
    prev = (1, 0)
    sign = 1
    pivots = []
    for col in range(limit):
        piv = -1
        for r in range(rank, nrows):
            if rows[r][col] != (0, 0):
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            rows[rank], rows[piv] = rows[piv], rows[rank]
            sign = -sign
        p = rows[rank][col]
        pa, pb = p
        qa, qb = prev
        nq = qa * qa + qb * qb
        for r in range(rank + 1, nrows):
            rowr = rows[r]
            xa, xb = rowr[col]
            rowp = rows[rank]
            for c in range(col, ncols):
                ea, eb = rowr[c]
                fa, fb = rowp[c]
                # (e*p - x*f) / prev, exact Gaussian-integer division
                na = ea * pa - eb * pb - (xa * fa - xb * fb)
                nb = ea * pb + eb * pa - (xa * fb + xb * fa)
                rowr[c] = ((na * qa + nb * qb) // nq, (nb * qa - na * qb) // nq)
        prev = p
        pivots.append(col)
        rank += 1
    return rank, pivots, sign, prev


def _echelon(m: Matrix, pivot_limit=None):
    rows = _clear_denominators(m)
    rank, pivots, sign, last = _bareiss(rows, m.cols, pivot_limit)
    return rank, pivots, rows, sign, last


def _float_svd(m: Matrix):
    return np.linalg.svd(m.to_numpy(), full_matrices=True)


def rank(m: Matrix, tol: TolerancePolicy | None = None) -> int:
    """Rank: exact via fraction-free elimination, float via singular values
    above rel * sigma_max."""
    if 0 in m.shape:
        return 0
    if m.backend == EXACT:
        return _echelon(m)[0]
    tol = tol or DEFAULT_TOL
    s = np.linalg.svd(m.to_numpy(), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rel * s[0]))


def det(m: Matrix) -> QQi:
    """Exact determinant of a square exact matrix."""
    if m.backend != EXACT:
        raise BackendMismatch("det is exact-only")
    if m.rows != m.cols:
        raise ValueError("det of a non-square matrix")
    if m.rows == 0:
        return QQi(1)
    # Track the row scalings introduced by denominator clearing.
    scale = Fraction(1)
    for r in m.entries:
        lcm = 1
        for a in r:
            lcm = lcm * a.re.denominator // _gcd(lcm, a.re.denominator)
            lcm = lcm * a.im.denominator // _gcd(lcm, a.im.denominator)
        scale *= lcm
    rank_, pivots, rows, sign, last = _echelon(m)
    if rank_ < m.rows:
        return QQi(0)
    la, lb = last
    return QQi(Fraction(la * sign), Fraction(lb * sign)) / QQi(scale)


def kernel_basis(m: Matrix, tol: TolerancePolicy | None = None) -> "Subspace":
    """Basis of ker(m) as a subspace of the column-index space."""
    if m.cols == 0:
        return Subspace(0, Matrix.zeros(0, 0, m.backend), check=False)
    if m.rows == 0:
        return Subspace(m.cols, Matrix.identity(m.cols, m.backend), check=False)
    if m.backend == FLOAT:
        tol = tol or DEFAULT_TOL
        u, s, vh = _float_svd(m)
        cut = tol.rel * (s[0] if s.size and s[0] > 0 else 1.0)
        null_rows = [vh[i].conjugate() for i in range(len(s)) if s[i] <= cut]
        null_rows += [vh[i].conjugate() for i in range(len(s), m.cols)]
        if not null_rows:
            return Subspace(m.cols, Matrix.zeros(m.cols, 0, FLOAT), check=False)
        basis = Matrix.from_numpy(np.stack(null_rows, axis=1))
        return Subspace(m.cols, basis, check=False)
    rank_, pivots, rows, _, _ = _echelon(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis_cols = []
    for f in free:
        v = [QQi(0)] * m.cols
        v[f] = QQi(1)
        for i in range(rank_ - 1, -1, -1):
            pc = pivots[i]
            acc = QQi(0)
            row = rows[i]
            for c in range(pc + 1, m.cols):
                if v[c] and row[c] != (0, 0):
                    acc = acc + QQi(row[c][0], row[c][1]) * v[c]
            pv = QQi(rows[i][pc][0], rows[i][pc][1])
            v[pc] = -acc / pv
        basis_cols.append(v)
    if not basis_cols:
        return Subspace(m.cols, Matrix.zeros(m.cols, 0, EXACT), check=False)
    basis = Matrix([[basis_cols[j][i] for j in range(len(basis_cols))]
                    for i in range(m.cols)], EXACT)
    return Subspace(m.cols, basis, check=False)


def image_basis(m: Matrix, tol: TolerancePolicy | None = None) -> "Subspace":
    """Basis of the column space."""
    if 0 in m.shape:
        return Subspace(m.rows, Matrix.zeros(m.rows, 0, m.backend), check=False)
    if m.backend == FLOAT:
        tol = tol or DEFAULT_TOL
        u, s, vh = _float_svd(m)
        cut = tol.rel * (s[0] if s.size and s[0] > 0 else 1.0)
        r = int(np.sum(s > cut))
        if r == 0:
            return Subspace(m.rows, Matrix.zeros(m.rows, 0, FLOAT), check=False)
        return Subspace(m.rows, Matrix.from_numpy(u[:, :r]), check=False)
    rank_, pivots, _, _, _ = _echelon(m)
    return Subspace(m.rows, m.take_cols(pivots), check=False)


def solve(m: Matrix, rhs: Matrix, tol: TolerancePolicy | None = None) -> Matrix:
    """One exact solution X of m @ X = rhs; raises InconsistentSystem."""
    _same_backend(m, rhs)
    if m.rows != rhs.rows:
        raise ValueError("solve: row counts differ")
    if m.backend == FLOAT:
        tol = tol or DEFAULT_TOL
        a = m.to_numpy()
        b = rhs.to_numpy()
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        if not np.allclose(a @ x, b, atol=max(tol.rel * max(m.norm(), 1.0), tol.rel)):
            raise InconsistentSystem("no float solution within tolerance")
        return Matrix.from_numpy(x)
    if m.cols == 0:
        if rhs.is_zero():
            return Matrix.zeros(0, rhs.cols, EXACT)
        raise InconsistentSystem("empty matrix with nonzero right-hand side")
    aug = Matrix.hstack([m, rhs])
    rank_, pivots, rows, _, _ = _echelon(aug, pivot_limit=m.cols)
    for i in range(rank_, m.rows):
        if any(rows[i][c] != (0, 0) for c in range(m.cols, aug.cols)):
            raise InconsistentSystem("right-hand side outside the column space")
    sols = []
    for k in range(rhs.cols):
        v = [QQi(0)] * m.cols
        for i in range(rank_ - 1, -1, -1):
            pc = pivots[i]
            row = rows[i]
            acc = QQi(row[m.cols + k][0], row[m.cols + k][1])
            for c in range(pc + 1, m.cols):
                if v[c] and row[c] != (0, 0):
                    acc = acc - QQi(row[c][0], row[c][1]) * v[c]
            v[pc] = acc / QQi(row[pc][0], row[pc][1])
        sols.append(v)
    return Matrix([[sols[k][i] for k in range(rhs.cols)] for i in range(m.cols)], EXACT,
                  shape=(m.cols, rhs.cols))


class Subspace:
    """A subspace of an ambient coordinate space, held as an independent
    column basis."""

    __slots__ = ("ambient", "basis", "backend")

    def __init__(self, ambient: int, basis: Matrix, tol: TolerancePolicy | None = None,
                 check: bool = True):
        if basis.rows != ambient:
            raise ValueError("basis rows must equal ambient dimension")
        if check and basis.cols and rank(basis, tol) != basis.cols:
            raise ValueError("basis columns are linearly dependent")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "backend", basis.backend)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace values are immutable")

    @property
    def dim(self) -> int:
        return self.basis.cols

    @staticmethod
    def full(n: int, backend: str = EXACT) -> "Subspace":
        return Subspace(n, Matrix.identity(n, backend), check=False)

    @staticmethod
    def trivial(n: int, backend: str = EXACT) -> "Subspace":
        return Subspace(n, Matrix.zeros(n, 0, backend), check=False)

    def contains(self, other: "Subspace", tol: TolerancePolicy | None = None) -> bool:
        if other.ambient != self.ambient:
            raise ValueError("ambient dimensions differ")
        if other.dim == 0:
            return True
        joint = Matrix.hstack([self.basis, other.basis])
        return rank(joint, tol) == self.dim

    def sum(self, other: "Subspace", tol: TolerancePolicy | None = None) -> "Subspace":
        joint = Matrix.hstack([self.basis, other.basis])
        return image_basis(joint, tol)

    def intersect(self, other: "Subspace", tol: TolerancePolicy | None = None) -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.trivial(self.ambient, self.backend)
        joint = Matrix.hstack([self.basis, other.basis.scale(-1)])
        ker = kernel_basis(joint, tol)
        if ker.dim == 0:
            return Subspace.trivial(self.ambient, self.backend)
        coeff = ker.basis.take_rows(range(self.dim))
        return image_basis(self.basis @ coeff, tol)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient})"


def quotient_dim(big: Subspace, small: Subspace, tol: TolerancePolicy | None = None) -> int:
    """dim(big / small); verifies small is contained in big."""
    if not big.contains(small, tol):
        raise NotContained("claimed subspace is not contained")
    return big.dim - small.dim


def extend_basis(inner: Matrix, spanning: Matrix, tol: TolerancePolicy | None = None) -> Matrix:
    """Columns of `spanning` completing the columns of `inner` to a basis of
    span(inner) + span(spanning)."""
    _same_backend(inner, spanning)
    if spanning.cols == 0:
        return Matrix.zeros(inner.rows, 0, inner.backend)
    if inner.backend == FLOAT:
        picked = []
        cur = inner
        r = rank(cur, tol)
        for j in range(spanning.cols):
            cand = Matrix.hstack([cur, spanning.take_cols([j])])
            rc = rank(cand, tol)
            if rc > r:
                picked.append(j)
                cur, r = cand, rc
        return spanning.take_cols(picked)
    joint = Matrix.hstack([inner, spanning])
    _, pivots, _, _, _ = _echelon(joint)
    picked = [p - inner.cols for p in pivots if p >= inner.cols]
    return spanning.take_cols(picked)


def induced_on_subquotient(op: Matrix, cycles: Subspace, boundaries: Subspace,
                           tol: TolerancePolicy | None = None):
    """Matrix of the map induced by `op` on cycles/boundaries.

    Requires op(cycles) inside cycles and op(boundaries) inside boundaries.
    Returns (matrix on the quotient, representative columns).
    """
    comp = extend_basis(boundaries.basis, cycles.basis, tol)
    q = comp.cols
    if q == 0:
        return Matrix.zeros(0, 0, op.backend), comp
    frame = Matrix.hstack([boundaries.basis, comp])
    images = op @ comp
    coords = solve(frame, images, tol)
    return coords.take_rows(range(boundaries.dim, boundaries.dim + q)), comp


class SparseEchelon:
    """Incremental exact row reduction for sparse vectors (dict col -> QQi).

    Used for large structured rank queries where dense elimination would be
    wasteful; only the rank is exposed.
    """

    def __init__(self):
        self._rows = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: dict) -> dict:
        vec = {c: v for c, v in vec.items() if v}
        while vec:
            lead = min(vec)
            row = self._rows.get(lead)
            if row is None:
                return vec
            factor = vec[lead]
            for c, v in row.items():
                newv = vec.get(c, QQi(0)) - factor * v
                if newv:
                    vec[c] = newv
                else:
                    vec.pop(c, None)
        return vec

    def add(self, vec: dict) -> bool:
        residue = self.reduce(vec)
        if not residue:
            return False
        lead = min(residue)
        inv = QQi(1) / residue[lead]
        self._rows[lead] = {c: inv * v for c, v in residue.items()}
        return True
