"""Local intersection multiplicity of an isolated common zero, computed as
the stabilized codimension of a truncated local algebra, plus the diagonal
two-variable-block reduction and the joint-spectrum route to all zeros at
once.

The codimension at truncation order N is exactly the dimension of the local
ring modulo the ideal plus the N-th power of the maximal ideal; it is
non-decreasing in N and one plateau step certifies stabilization.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from . import linalg, spectrum
from .errors import ArityMismatch, NotAZero, NotIsolated, ZeroOnBoundary
from .linalg import SparseEchelon
from .poly import (DEGREVLEX, MonomialOrder, Polynomial, groebner,
                   mono_degree, mono_mul, monomials_below, quotient_algebra)
from .koszul import CommutingTuple
from .scalars import EXACT, FLOAT, QQi, TolerancePolicy


@dataclass(frozen=True)
class MultiplicityCertificate:
    """An isolated-zero multiplicity with its stabilization order and the
    tags of the oracles that produced or confirmed it."""

    point: tuple
    multiplicity: int
    stabilization_order: int
    methods: tuple = ("macaulay",)


def _require_square(system):
    system = list(system)
    if not system:
        raise ArityMismatch("empty polynomial system")
    nvars = system[0].nvars
    for g in system:
        if g.nvars != nvars:
            raise ArityMismatch("mixed variable counts in the system")
    if len(system) != nvars:
        raise ArityMismatch(
            f"{len(system)} polynomials in {nvars} variables; need a square system")
    return system, nvars


def truncated_codimension(system_at_origin, order_bound: int) -> int:
    """codim of span{trunc(m * g_i)} inside polynomials of degree < bound."""
    nvars = system_at_origin[0].nvars
    monomials = list(monomials_below(nvars, order_bound))
    position = {m: i for i, m in enumerate(monomials)}
    echelon = SparseEchelon()
    for g in system_at_origin:
        if g.is_zero():
            continue
        ord_g = g.order_of_vanishing()
        for mult in monomials_below(nvars, max(order_bound - ord_g, 0)):
            vec = {}
            for mono, coeff in g.terms.items():
                shifted = mono_mul(mono, mult)
                if mono_degree(shifted) < order_bound:
                    pos = position[shifted]
                    acc = vec.get(pos, QQi(0)) + coeff
                    if acc:
                        vec[pos] = acc
                    else:
                        vec.pop(pos, None)
            if vec:
                echelon.add(vec)
    return len(monomials) - echelon.rank


def local_multiplicity(system, point, n_max: int = 30) -> MultiplicityCertificate:
    """dim of the local ring modulo the ideal at an isolated zero.

    Raises NotAZero when the point is not a common zero and NotIsolated when
    the codimension fails to stabilize by n_max.
    """
    system, nvars = _require_square(system)
    point = tuple(p if isinstance(p, QQi) else QQi(p) for p in point)
    if len(point) != nvars:
        raise ArityMismatch("point dimension differs from variable count")
    for g in system:
        if not g.evaluate(point).is_zero():
            raise NotAZero(f"system does not vanish at ({', '.join(map(str, point))})")
    translated = [g.shift(point) for g in system]
    prev = truncated_codimension(translated, 1)
    for order_bound in range(1, n_max):
        nxt = truncated_codimension(translated, order_bound + 1)
        if nxt < prev:
            raise AssertionError("codimension decreased; truncation engine bug")
        if nxt == prev:
            return MultiplicityCertificate(point, prev, order_bound)
        prev = nxt
    raise NotIsolated(f"codimension still growing at truncation order {n_max}")


def jacobian_matrix(system):
    """Matrix of formal partial derivatives d g_i / d z_j."""
    system, nvars = _require_square(system)
    return [[g.partial(j + 1) for j in range(nvars)] for g in system]


def jacobian_regular(system, point) -> bool:
    """True when the Jacobian determinant is nonzero at the point (exact)."""
    system, nvars = _require_square(system)
    point = tuple(p if isinstance(p, QQi) else QQi(p) for p in point)
    rows = [[g.partial(j + 1).evaluate(point) for j in range(nvars)] for g in system]
    return bool(linalg.det(linalg.Matrix(rows, EXACT)))


def build_diagonal_system(system):
    """From g in n variables, the 2n-variable system (z - w, g(z)) whose only
    zeros are the doubled zeros of g."""
    system, nvars = _require_square(system)
    total = 2 * nvars
    head = []
    for i in range(nvars):
        z_i = Polynomial.variable(total, i + 1)
        w_i = Polynomial.variable(total, nvars + i + 1)
        head.append(z_i - w_i)
    tail = [g.embed(total, list(range(nvars))) for g in system]
    return head + tail


def verify_diagonal_degree(system, point, n_max: int = 30) -> bool:
    """Check the degree identity between g at a zero and the diagonal system
    at the doubled zero."""
    base = local_multiplicity(system, point, n_max)
    doubled = tuple(point) + tuple(point)
    diag = local_multiplicity(build_diagonal_system(system), doubled, n_max)
    return base.multiplicity == diag.multiplicity


@dataclass(frozen=True)
class GlobalMultiplicityTable:
    """All zeros of a zero-dimensional system with the dimensions of their
    generalized eigenspaces; the dimensions add up to the quotient dimension."""

    entries: tuple  # (point, multiplicity) pairs
    quotient_dim: int
    backend: str

    def total(self) -> int:
        return sum(m for _, m in self.entries)


def global_multiplicity_table(system, order: MonomialOrder = DEGREVLEX,
                              tol: TolerancePolicy | None = None,
                              rng=None, backend: str = EXACT) -> GlobalMultiplicityTable:
    """Zeros with multiplicities as the joint spectral decomposition of the
    multiplication tuple on the quotient algebra.

    Exact mode raises IrrationalSpectrum when some zero leaves the Gaussian
    rationals; callers may retry with backend="float".
    """
    system = list(system)
    gb = groebner(system, order)
    algebra = quotient_algebra(gb)
    if algebra.dim == 0:
        return GlobalMultiplicityTable((), 0, backend)
    mats = list(algebra.mult_matrices)
    if backend == FLOAT:
        mats = [linalg.Matrix.from_numpy(m.to_numpy()) for m in mats]
    mult_tuple = CommutingTuple(mats, tol)
    decomposition = spectrum.spectral_decomposition(mult_tuple, tol, rng)
    entries = tuple((point, space.dim) for point, space in decomposition.components)
    table = GlobalMultiplicityTable(entries, algebra.dim, backend)
    if table.total() != algebra.dim:
        raise AssertionError("eigenspace dimensions do not add up to the quotient")
    return table


def winding_number(poly: Polynomial, center=0j, radius: float = 1.0,
                   samples: int = 4096) -> float:
    """Winding number of a univariate polynomial around a circle, by
    trapezoid sampling of the argument increments.

    Numeric oracle for one-variable index checks only.
    """
    if poly.nvars != 1:
        raise ArityMismatch("winding numbers are one-variable only")
    center = complex(center)
    terms = [(e[0], complex(c)) for e, c in poly.terms.items()]
    total = 0.0
    previous = None
    first = None
    for k in range(samples):
        z = center + radius * cmath.exp(2j * cmath.pi * k / samples)
        w = sum(c * z ** e for e, c in terms)
        if abs(w) < 1e-12:
            raise ZeroOnBoundary("symbol vanishes on the sampling circle")
        if previous is not None:
            delta = cmath.phase(w / previous)
            total += delta
        else:
            first = w
        previous = w
    total += cmath.phase(first / previous)
    return total / (2 * cmath.pi)
