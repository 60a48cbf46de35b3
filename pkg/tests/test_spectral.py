import random

import pytest

from koszul_index import koszul
from koszul_index.errors import BackendMismatch, CommutatorError
from koszul_index.koszul import CommutingTuple, build_complex, homology
from koszul_index.linalg import Matrix
from koszul_index.scalars import FLOAT
from koszul_index.spectral import (build_bicomplex, e2_dims_independent,
                                   e2_page, euler_via_e2, page_sequence)
from koszul_index.suites import random_bicomplex_pair

ZERO1 = Matrix.zeros(1, 1)
JORDAN = Matrix([[0, 1], [0, 0]])


def test_zero_pair_block_dims():
    bc = build_bicomplex(CommutingTuple([ZERO1]), CommutingTuple([ZERO1]))
    assert bc.dims == [[1, 1], [1, 1]]
    assert e2_page(bc).dims_grid() == [[1, 1], [1, 1]]


def test_identity_pair_total_homology_zero():
    one = Matrix.identity(1)
    bc = build_bicomplex(CommutingTuple([one]), CommutingTuple([one]))
    assert homology(build_complex(bc.joined)).dims == (0, 0, 0)
    assert e2_page(bc).dims_grid() == [[0, 0], [0, 0]]


def test_invertible_second_tuple_clears_page_two():
    bc = build_bicomplex(CommutingTuple([Matrix.zeros(2, 2)]),
                         CommutingTuple([Matrix.identity(2)]))
    assert e2_page(bc).dims_grid() == [[0, 0], [0, 0]]


def test_bicomplex_laws_assert_on_build():
    # laws hold for every commuting pair; building is the assertion
    rng = random.Random(2)
    for _ in range(10):
        a, b = random_bicomplex_pair(rng, rng.choice([1, 2]), 1, rng.randint(1, 4))
        build_bicomplex(a, b)


def test_totalization_matches_joined_complex():
    rng = random.Random(8)
    for _ in range(8):
        a, b = random_bicomplex_pair(rng, 2, 1, rng.randint(1, 4))
        bc = build_bicomplex(a, b)
        total = bc.total_complex()
        joined = build_complex(bc.joined)
        assert total.dims == joined.dims
        assert total.homology_dims() == joined.homology_dims()


def test_jordan_example_pipelines_agree():
    bc = build_bicomplex(CommutingTuple([JORDAN]), CommutingTuple([Matrix.zeros(2, 2)]))
    page = e2_page(bc)  # raises when the two pipelines disagree
    assert page.dims_grid() == [[1, 1], [1, 1]]
    indep = e2_dims_independent(bc)
    assert indep == [[1, 1], [1, 1]]


def test_page_sequence_converges_to_homology():
    rng = random.Random(17)
    for _ in range(10):
        a, b = random_bicomplex_pair(rng, rng.choice([1, 2]), 1, rng.randint(1, 4))
        bc = build_bicomplex(a, b)
        pages = page_sequence(bc, 2)
        limit = pages[-1]
        profile = homology(build_complex(bc.joined))
        for k in range(bc.n + bc.m + 1):
            acc = sum(limit.dim(p, k - p) for p in range(bc.n + 1)
                      if 0 <= k - p <= bc.m)
            assert acc == profile.dims[k]


def test_one_column_stabilizes_at_page_two():
    # with a single row pair (n = 1) no differential survives past page 2
    rng = random.Random(29)
    for _ in range(5):
        a, b = random_bicomplex_pair(rng, 1, 1, rng.randint(1, 4))
        pages = page_sequence(build_bicomplex(a, b), 2)
        for page in pages[2:]:
            assert page.differentials_all_zero()
            assert page.dims_grid() == pages[2].dims_grid()


def test_signed_sums_constant_from_page_two():
    rng = random.Random(37)
    for _ in range(8):
        a, b = random_bicomplex_pair(rng, 2, 1, rng.randint(1, 4))
        pages = page_sequence(build_bicomplex(a, b), 4)
        sums = {page.euler_sum() for page in pages[2:]}
        assert len(sums) == 1


def test_euler_via_e2_vanishes():
    rng = random.Random(43)
    for _ in range(8):
        a, b = random_bicomplex_pair(rng, rng.choice([1, 2]), 1, rng.randint(1, 4))
        bc = build_bicomplex(a, b)
        assert euler_via_e2(bc) == 0


def _entry(i, j, value):
    rows = [[0] * 6 for _ in range(6)]
    rows[i][j] = value
    return rows


def test_nonzero_page_two_differential():
    # engineered so a page-2 class must be lifted through two filtration
    # steps: basis (v, u1, u2, w, s1, s2) with A1: v->s1, u2->w; A2: v->s2;
    # B: u1->-s1, u2->-s2. Then d2[v] = [w] is nonzero.
    a1 = Matrix([[1 if (i, j) in {(4, 0), (3, 2)} else 0 for j in range(6)]
                 for i in range(6)])
    a2 = Matrix(_entry(5, 0, 1))
    b1 = Matrix([[-1 if (i, j) in {(4, 1), (5, 2)} else 0 for j in range(6)]
                 for i in range(6)])
    bc = build_bicomplex(CommutingTuple([a1, a2]), CommutingTuple([b1]))
    pages = page_sequence(bc, 3)
    e2, e3 = pages[2], pages[3]
    d2 = e2.differentials[(2, 0)]
    assert not d2.is_zero()
    assert e2.dims_grid() == [[3, 2], [6, 5], [3, 3]]
    assert e3.dims_grid() == [[3, 1], [6, 5], [2, 3]]
    assert e3.differentials_all_zero()
    profile = homology(build_complex(bc.joined))
    assert profile.dims == (3, 7, 7, 3)


def test_float_backend_rejected():
    f = Matrix([[0.0]], FLOAT)
    with pytest.raises(BackendMismatch):
        build_bicomplex(CommutingTuple([f]), CommutingTuple([f]))


def test_union_must_commute():
    with pytest.raises(CommutatorError):
        build_bicomplex(CommutingTuple([JORDAN]),
                        CommutingTuple([Matrix([[1, 0], [1, 1]])]))
