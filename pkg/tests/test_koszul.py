import random

import pytest

from koszul_index import linalg
from koszul_index.errors import CommutatorError
from koszul_index.koszul import (CommutingTuple, HomologyProfile, build_complex,
                                 homology, mapping_cone, verify_cone_isomorphism)
from koszul_index.linalg import Matrix
from koszul_index.scalars import EXACT, QQi
from koszul_index.suites import random_commuting_tuple, random_cone_instance


def exact(rows):
    return Matrix(rows, EXACT)


JORDAN = exact([[0, 1], [0, 0]])
ZERO2 = Matrix.zeros(2, 2)


def test_commutation_verified_at_build():
    with pytest.raises(CommutatorError):
        CommutingTuple([JORDAN, exact([[1, 0], [1, 1]])])
    CommutingTuple([JORDAN, JORDAN])  # a tuple may repeat operators


def test_build_single_zero_operator():
    c = build_complex(CommutingTuple([ZERO2]))
    assert c.dims == [2, 2]
    assert c.d(1).is_zero()


def test_build_zero_pair_on_scalars():
    c = build_complex(CommutingTuple([Matrix.zeros(1, 1), Matrix.zeros(1, 1)]))
    assert c.dims == [1, 2, 1]
    assert c.d(1).is_zero() and c.d(2).is_zero()


def test_differential_block_layout():
    c = build_complex(CommutingTuple([JORDAN, ZERO2]))
    assert c.d(1) == Matrix.hstack([JORDAN, ZERO2])
    assert c.d(2) == Matrix.vstack([-ZERO2, JORDAN])


def test_homology_examples():
    assert homology(build_complex(CommutingTuple([JORDAN]))).dims == (1, 1)
    zero_pair = CommutingTuple([Matrix.zeros(1, 1), Matrix.zeros(1, 1)])
    assert homology(build_complex(zero_pair)).dims == (1, 2, 1)
    assert homology(build_complex(CommutingTuple([JORDAN, ZERO2]))).dims == (1, 2, 1)


def test_profile_index_is_minus_euler():
    profile = HomologyProfile.from_dims((1, 2, 1))
    assert profile.euler == 0 and profile.index == 0
    profile2 = HomologyProfile.from_dims((2, 1))
    assert profile2.euler == 1 and profile2.index == -1


def test_index_vanishes_on_random_tuples():
    rng = random.Random(11)
    for _ in range(25):
        t = random_commuting_tuple(rng, rng.choice([1, 2, 3]), rng.randint(1, 6))
        profile = homology(build_complex(t))
        assert profile.index == 0


def test_homology_invariant_under_similarity():
    rng = random.Random(5)
    for _ in range(10):
        t = random_commuting_tuple(rng, 2, 4)
        base = homology(build_complex(t)).dims
        from koszul_index.suites import _unimodular

        s = _unimodular(rng, 4)
        s_inv = linalg.solve(s, Matrix.identity(4))
        conj = t.conjugate(s, s_inv)
        assert homology(build_complex(conj)).dims == base


def test_invertible_coordinate_contracts():
    rng = random.Random(9)
    for _ in range(10):
        t = random_commuting_tuple(rng, 2, 4)
        extended = t.extend(Matrix.identity(4))
        assert homology(build_complex(extended)).dims == (0,) * 4


def test_mapping_cone_over_zero_is_direct_sum():
    t = CommutingTuple([JORDAN])
    cone = mapping_cone(build_complex(t), ZERO2)
    base = build_complex(t).homology_dims()
    dims = cone.homology_dims()
    # cone over 0 sums shifted copies of the base homology
    assert dims[0] == base[0]
    assert dims[1] == base[1] + base[0]
    assert dims[2] == base[1]


def test_mapping_cone_of_invertible_kills_homology():
    t = CommutingTuple([JORDAN, ZERO2])
    cone = mapping_cone(build_complex(t), Matrix.identity(2))
    assert cone.homology_dims() == [0, 0, 0, 0]


def test_cone_of_identity_on_scalar():
    t = CommutingTuple([Matrix.zeros(1, 1)])
    cone = mapping_cone(build_complex(t), Matrix.identity(1))
    assert cone.homology_dims() == [0, 0, 0]


def test_cone_matches_extended_tuple_homology():
    rng = random.Random(23)
    for _ in range(10):
        t, b = random_cone_instance(rng, rng.choice([1, 2]), rng.randint(1, 5))
        cone = mapping_cone(build_complex(t), b)
        extended = build_complex(t.extend(b))
        assert cone.homology_dims() == extended.homology_dims()


def test_verify_cone_isomorphism_random():
    rng = random.Random(31)
    for _ in range(15):
        t, b = random_cone_instance(rng, rng.choice([1, 2]), rng.randint(1, 5))
        assert verify_cone_isomorphism(t, b)


def test_cone_rejects_non_commuting():
    t = CommutingTuple([JORDAN])
    with pytest.raises(CommutatorError):
        verify_cone_isomorphism(t, exact([[1, 0], [1, 1]]))


def test_end_groups_match_kernel_and_cokernel():
    rng = random.Random(41)
    for _ in range(10):
        t = random_commuting_tuple(rng, 2, 5)
        dims = homology(build_complex(t)).dims  # raises internally on mismatch
        top = linalg.kernel_basis(Matrix.vstack(t.operators)).dim
        bottom = t.dim - linalg.rank(Matrix.hstack(t.operators))
        assert dims[-1] == top and dims[0] == bottom
