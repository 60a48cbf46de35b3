import random
from fractions import Fraction

import pytest

from koszul_index.errors import ArityMismatch, IrrationalSpectrum
from koszul_index.koszul import CommutingTuple
from koszul_index.linalg import Matrix
from koszul_index.poly import groebner, parse_system, quotient_algebra
from koszul_index.scalars import EXACT, FLOAT, QQi
from koszul_index.spectrum import (apply_polynomial_map, charpoly,
                                   exact_eigenvalues, generalized_eigenspace,
                                   joint_spectrum_equivalences,
                                   localized_homology, spectral_decomposition)


def mult_tuple(text, n):
    qa = quotient_algebra(groebner(parse_system(text, n)))
    return CommutingTuple(list(qa.mult_matrices))


DIAG = CommutingTuple([Matrix([[1, 0], [0, 2]]), Matrix([[3, 0], [0, 4]])])


def as_strs(decomposition):
    return [(tuple(str(x) for x in pt), space.dim)
            for pt, space in decomposition.components]


def test_charpoly_of_companion():
    m = Matrix([[0, -6], [1, 5]])  # x^2 - 5x + 6
    assert charpoly(m) == [QQi(6), QQi(-5), QQi(1)]


def test_exact_eigenvalues_with_multiplicity():
    m = Matrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    assert exact_eigenvalues(m) == [(QQi(2), 2), (QQi(3), 1)]


def test_exact_eigenvalues_gaussian():
    m = Matrix([[QQi(0), QQi(-1)], [QQi(1), QQi(0)]])  # x^2 + 1
    assert exact_eigenvalues(m) == [(QQi(0, -1), 1), (QQi(0, 1), 1)]


def test_decomposition_diagonal_pair():
    assert as_strs(spectral_decomposition(DIAG)) == \
        [(("1", "3"), 1), (("2", "4"), 1)]


def test_decomposition_multiplication_tuples():
    assert as_strs(spectral_decomposition(mult_tuple("z1^2", 1))) == [(("0",), 2)]
    assert as_strs(spectral_decomposition(mult_tuple("z1^2 - z2; z2^2", 2))) == \
        [(("0", "0"), 4)]


def test_decomposition_invariants():
    rng = random.Random(3)
    t = mult_tuple("z1*(z1-1)*(z1+2); z2^2 - z2", 2)
    dec = spectral_decomposition(t, rng=rng)
    assert dec.total_dim() == t.dim
    for point, space in dec.components:
        for op, lam in zip(t.operators, point):
            shifted = op - Matrix.identity(t.dim).scale(lam)
            image = shifted.power(t.dim) @ space.basis
            assert image.is_zero()


def test_irrational_spectrum_raises_exact_passes_float():
    t = mult_tuple("z1^2 - 2", 1)
    with pytest.raises(IrrationalSpectrum):
        spectral_decomposition(t)
    f = CommutingTuple([Matrix.from_numpy(t.operators[0].to_numpy())])
    dec = spectral_decomposition(f)
    values = sorted(pt[0].real for pt, _ in dec.components)
    assert values[0] == pytest.approx(-2 ** 0.5, abs=1e-6)
    assert values[1] == pytest.approx(2 ** 0.5, abs=1e-6)


def test_equivalences_examples():
    on_spec = joint_spectrum_equivalences(DIAG, (QQi(1), QQi(3)))
    assert on_spec.agree and on_spec.in_taylor_spectrum
    off_spec = joint_spectrum_equivalences(DIAG, (QQi(1), QQi(4)))
    assert off_spec.agree and not off_spec.in_taylor_spectrum
    jordan = CommutingTuple([Matrix([[0, 1], [0, 0]]), Matrix.zeros(2, 2)])
    at_zero = joint_spectrum_equivalences(jordan, (QQi(0), QQi(0)))
    assert at_zero.agree and at_zero.in_taylor_spectrum
    assert sum(m for _, m in at_zero.eigenvalues) == 2


def test_apply_polynomial_map_examples():
    ident = apply_polynomial_map(DIAG, parse_system("z1; z2", 2))
    assert ident.operators == DIAG.operators
    const = apply_polynomial_map(DIAG, parse_system("5", 2))
    assert const.operators[0] == Matrix.identity(2).scale(QQi(5))
    summed = apply_polynomial_map(DIAG, parse_system("z1 + z2", 2))
    assert summed.operators[0] == Matrix([[4, 0], [0, 6]])
    with pytest.raises(ArityMismatch):
        apply_polynomial_map(DIAG, parse_system("z1", 1))


def test_spectral_mapping_on_finite_dimensions():
    rng = random.Random(5)
    t = mult_tuple("z1*(z1-1); z2*(z2-2)", 2)
    polys = parse_system("z1 + z2; z1*z2", 2)
    mapped = apply_polynomial_map(t, polys)
    source = spectral_decomposition(t, rng=random.Random(1))
    target = spectral_decomposition(mapped, rng=random.Random(2))
    pushed = {}
    for point, space in source.components:
        image = tuple(g.evaluate(point) for g in polys)
        pushed[image] = pushed.get(image, 0) + space.dim
    assert dict(((pt, s.dim) for pt, s in target.components)) == \
        {pt: m for pt, m in pushed.items()}


def test_generalized_eigenspace_dimensions():
    t = mult_tuple("z1^2 - z2; z2^2", 2)
    assert generalized_eigenspace(t, (QQi(0), QQi(0))).dim == 4
    assert generalized_eigenspace(t, (QQi(1), QQi(0))).dim == 0


def test_localized_homology_examples():
    t = mult_tuple("z1^2", 1)
    assert localized_homology(t, parse_system("z1", 1), (QQi(0),)) == [1, 1]
    assert localized_homology(t, parse_system("z1", 1), (QQi(3),)) == [0, 0]
    assert localized_homology(t, parse_system("z1 + 1", 1), (QQi(0),)) == [0, 0]


def test_localized_homology_sums_to_total():
    from koszul_index import koszul

    t = mult_tuple("z1*(z1-1); z2", 2)
    polys = parse_system("z1; z2", 2)
    mapped = apply_polynomial_map(t, polys)
    total = koszul.homology(koszul.build_complex(mapped)).dims
    zeros = [(QQi(0), QQi(0)), (QQi(1), QQi(0))]
    acc = [0] * len(total)
    for z in zeros:
        local = localized_homology(t, polys, z)
        acc = [a + extra for a, extra in zip(acc, local)]
    assert tuple(acc) == total
