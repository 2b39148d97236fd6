import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wreath_hurwitz.cyclo import CycloNumber, cyclotomic_poly, euler_phi, root_sum, xi_pow

# Phi_m coefficients, lowest degree first
KNOWN_CYCLOTOMIC = {
    1: (-1, 1),
    2: (1, 1),
    3: (1, 1, 1),
    4: (1, 0, 1),
    5: (1, 1, 1, 1, 1),
    6: (1, -1, 1),
    8: (1, 0, 0, 0, 1),
    12: (1, 0, -1, 0, 1),
}


@pytest.mark.parametrize("m", sorted(KNOWN_CYCLOTOMIC))
def test_cyclotomic_polynomials(m):
    assert tuple(cyclotomic_poly(m)) == KNOWN_CYCLOTOMIC[m]
    assert euler_phi(m) == len(KNOWN_CYCLOTOMIC[m]) - 1


@pytest.mark.parametrize("m", range(1, 9))
def test_roots_of_unity(m):
    xi = xi_pow(m, 1)
    assert xi**m == 1
    total = sum((xi_pow(m, a) for a in range(m)), CycloNumber(m, ()))
    assert total == (1 if m == 1 else 0)
    assert abs(xi.to_complex() - cmath.exp(2j * cmath.pi / m)) < 1e-12


def test_conjugate_and_rationality():
    xi = xi_pow(3, 1)
    assert xi.conjugate() == xi_pow(3, 2)
    assert (xi + xi.conjugate()).to_rational() == -1
    assert not xi.is_rational()
    with pytest.raises(ValueError):
        xi.to_rational()


def test_root_sum():
    assert root_sum(4, {0: 1, 2: 1}) == 0
    assert root_sum(4, {1: 2, 5: -2}) == 0


fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))
elements = st.lists(fractions, min_size=4, max_size=4)


@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    m = 5
    x, y, z = CycloNumber(m, a), CycloNumber(m, b), CycloNumber(m, c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(elements)
def test_complex_embedding_is_multiplicative(a):
    x = CycloNumber(5, a)
    y = xi_pow(5, 2) + Fraction(1, 3)
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9
