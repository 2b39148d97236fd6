from fractions import Fraction

import pytest

from wreath_hurwitz.cutjoin import classical_cj, evolve
from wreath_hurwitz.cyclo import xi_pow
from wreath_hurwitz.enumeration import hurwitz_classdp, profiles_in_box
from wreath_hurwitz.partitions import ColoredPartition, conjugate, gen_colored_partitions, gen_partitions
from wreath_hurwitz.polyring import Poly
from wreath_hurwitz.schur import (
    SCHUR_BUDGET,
    cauchy_check,
    closed_form_H,
    colored_schur_at_unit,
    eigen,
    eigen_table,
    schur_at_unit,
    schur_in_powersums,
    verify_eigenbasis,
    verify_eigenvector,
)

CP = ColoredPartition.parse
p = lambda k: ("p", 0, k)

# dimensions of S_n irreducibles (hook length formula), n <= 5
DIMENSIONS = {
    (3,): 1, (2, 1): 2, (1, 1, 1): 1,
    (4,): 1, (3, 1): 3, (2, 2): 2, (2, 1, 1): 3, (1, 1, 1, 1): 1,
    (5,): 1, (4, 1): 4, (3, 2): 5, (3, 1, 1): 6, (2, 2, 1): 5, (2, 1, 1, 1): 4, (1, 1, 1, 1, 1): 1,
}


def test_small_schur_polynomials():
    half = Fraction(1, 2)
    assert schur_in_powersums((1,)) == Poly.var(p(1))
    assert schur_in_powersums((2,)) == Poly({((p(1), 2),): half, ((p(2), 1),): half})
    assert schur_in_powersums((1, 1)) == Poly({((p(1), 2),): half, ((p(2), 1),): -half})
    assert schur_in_powersums(()) == Poly.const(1)


@pytest.mark.parametrize("lam", sorted(DIMENSIONS))
def test_schur_at_unit_is_dimension_over_factorial(lam):
    from math import factorial

    assert schur_at_unit(lam) == Fraction(DIMENSIONS[lam], factorial(sum(lam)))


def test_schur_orthonormality():
    # <p_mu, p_nu> = z_mu delta, so sum over s_lambda coefficients reproduces delta
    from wreath_hurwitz.partitions import z_constant
    from wreath_hurwitz.polyring import mono_from_vars

    for n in range(1, 6):
        parts = gen_partitions(n)
        for a in parts:
            for b in parts:
                sa, sb = schur_in_powersums(a), schur_in_powersums(b)
                pairing = sum(
                    sa.coefficient(mono_from_vars(p(k) for k in mu))
                    * sb.coefficient(mono_from_vars(p(k) for k in mu))
                    * z_constant(mu)
                    for mu in parts
                )
                assert pairing == (1 if a == b else 0)


def test_conjugate_schur_via_omega():
    # omega(p_k) = (-1)^(k-1) p_k maps s_lambda to s_lambda'
    for n in range(1, 6):
        for lam in gen_partitions(n):
            s = schur_in_powersums(lam)
            sign = lambda mono: (-1) ** sum((v[2] - 1) * e for v, e in mono)
            omega = Poly({mono: c * sign(mono) for mono, c in s.terms.items()})
            assert omega == schur_in_powersums(conjugate(lam))


def test_schur_budget():
    with pytest.raises(ValueError):
        schur_in_powersums((SCHUR_BUDGET + 1,))


def test_eigen_examples():
    a = eigen(CP("1|-"))
    assert a.c0 == 0 and a.ck == (xi_pow(2, 0),)
    b = eigen(CP("1|1"))
    assert b.ck[0] == 0
    c = eigen(CP("2|-"))
    assert c.c0 == 4  # 2m with m = 2
    assert c.c0_operator == 2


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 4) for n in range(1, 5)])
def test_eigenbasis_with_operator_eigenvalue(m, n):
    rep = verify_eigenbasis(m, n, corrected=True)
    assert rep.passed, rep.failures


def test_stated_c0_fails_exactly_where_c0_is_nonzero():
    for m in range(1, 4):
        for n in range(1, 4):
            for cp in gen_colored_partitions(m, n):
                rep = verify_eigenvector(cp, corrected=False)
                if eigen(cp).c0 == 0:
                    assert rep.passed
                else:
                    assert rep.failures == ["CJ_0"]


def test_ck_eigenvalues_hold_with_stated_formula():
    for m in range(2, 4):
        for n in range(1, 4):
            for cp in gen_colored_partitions(m, n):
                rep = verify_eigenvector(cp, corrected=False)
                assert not any(f != "CJ_0" for f in rep.failures)


def test_m1_classical_eigenvalue():
    for n in range(1, 6):
        for lam in gen_partitions(n):
            s = schur_in_powersums(lam)
            content = sum(x * (x - 2 * i + 1) for i, x in enumerate(lam, start=1))
            assert classical_cj(n).apply(s) == s.scale(Fraction(content, 2))


def test_plus_sign_rejected_for_m3():
    rep = verify_eigenbasis(3, 2, corrected=True, sign=+1)
    assert not rep.passed


def test_c0_rational_and_ck_conjugate():
    for m in range(2, 5):
        for n in range(1, 4):
            for cp in gen_colored_partitions(m, n):
                d = eigen(cp)
                assert isinstance(d.c0, Fraction)
                for k in range(1, m):
                    assert d.ck[k - 1].conjugate() == d.ck[m - k - 1]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 4) for n in range(1, 6 - m + 1)])
def test_cauchy_identity(m, n):
    assert cauchy_check(m, n).passed


def test_colored_schur_at_unit_is_a_product_over_colors():
    assert colored_schur_at_unit(CP("1|1")) == 1
    assert colored_schur_at_unit(CP("2,1|-")) == Fraction(2, 6)
    assert colored_schur_at_unit(CP("2|1,1")) == Fraction(1, 4)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_closed_form_agrees(m):
    orders = (2,) * m
    table = closed_form_H(m, 3, orders)
    H = evolve(m, 3, orders)
    for profile in profiles_in_box(orders):
        for n in range(1, 4):
            for cp in gen_colored_partitions(m, n):
                assert table.get(profile, cp) == H.hurwitz(profile, cp) == hurwitz_classdp(m, n, profile, cp)


def test_eigen_table_rows():
    rows = eigen_table(2, 2)
    assert [r["colored_partition"] for r in rows] == [str(cp) for cp in gen_colored_partitions(2, 2)]
