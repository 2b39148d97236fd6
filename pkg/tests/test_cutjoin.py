from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from wreath_hurwitz.cutjoin import (
    DFTChange,
    build_cj,
    cj0_operator,
    cj_matrix,
    cjk_operator,
    classical_cj,
    commutators_vanish,
    evolve,
    exp_p1,
    m2_displayed_cj0,
    m2_displayed_cj1,
    verify_dft_identities,
    verify_diagram,
)
from wreath_hurwitz.cyclo import xi_pow
from wreath_hurwitz.elsv import classical_bruteforce
from wreath_hurwitz.enumeration import hurwitz_classdp, profiles_in_box, t_matrix
from wreath_hurwitz.partitions import ColoredPartition, gen_colored_partitions, gen_partitions
from wreath_hurwitz.polyring import Poly, mono_weight, p_monomial

DIAGRAM_GRID = [(1, n) for n in range(1, 6)] + [(2, n) for n in range(1, 5)] + [(3, n) for n in range(1, 4)]


@pytest.mark.parametrize("m,n", DIAGRAM_GRID)
def test_diagram_commutes_with_constant_one(m, n):
    rep = verify_diagram(m, n)
    assert rep.passed, rep.failures
    for i, c in rep.details["constants"].items():
        assert c in ("1", "vacuous")
        if c == "1":
            assert cj_matrix(m, n, i) == t_matrix(m, n, i)


def test_m1_is_classical():
    for n in range(1, 6):
        assert cj0_operator(1, n).matrix(1, n) == classical_cj(n).matrix(1, n)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, 6)])
def test_commutators_vanish(m, n):
    assert commutators_vanish(m, n).passed


def test_m2_displayed_formulas():
    for n in range(1, 6):
        assert m2_displayed_cj0(n).matrix(2, n) == cj0_operator(2, n).matrix(2, n)
        assert m2_displayed_cj1(n).matrix(2, n) == cjk_operator(2, 1, n).matrix(2, n)


def test_dft_identities_small():
    for m in range(1, 4):
        for n in range(1, 4):
            assert verify_dft_identities(m, n).passed


u_polys = st.dictionaries(
    st.lists(st.sampled_from([("u", a, k) for a in range(3) for k in (1, 2)]), min_size=1, max_size=3).map(
        lambda vs: tuple(sorted({v: vs.count(v) for v in vs}.items()))
    ),
    st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3)),
    max_size=3,
).map(Poly)


@settings(max_examples=40, deadline=None)
@given(u_polys)
def test_dft_round_trip(f):
    change = DFTChange(3)
    assert change.to_u(change.to_p(f)) == f


@settings(max_examples=25, deadline=None)
@given(u_polys, st.integers(0, 2), st.sampled_from([1, 2]))
def test_derivative_rule(f, alpha, i):
    # d/dp^(alpha)_i of f(u(p)) equals sum_nu (d u^(nu)_i / d p^(alpha)_i) (df/du^(nu)_i)(u(p))
    change = DFTChange(3)
    lhs = change.to_p(f).partial(("p", alpha, i))
    rhs = Poly()
    for v, c in change.derivative_rule(alpha, i).items():
        rhs = rhs + change.to_p(f.partial(v)).scale(c)
    assert lhs == rhs


def test_derivative_rule_coefficients():
    rule = DFTChange(4).derivative_rule(1, 2)
    assert rule == {("u", nu, 2): xi_pow(4, -nu) * Fraction(1, 4) for nu in range(4)}


def test_restrict_is_substitution_with_other_families_zero():
    m = 3
    change = DFTChange(m)
    f = Poly({p_monomial(cp): Fraction(k + 1) for k, cp in enumerate(gen_colored_partitions(m, 2))})
    full = change.to_u(f)
    for alpha in range(m):
        kept = full.filter(lambda mono: all(v[1] == alpha for v, _ in mono))
        assert change.restrict(f, alpha) == kept


def test_exp_p1_slice():
    H = evolve(2, 4, (0, 0))
    assert H.slices[(0, 0)] == exp_p1(2, 4)
    # rescaled, the beta = 0 slice is exp(p^(0)_1)
    assert H.scaled().slices[(0, 0)] == exp_p1(2, 4, scale=1)


@pytest.mark.parametrize("m,orders", [(1, (4,)), (2, (3, 2)), (3, (2, 1, 1))])
def test_cut_and_join_equations(m, orders):
    rep = evolve(m, 3, orders).check_cut_and_join()
    assert rep.passed and rep.checked > 0


@pytest.mark.parametrize("m", [1, 2, 3])
def test_evolve_matches_enumeration(m):
    orders = (2,) * m
    H = evolve(m, 3, orders)
    for profile in profiles_in_box(orders):
        for n in range(1, 4):
            for cp in gen_colored_partitions(m, n):
                assert H.hurwitz(profile, cp) == hurwitz_classdp(m, n, profile, cp)


def test_evolve_m1_matches_transposition_counts():
    H = evolve(1, 4, (3,))
    for d in range(1, 5):
        for lam in gen_partitions(d):
            for r in range(4):
                assert H.hurwitz((r,), ColoredPartition((lam,))) == classical_bruteforce(d, lam, r)


def test_coefficient_normalization():
    # coefficient of beta^k p_lambda is h / k!
    H = evolve(1, 3, (2,))
    cp = ColoredPartition(((3,),))
    assert H.coefficient((2,), cp) == Fraction(1, 2)
    assert H.hurwitz((2,), cp) == 1


def test_as_poly_and_table():
    H = evolve(2, 2, (1, 1))
    poly = H.as_poly()
    assert all(mono_weight(mono) <= 2 for mono in poly.terms)
    table = H.table(profiles_in_box((1, 1)))
    assert table.get((1, 0), ColoredPartition.parse("2|-")) == Fraction(1, 4)


def test_build_cj_and_errors():
    fam = build_cj(3, 2)
    assert len(fam.matrices()) == 3
    with pytest.raises(ValueError):
        build_cj(0, 2)
    with pytest.raises(ValueError):
        cjk_operator(2, 2, 3)
    with pytest.raises(ValueError):
        evolve(2, 3, (1,))


def test_exp_p1_terms():
    e = exp_p1(3, 3)
    assert e.coefficient(((("p", 0, 1), 3),)) == Fraction(1, 27 * factorial(3))
