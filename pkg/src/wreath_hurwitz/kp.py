"""Truncated check that the generating function is a KP tau-function in each u-family.

The betas are put on a ray beta_i = c_i * eps with rational c_i and a formal
parameter eps truncated at a fixed order, so everything stays exact.  The
restricted series lives in the variables u^(alpha)_k, which become the KP
times directly, t_k = u_k (the ``"identity"`` convention).  The alternative
u_k = k t_k (``"power_sum"``) is kept for comparison: with the equations in
the normalization used below it fails once terms of weight >= 5 appear.

:func:`p_family_check` tests the same equations after setting every raw
family except p^(alpha) to zero.  That substitution sends all u-families to
a common multiple of p^(alpha), which is not a weighted rescaling of the
times, and the residuals stop vanishing at eps-order 4 once beta_0 != 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .cutjoin import DFTChange, GenFunction, cj_operator, exp_p1
from .cyclo import CycloNumber
from .polyring import (
    DiffOperator,
    Poly,
    Truncation,
    graded_log,
    mono_weight,
)
from .report import CheckReport

EPS = ("b", "eps")
TIME_CONVENTIONS = ("identity", "power_sum")
DEFAULT_CONVENTION = "identity"


def tvar(k: int) -> tuple:
    return ("t", k)


@dataclass
class TimesSeries:
    """A series in the times t_1, t_2, ... (and eps), known up to weight ``max_weight``."""

    poly: Poly
    max_weight: int
    eps_order: int = 0

    @property
    def trunc(self) -> Truncation:
        return Truncation(self.max_weight, {"eps": self.eps_order})

    def d(self, *indices: int) -> Poly:
        out = self.poly
        for i in indices:
            out = out.partial(tvar(i))
        return out

    def perturbed(self, mono: tuple, delta=1) -> "TimesSeries":
        return TimesSeries(self.poly + Poly.monomial(mono, delta), self.max_weight, self.eps_order)

    def terms_up_to(self, weight: int) -> Poly:
        return self.poly.filter(lambda mono: mono_weight(mono) <= weight)


def _low(poly: Poly, weight: int) -> Poly:
    return poly.filter(lambda mono: mono_weight(mono) <= weight)


def kp_residuals(F: TimesSeries, check_weight: int | None = None) -> tuple[Poly, Poly]:
    """Left minus right of

        F_22 = -1/2 F_11^2 + F_31 - 1/12 F_1111
        F_32 = -F_11 F_21 + F_41 - 1/6 F_2111

    restricted to the weights where the truncation of F leaves them exact
    (max_weight - 4 and max_weight - 5), further capped at check_weight.
    """
    w1 = F.max_weight - 4
    w2 = F.max_weight - 5
    if check_weight is not None:
        w1, w2 = min(w1, check_weight), min(w2, check_weight)
    tr1 = Truncation(w1, {"eps": F.eps_order})
    tr2 = Truncation(w2, {"eps": F.eps_order})
    F11 = F.d(1, 1)
    r1 = (
        F.d(2, 2)
        + _low(F11, w1).mul(_low(F11, w1), tr1).scale(Fraction(1, 2))
        - F.d(3, 1)
        + F.d(1, 1, 1, 1).scale(Fraction(1, 12))
    )
    r2 = (
        F.d(3, 2)
        + _low(F11, w2).mul(_low(F.d(2, 1), w2), tr2)
        - F.d(4, 1)
        + F.d(2, 1, 1, 1).scale(Fraction(1, 6))
    )
    return _low(r1, w1), _low(r2, w2)


# ---------------------------------------------------------------------------
# Generating function along a ray of betas


@dataclass
class RaySeries:
    """coeffs[s] is the eps^s coefficient of H(beta = c eps) in raw power sums."""

    m: int
    max_degree: int
    beta_values: tuple
    coeffs: list[Poly] = field(default_factory=list)

    def as_poly(self) -> Poly:
        out = Poly()
        for s, c in enumerate(self.coeffs):
            if s == 0:
                out = out + c
            else:
                out = out + c.mul(Poly.monomial(((EPS, s),)))
        return out


def ray_operator(m: int, beta_values: Sequence, max_degree: int) -> DiffOperator:
    ops = [cj_operator(m, i, max_degree).scale(Fraction(c)) for i, c in enumerate(beta_values) if c]
    return reduce(lambda a, b: a + b, ops, DiffOperator())


def evolve_ray(m: int, max_degree: int, beta_values: Sequence, order: int) -> RaySeries:
    """exp(eps * sum_i c_i CJ_i) exp(p^(0)_1 / m), truncated at eps^order."""
    if len(beta_values) != m:
        raise ValueError(f"need {m} beta values")
    op = ray_operator(m, beta_values, max_degree)
    cur = exp_p1(m, max_degree)
    coeffs = [cur]
    for s in range(1, order + 1):
        cur = op.apply(cur).scale(Fraction(1, s))
        coeffs.append(cur)
    return RaySeries(m, max_degree, tuple(Fraction(c) for c in beta_values), coeffs)


def ray_from_genfun(H: GenFunction, beta_values: Sequence, order: int) -> RaySeries:
    """Collapse the multi-beta slices of H onto the ray beta_i = c_i eps."""
    coeffs = [Poly() for _ in range(order + 1)]
    for key, poly in H.slices.items():
        s = sum(key)
        if s > order:
            continue
        w = Fraction(1)
        for c, k in zip(beta_values, key):
            w *= Fraction(c) ** k
        if w:
            coeffs[s] = coeffs[s] + poly.scale(w)
    return RaySeries(H.m, H.max_degree, tuple(Fraction(c) for c in beta_values), coeffs)


def _scaled(poly: Poly, m: int) -> Poly:
    return Poly({mono: c * m ** mono_weight(mono) for mono, c in poly.terms.items()})


def restrict_to_family(
    H: GenFunction | RaySeries,
    alpha: int,
    beta_values: Sequence | None = None,
    order: int | None = None,
    convention: str = DEFAULT_CONVENTION,
) -> TimesSeries:
    """log of H restricted to the family u^(alpha), written in KP times.

    H is taken with the degree-n part rescaled by m^n, so that its beta = 0
    slice is exp(p^(0)_1) and the restriction starts as exp(u^(alpha)_1).
    """
    if isinstance(H, GenFunction):
        if beta_values is None:
            raise ValueError("beta values are required to collapse a multi-beta series")
        if order is None:
            order = min(H.orders)
        H = ray_from_genfun(H, beta_values, order)
    order = len(H.coeffs) - 1 if order is None else order
    m = H.m
    change = DFTChange(m)
    series = _scaled(RaySeries(m, H.max_degree, H.beta_values, H.coeffs[: order + 1]).as_poly(), m)
    restricted = change.restrict(series, alpha)
    trunc = Truncation(H.max_degree, {"eps": order})
    F = graded_log(restricted, H.max_degree, trunc)
    return TimesSeries(_to_times(F, convention), H.max_degree, order)


def _to_times(poly: Poly, convention: str) -> Poly:
    if convention not in TIME_CONVENTIONS:
        raise ValueError(f"unknown time convention {convention!r}")
    out = Poly()
    for mono, c in poly.terms.items():
        new = []
        for v, e in mono:
            if v[0] == "u":
                k = v[2]
                new.append((tvar(k), e))
                if convention == "power_sum":
                    c = c * k**e
            else:
                new.append((v, e))
        if isinstance(c, CycloNumber) and c.is_rational():
            c = c.to_rational()
        out._iadd_term(tuple(sorted(new)), c)
    return out


def restrict_to_p_family(H: RaySeries, alpha: int, convention: str = DEFAULT_CONVENTION) -> TimesSeries:
    """log of the rescaled H with every family except p^(alpha) set to zero, in KP times."""
    order = len(H.coeffs) - 1
    series = _scaled(H.as_poly(), H.m).filter(
        lambda mono: all(v[0] != "p" or v[1] == alpha for v, _ in mono)
    )
    trunc = Truncation(H.max_degree, {"eps": order})
    F = graded_log(series, H.max_degree, trunc)
    renamed = Poly(
        {
            tuple(sorted((("u", alpha, v[2]), e) if v[0] == "p" else (v, e) for v, e in mono)): c
            for mono, c in F.terms.items()
        }
    )
    return TimesSeries(_to_times(renamed, convention), H.max_degree, order)


def p_family_check(m: int, alpha: int, beta_values: Sequence, order: int = 3, degree: int = 6) -> CheckReport:
    """KP residuals for H restricted to a single raw family p^(alpha)."""
    H = evolve_ray(m, degree + 5, beta_values, order)
    r1, r2 = kp_residuals(restrict_to_p_family(H, alpha), degree)
    rep = CheckReport(
        f"KP residuals in p-family m={m} family={alpha} betas={list(map(str, beta_values))} "
        f"eps-order={order} weight<={degree}",
        r1.is_zero() and r2.is_zero(),
        checked=2,
    )
    if r1:
        rep.failures.append(f"first equation: {len(r1)} nonzero terms")
    if r2:
        rep.failures.append(f"second equation: {len(r2)} nonzero terms")
    return rep


def kp_check(
    m: int,
    alpha: int,
    beta_values: Sequence,
    order: int = 3,
    degree: int = 8,
    convention: str = DEFAULT_CONVENTION,
    perturb: bool = False,
) -> CheckReport:
    """Both residuals vanish up to time weight `degree` (F is computed to weight degree + 5)."""
    H = evolve_ray(m, degree + 5, beta_values, order)
    F = restrict_to_family(H, alpha, order=order, convention=convention)
    if perturb:
        F = F.perturbed(((tvar(2), 2),))
    r1, r2 = kp_residuals(F, degree)
    tag = " perturbed" if perturb else ""
    rep = CheckReport(
        f"KP residuals m={m} family={alpha} betas={list(map(str, beta_values))} "
        f"eps-order={order} weight<={degree} ({convention}){tag}",
        r1.is_zero() and r2.is_zero(),
        checked=2,
    )
    if r1:
        rep.failures.append(f"first equation: {len(r1)} nonzero terms")
    if r2:
        rep.failures.append(f"second equation: {len(r2)} nonzero terms")
    return rep
