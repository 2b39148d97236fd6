"""Schur polynomials in power sums, the colored Schur eigenbasis and the closed form of H.

The eigenvector attached to lambda-bar is prod_alpha s_{lambda_alpha}(u^(alpha))
with u^(nu)_j = (1/m) sum_b xi^(-nu b) p^(b)_j, i.e. the inverse DFT images.
On it CJ_k acts by c_k = sum_alpha xi^(k alpha) |lambda_alpha| and CJ_0 by

    (m/2) sum_alpha sum_i lambda_{alpha,i} (lambda_{alpha,i} - 2i + 1),

which is half of the commonly quoted expression m sum sum lambda(lambda - 2i + 1).
Both values are exposed: ``EigenData.c0`` is the quoted expression and
``EigenData.c0_operator`` the actual eigenvalue of CJ_0 as defined in
:mod:`wreath_hurwitz.cutjoin`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial, prod
from typing import Sequence

from .cutjoin import DFTChange, cj_operator
from .cyclo import CycloNumber, xi_pow
from .enumeration import HurwitzTable, profiles_in_box
from .partitions import (
    ColoredPartition,
    Partition,
    conjugate,
    gen_colored_partitions,
    gen_partitions,
    z_constant,
)
from .polyring import Poly, mono_from_vars, p_monomial
from .report import CheckReport

SCHUR_BUDGET = 10


def _pvars(mu: Partition, family: str, alpha: int):
    return mono_from_vars((family, alpha, k) for k in mu)


@cache
def _complete(n: int, sign: int) -> Poly:
    """h_n (sign=+1) or e_n (sign=-1) in power sums of the family (p, 0)."""
    out = {}
    for mu in gen_partitions(n):
        c = Fraction(1, z_constant(mu))
        if sign < 0 and (n - len(mu)) % 2:
            c = -c
        out[_pvars(mu, "p", 0)] = c
    return Poly(out)


def _det(entries: list[list[Poly]]) -> Poly:
    """Determinant by cofactor expansion along the first row (matrices here are tiny)."""
    size = len(entries)
    if size == 0:
        return Poly.const(1)
    if size == 1:
        return entries[0][0]
    out = Poly()
    for j in range(size):
        if not entries[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in entries[1:]]
        term = entries[0][j] * _det(minor)
        out = out - term if j % 2 else out + term
    return out


@cache
def _schur_p0(lam: Partition) -> Poly:
    # Jacobi-Trudi in h for short partitions, the dual form in e otherwise
    conj = conjugate(lam)
    rows, sign = (lam, 1) if len(lam) <= len(conj) else (conj, -1)
    size = len(rows)

    def entry(i, j):
        k = rows[i] - i + j
        if k < 0:
            return Poly()
        return _complete(k, sign)

    return _det([[entry(i, j) for j in range(size)] for i in range(size)])


def schur_in_powersums(lam: Sequence[int], family: str = "p", alpha: int = 0) -> Poly:
    """s_lambda as a polynomial in the power sums (family, alpha, k)."""
    lam = tuple(lam)
    if sum(lam) > SCHUR_BUDGET:
        raise ValueError(f"|lambda| = {sum(lam)} exceeds the Schur budget {SCHUR_BUDGET}")
    base = _schur_p0(lam)
    if (family, alpha) == ("p", 0):
        return base
    return Poly(
        {tuple(((family, alpha, v[2]), e) for v, e in mono): c for mono, c in base.terms.items()}
    )


def schur_at_unit(lam: Sequence[int]) -> Fraction:
    """s_lambda(1, 0, 0, ...): substitute p_1 = 1 and p_k = 0 for k >= 2."""
    n = sum(lam)
    return Fraction(_schur_p0(tuple(lam)).coefficient(_pvars((1,) * n, "p", 0) if n else ()))


def colored_schur_at_unit(cp: ColoredPartition) -> Fraction:
    return prod((schur_at_unit(c) for c in cp.components), start=Fraction(1))


def colored_schur_u(cp: ColoredPartition) -> Poly:
    """prod_alpha s_{lambda_alpha}(u^(alpha))."""
    out = Poly.const(1)
    for a, comp in enumerate(cp.components):
        if comp:
            out = out * schur_in_powersums(comp, "u", a)
    return out


@cache
def colored_schur(cp: ColoredPartition, sign: int = -1) -> Poly:
    """s_lambda-bar(P^(0), ..., P^(m-1)) in raw p-variables.

    sign=-1 uses P^(nu)_j = (1/m) sum_b xi^(-nu b) p^(b)_j (the eigenvector
    convention); sign=+1 is the alternative with xi^(+nu b).
    """
    return DFTChange(cp.m).to_p(colored_schur_u(cp), sign=sign)


# ---------------------------------------------------------------------------
# Eigenvalues


def _content_sum(lam: Partition) -> int:
    """sum_i lambda_i (lambda_i - 2i + 1) with 1-based rows."""
    return sum(x * (x - 2 * i + 1) for i, x in enumerate(lam, start=1))


@dataclass(frozen=True)
class EigenData:
    cp: ColoredPartition
    c0: Fraction
    ck: tuple[CycloNumber, ...]

    @property
    def c0_operator(self) -> Fraction:
        """The eigenvalue of CJ_0 itself: half of ``c0``."""
        return self.c0 / 2

    def eigenvalue(self, index: int, corrected: bool = True):
        if index == 0:
            return self.c0_operator if corrected else self.c0
        return self.ck[index - 1]


def eigen(cp: ColoredPartition) -> EigenData:
    m = cp.m
    c0 = Fraction(m * sum(_content_sum(c) for c in cp.components))
    ck = []
    for k in range(1, m):
        val = CycloNumber(m, ())
        for a, comp in enumerate(cp.components):
            val = val + xi_pow(m, k * a) * sum(comp)
        ck.append(val)
    return EigenData(cp, c0, tuple(ck))


def verify_eigenvector(cp: ColoredPartition, corrected: bool = False, sign: int = -1) -> CheckReport:
    """Check CJ_i s = c_i s for every i, with the quoted c0 or the corrected one."""
    m, n = cp.m, cp.total
    label = "corrected c0" if corrected else "stated c0"
    rep = CheckReport(f"eigenvector {cp} ({label}, sign {sign:+d})", True)
    s = colored_schur(cp, sign)
    data = eigen(cp)
    for i in range(m):
        rep.checked += 1
        lhs = cj_operator(m, i, max(n, 1)).apply(s)
        rhs = s.scale(data.eigenvalue(i, corrected))
        if lhs != rhs:
            rep.passed = False
            rep.failures.append(f"CJ_{i}")
    return rep


def verify_eigenbasis(m: int, n: int, corrected: bool = False, sign: int = -1) -> CheckReport:
    rep = CheckReport(f"eigenbasis m={m} n={n} ({'corrected' if corrected else 'stated'} c0)", True)
    for cp in gen_colored_partitions(m, n):
        r = verify_eigenvector(cp, corrected, sign)
        rep.checked += r.checked
        if not r.passed:
            rep.passed = False
            rep.failures.extend(f"{cp}: {f}" for f in r.failures)
    return rep


def cauchy_check(m: int, n: int) -> CheckReport:
    """sum_lambda-bar s(1,0,..) s(P) equals (p^(0)_1)^n / n!."""
    rep = CheckReport(f"Cauchy identity m={m} n={n}", True, checked=1)
    total = Poly()
    for cp in gen_colored_partitions(m, n):
        total = total + colored_schur(cp).scale(colored_schur_at_unit(cp))
    target = Poly.monomial(((("p", 0, 1), n),) if n else (), Fraction(1, factorial(n)))
    if total != target:
        rep.passed = False
        rep.failures.append("sum differs from p1^n/n!")
    return rep


# ---------------------------------------------------------------------------
# Closed form of the generating function


def closed_form_H(m: int, max_degree: int, orders: Sequence[int], min_degree: int = 1) -> HurwitzTable:
    """Hurwitz numbers read off from

        sum_lambda-bar exp(beta_0 c0 + sum_k beta_k c_k) s(1,0,..) s(P)

    (eigenvalues of the operators, i.e. ``c0_operator``).  That series has
    beta = 0 slice exp(p^(0)_1); dividing its degree-n part by m^n gives H in
    raw power sums, and multiplying by prod n_i! gives h.
    """
    if len(orders) != m:
        raise ValueError(f"need {m} beta orders")
    table = HurwitzTable(m, "schur")
    profiles = profiles_in_box(orders)
    for n in range(min_degree, max_degree + 1):
        scale = Fraction(1, m**n)
        acc: dict[tuple, dict] = {p: {} for p in profiles}
        for lam in gen_colored_partitions(m, n):
            data = eigen(lam)
            weight = colored_schur_at_unit(lam)
            if not weight:
                continue
            vals = [data.eigenvalue(i) for i in range(m)]
            poly = colored_schur(lam)
            for profile in profiles:
                factor = prod((vals[i] ** k for i, k in enumerate(profile) if k), start=Fraction(1))
                if isinstance(factor, CycloNumber) and factor.is_zero():
                    continue
                if not factor:
                    continue
                row = acc[profile]
                for mono, c in poly.terms.items():
                    row[mono] = row.get(mono, 0) + c * factor * weight
        for profile in profiles:
            row = acc[profile]
            for mu in gen_colored_partitions(m, n):
                c = row.get(p_monomial(mu), 0)
                table.set(profile, mu, _as_rational(c) * scale)
    return table


def _as_rational(c) -> Fraction:
    if isinstance(c, CycloNumber):
        return c.to_rational()
    return Fraction(c)


def eigen_table(m: int, n: int) -> list[dict]:
    from .serialize import scalar_to_json

    rows = []
    for cp in gen_colored_partitions(m, n):
        d = eigen(cp)
        rows.append(
            {
                "colored_partition": str(cp),
                "c0_stated": scalar_to_json(d.c0),
                "c0_operator": scalar_to_json(d.c0_operator),
                "ck": [scalar_to_json(x) for x in d.ck],
            }
        )
    return rows
