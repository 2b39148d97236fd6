"""Reduction of log H (in u-variables) to classical simple Hurwitz numbers.

Classical numbers come from scanning transposition sequences in S_d, which
shares no code with the cut-and-join machinery.  With the rescaled series
(beta = 0 slice exp(p^(0)_1)) restricted to the family u^(alpha),

    log H|_alpha = sum_{g, n, k_1..k_n} (m beta_0)^r / r! * exp(d gamma_alpha)
                   * h_{g; k_1..k_n} / n! * u_{k_1} ... u_{k_n},

where d = k_1 + ... + k_n, r = 2g - 2 + n + d and
gamma_alpha = sum_{k=1}^{m-1} beta_k xi^(k alpha).  Here h_{g; k} counts
connected covers with labelled preimages of infinity: it equals
prod_i (multiplicity of i in k)! times the connected number h^c(d, mu, r)
of the unordered profile mu, so that the sum over ordered tuples with 1/n!
reproduces sum_mu h^c(d, mu, r) p_mu.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import factorial, prod
from typing import Sequence

from .cutjoin import DFTChange, beta, evolve
from .cyclo import xi_pow
from .partitions import Partition, gen_partitions, make_partition, multiplicities
from .polyring import (
    Poly,
    Truncation,
    graded_exp,
    graded_log,
    mono_from_vars,
    mono_weight,
    scalar_exp,
)
from .report import CheckReport
from .wreath import DEFAULT_BUDGET, BudgetExceeded, perm_cycles

Perm = tuple[int, ...]


# ---------------------------------------------------------------------------
# Classical oracle


@cache
def transpositions(d: int) -> tuple[Perm, ...]:
    out = []
    for a in range(d):
        for b in range(a + 1, d):
            img = list(range(d))
            img[a], img[b] = b, a
            out.append(tuple(img))
    return tuple(out)


def _compose(x: Perm, y: Perm) -> Perm:
    # product x*y acting on the right: first x then y
    return tuple(y[i] for i in x)


def cycle_type(p: Perm) -> Partition:
    return make_partition(len(c) for c in perm_cycles([i + 1 for i in p]))


def _connected(d: int, seq: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in seq:
        parent[find(a)] = find(b)
    return len({find(x) for x in range(d)}) == 1


@cache
def _scan(d: int, r: int, connected: bool) -> Counter:
    trans = transpositions(d)
    if len(trans) ** r * max(r, 1) > DEFAULT_BUDGET:
        raise BudgetExceeded(f"S_{d} scan with {r} transpositions exceeds budget")
    pairs = [tuple(i for i in range(d) if t[i] != i) for t in trans]
    counts: Counter = Counter()
    ident = tuple(range(d))

    def walk(depth, acc, used):
        if depth == r:
            if not connected or _connected(d, used):
                counts[cycle_type(acc)] += 1
            return
        for t, pr in zip(trans, pairs):
            walk(depth + 1, _compose(acc, t), used + [pr])

    walk(0, ident, [])
    return counts


def classical_bruteforce(d: int, lam: Sequence[int], r: int) -> Fraction:
    """(1/d!) #{sequences of r transpositions in S_d whose product has cycle type lam}."""
    lam = make_partition(lam)
    if sum(lam) != d:
        raise ValueError(f"{lam} is not a partition of {d}")
    if d == 0:
        return Fraction(1 if r == 0 else 0)
    return Fraction(_scan(d, r, False).get(lam, 0), factorial(d))


def classical_connected_bruteforce(d: int, lam: Sequence[int], r: int) -> Fraction:
    """Same count restricted to sequences generating a transitive subgroup."""
    lam = make_partition(lam)
    if d == 1:
        return Fraction(1 if r == 0 and lam == (1,) else 0)
    return Fraction(_scan(d, r, True).get(lam, 0), factorial(d))


def genus(d: int, lam: Partition, r: int) -> Fraction:
    """g from r = 2g - 2 + n + d, n = number of parts; may be negative or half-integral."""
    return Fraction(r + 2 - len(lam) - d, 2)


def _pmono(lam: Partition, family: str = "p", alpha: int = 0):
    return mono_from_vars((family, alpha, k) for k in lam)


@dataclass
class ClassicalHurwitz:
    max_degree: int
    max_r: int
    disconnected: dict[tuple[int, Partition, int], Fraction] = field(default_factory=dict)
    connected: dict[tuple[int, Partition, int], Fraction] = field(default_factory=dict)

    def generating_series(self, which: str = "disconnected") -> Poly:
        """sum h(d, mu, r) beta^r / r! p_mu, with a constant term 1 for the disconnected side."""
        table = self.disconnected if which == "disconnected" else self.connected
        out = Poly.const(1) if which == "disconnected" else Poly()
        for (d, lam, r), v in table.items():
            mono = tuple(sorted(_pmono(lam) + (((beta(0), r),) if r else ())))
            out._iadd_term(mono, v / factorial(r))
        return out

    def labelled(self, ks: Sequence[int], r: int) -> Fraction:
        """h_{g; k_1..k_n} for an ordered tuple: multiplicity factorials times h^c."""
        lam = make_partition(ks)
        mult = prod(factorial(c) for c in multiplicities(lam).values())
        return mult * self.connected.get((sum(ks), lam, r), Fraction(0))


def classical_table(max_degree: int, max_r: int) -> ClassicalHurwitz:
    """Disconnected numbers by scanning; connected ones by the formal logarithm."""
    out = ClassicalHurwitz(max_degree, max_r)
    for d in range(1, max_degree + 1):
        for r in range(max_r + 1):
            for lam in gen_partitions(d):
                v = classical_bruteforce(d, lam, r)
                if v:
                    out.disconnected[(d, lam, r)] = v
    trunc = Truncation(max_degree, {0: max_r})
    log = graded_log(out.generating_series(), max_degree, trunc)
    for mono, c in log.terms.items():
        r = 0
        parts = []
        for v, e in mono:
            if v[0] == "b":
                r = e
            else:
                parts.extend([v[2]] * e)
        lam = make_partition(parts)
        out.connected[(sum(lam), lam, r)] = Fraction(c) * factorial(r)
    return out


# ---------------------------------------------------------------------------
# Reduction checks


def gamma(m: int, alpha: int) -> Poly:
    """sum_{k=1}^{m-1} beta_k xi^(k alpha)."""
    return Poly({((beta(k), 1),): xi_pow(m, k * alpha) for k in range(1, m)})


def _trunc(max_degree: int, orders: Sequence[int]) -> Truncation:
    return Truncation(max_degree, {i: o for i, o in enumerate(orders)})


def _scaled_series(m: int, max_degree: int, orders: Sequence[int]) -> Poly:
    return evolve(m, max_degree, orders).scaled().as_poly()


def restricted_log(m: int, max_degree: int, orders: Sequence[int], alpha: int) -> Poly:
    """log of the rescaled H restricted to u^(alpha), from the cut-and-join evolution."""
    H = _scaled_series(m, max_degree, orders)
    restricted = DFTChange(m).restrict(H, alpha)
    return graded_log(restricted, max_degree, _trunc(max_degree, orders))


def reassembled_log(
    m: int, max_degree: int, orders: Sequence[int], alpha: int, classical: ClassicalHurwitz | None = None
) -> Poly:
    """The right-hand side of the reduction, built from classical connected numbers."""
    if classical is None:
        classical = classical_table(max_degree, orders[0])
    trunc = _trunc(max_degree, orders)
    g_alpha = gamma(m, alpha)
    out = Poly()
    weights = {}
    for d in range(1, max_degree + 1):
        weights[d] = scalar_exp(g_alpha.scale(d), sum(orders[1:]), trunc)
    for n in range(1, max_degree + 1):
        for ks in itertools.product(range(1, max_degree + 1), repeat=n):
            d = sum(ks)
            if d > max_degree:
                continue
            for r in range(orders[0] + 1):
                h = classical.labelled(ks, r)
                if not h:
                    continue
                coef = Fraction(m**r, factorial(r)) * h / factorial(n)
                mono = tuple(
                    sorted(mono_from_vars(("u", alpha, k) for k in ks) + (((beta(0), r),) if r else ()))
                )
                out = out + weights[d].mul(Poly.monomial(mono, coef), trunc)
    return out


def reduction_check(m: int, max_degree: int, orders: Sequence[int]) -> CheckReport:
    """log H|_alpha equals the classical reassembly, coefficient by coefficient, for every alpha."""
    orders = tuple(orders)
    rep = CheckReport(f"reduction to classical numbers m={m} N={max_degree} orders={list(orders)}", True)
    classical = classical_table(max_degree, orders[0])
    rows = []
    for alpha in range(m):
        lhs = restricted_log(m, max_degree, orders, alpha)
        rhs = reassembled_log(m, max_degree, orders, alpha, classical)
        for mono in sorted(set(lhs.terms) | set(rhs.terms)):
            a, b = lhs.coefficient(mono), rhs.coefficient(mono)
            ok = a == b
            rep.checked += 1
            rows.append({"alpha": alpha, "monomial": str(mono), "lhs": str(a), "rhs": str(b), "pass": ok})
            if not ok:
                rep.passed = False
                rep.failures.append((alpha, mono, str(a), str(b)))
    rep.details["rows"] = len(rows)
    return rep


def exp_log_check(m: int, max_degree: int, orders: Sequence[int]) -> CheckReport:
    """exp of the reassembled connected series equals the restricted H."""
    rep = CheckReport(f"exp/log consistency m={m} N={max_degree}", True)
    trunc = _trunc(max_degree, orders)
    H = _scaled_series(m, max_degree, orders)
    for alpha in range(m):
        rep.checked += 1
        lhs = DFTChange(m).restrict(H, alpha)
        rhs = graded_exp(reassembled_log(m, max_degree, orders, alpha), max_degree, trunc)
        if lhs != rhs:
            rep.passed = False
            rep.failures.append(alpha)
    return rep


def family_decoupling_check(m: int, max_degree: int, orders: Sequence[int]) -> CheckReport:
    """log H written in all u-families has no monomial mixing two families."""
    trunc = _trunc(max_degree, orders)
    H = DFTChange(m).to_u(_scaled_series(m, max_degree, orders), trunc)
    log = graded_log(H, max_degree, trunc)
    rep = CheckReport(f"family decoupling m={m} N={max_degree}", True, checked=len(log))
    for mono in log.terms:
        fams = {v[1] for v, _ in mono if v[0] == "u"}
        if len(fams) > 1:
            rep.passed = False
            rep.failures.append(mono)
    return rep


def beta_k_scaling_check(m: int, max_degree: int, orders: Sequence[int]) -> CheckReport:
    """The beta_k enter log H|_alpha only through u_k -> exp(k gamma_alpha) u_k."""
    rep = CheckReport(f"beta_k enter through Euler weights m={m} N={max_degree}", True)
    trunc = _trunc(max_degree, orders)
    for alpha in range(m):
        rep.checked += 1
        full = restricted_log(m, max_degree, orders, alpha)
        base = full.filter(lambda mono: all(v[0] != "b" or v[1] == 0 for v, _ in mono))
        images = {
            ("u", alpha, k): scalar_exp(gamma(m, alpha).scale(k), sum(orders[1:]), trunc).mul(
                Poly.var(("u", alpha, k)), trunc
            )
            for k in range(1, max_degree + 1)
        }
        if base.substitute(images, trunc) != full:
            rep.passed = False
            rep.failures.append(alpha)
    return rep


def euler_weight_check(m: int, max_degree: int, orders: Sequence[int]) -> CheckReport:
    """exp(sum_k beta_k CJ_k) exp(p^(0)_1) == prod_alpha exp(exp(gamma_alpha) u^(alpha)_1)."""
    orders = tuple(orders)
    if len(orders) != m - 1:
        raise ValueError(f"need {m - 1} orders for beta_1..beta_{m - 1}")
    full_orders = (0,) + orders
    trunc = _trunc(max_degree, full_orders)
    lhs = _scaled_series(m, max_degree, full_orders)
    exponent = Poly()
    for alpha in range(m):
        w = scalar_exp(gamma(m, alpha), sum(orders), trunc)
        exponent = exponent + w.mul(Poly.var(("u", alpha, 1)), trunc)
    rhs_u = graded_exp(exponent, max_degree, trunc)
    rhs = DFTChange(m).to_p(rhs_u, trunc)
    rep = CheckReport(f"Euler-field exponential m={m} N={max_degree} orders={list(orders)}", lhs == rhs, 1)
    if not rep.passed:
        rep.failures.append("sides differ")
    return rep
