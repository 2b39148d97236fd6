"""Exact arithmetic in Q and in the cyclotomic field Q(xi), xi = exp(2*pi*i/m).

Rationals are plain :class:`fractions.Fraction`.  A :class:`CycloNumber`
stores the residue of a polynomial in xi modulo the m-th cyclotomic
polynomial, so equality and zero testing are coefficientwise and exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import gcd
from typing import Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction, "CycloNumber"]


def _poly_divmod_exact(num: list[int], den: list[int]) -> list[int]:
    """Quotient of integer polynomials (low degree first) when den is monic and divides num."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


@cache
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first.

    Uses x^m - 1 = prod_{d | m} Phi_d and divides out the proper divisors.
    """
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divmod_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@cache
def _power_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced coefficient vectors of x^0 .. x^(2*phi - 2) modulo Phi_m."""
    phi_poly = cyclotomic_poly(m)
    deg = len(phi_poly) - 1
    table = []
    vec = [Fraction(0)] * deg
    vec[0] = Fraction(1)
    for _ in range(max(2 * deg - 1, m)):
        table.append(tuple(vec))
        # multiply by x, then reduce the overflow with the monic relation
        top = vec[-1]
        vec = [Fraction(0)] + vec[:-1]
        if top:
            for j in range(deg):
                vec[j] -= top * phi_poly[j]
    return tuple(table)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class CycloNumber:
    """Element of Q(xi_m) as a coefficient vector of length phi(m) in powers of xi."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs):
        deg = len(cyclotomic_poly(m)) - 1
        coeffs = tuple(_as_fraction(c) for c in coeffs)
        if len(coeffs) > deg:
            coeffs = _reduce(m, coeffs)
        elif len(coeffs) < deg:
            coeffs = coeffs + (Fraction(0),) * (deg - len(coeffs))
        self.m = m
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, m: int, q) -> "CycloNumber":
        return cls(m, (q,))

    # -- coercion helpers -------------------------------------------------
    def _lift(self, other) -> "CycloNumber | None":
        if isinstance(other, CycloNumber):
            if other.m == self.m:
                return other
            return _common_field(self, other)[1]
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.m, (other,))
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, CycloNumber) and other.m != self.m:
            a, b = _common_field(self, other)
            return a + b
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CycloNumber(self.m, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other) if not isinstance(other, CycloNumber) else other
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CycloNumber(self.m, ())
            return CycloNumber(self.m, tuple(a * other for a in self.coeffs))
        if not isinstance(other, CycloNumber):
            return NotImplemented
        if other.m != self.m:
            a, b = _common_field(self, other)
            return a * b
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            return CycloNumber(self.m, (a[0] * b[0],))
        raw = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        raw[i + j] += x * y
        return CycloNumber(self.m, _reduce(self.m, raw))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        r0 = [Fraction(c) for c in cyclotomic_poly(self.m)]
        r1 = _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_poly_sub(s0, _poly_mul(q, s1)))
        # r0 is a nonzero constant now
        c = r0[0]
        return CycloNumber(self.m, _reduce(self.m, [x / c for x in s0]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.m, tuple(a / other for a in self.coeffs))
        if isinstance(other, CycloNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber(self.m, (1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNumber):
            if other.m != self.m:
                a, b = _common_field(self, other)
                return a.coeffs == b.coeffs
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.m, self.coeffs))

    def conjugate(self) -> "CycloNumber":
        """Complex conjugation, i.e. the automorphism xi -> xi^{-1}."""
        raw = [Fraction(0)] * self.m
        for k, c in enumerate(self.coeffs):
            raw[(-k) % self.m] += c
        return CycloNumber(self.m, _reduce(self.m, raw))

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def __repr__(self) -> str:
        return f"CycloNumber(m={self.m}, {self})"


def _reduce(m: int, raw) -> tuple[Fraction, ...]:
    table = _power_table(m)
    deg = len(table[0])
    out = [Fraction(0)] * deg
    for k, c in enumerate(raw):
        if not c:
            continue
        if k < deg:
            out[k] += c
            continue
        if k >= len(table):
            k %= m
        for j, v in enumerate(table[k]):
            if v:
                out[j] += c * v
    return tuple(out)


def _trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod(a, b):
    a = _trim(list(a))
    b = _trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        for j, d in enumerate(b):
            a[i + j] -= c * d
    return q, _trim(a[: len(b) - 1] or [Fraction(0)])


def _embed(x: CycloNumber, big: int) -> CycloNumber:
    step = big // x.m
    raw = [Fraction(0)] * big
    for k, c in enumerate(x.coeffs):
        raw[k * step] += c
    return CycloNumber(big, _reduce(big, raw))


def _common_field(a: CycloNumber, b: CycloNumber):
    big = a.m * b.m // gcd(a.m, b.m)
    return _embed(a, big), _embed(b, big)


def xi_pow(m: int, a: int) -> CycloNumber:
    """Canonical form of xi^a, with xi a primitive m-th root of unity."""
    if m < 1:
        raise ValueError("conductor must be positive")
    raw = [Fraction(0)] * m
    raw[a % m] = Fraction(1)
    return CycloNumber(m, _reduce(m, raw))


def root_sum(m: int, weights: Mapping[int, object]) -> CycloNumber:
    """sum_a w_a * xi^a in canonical form; residues are taken mod m."""
    raw = [Fraction(0)] * m
    for a, w in weights.items():
        raw[a % m] += _as_fraction(w)
    return CycloNumber(m, _reduce(m, raw))


def is_zero(x) -> bool:
    if isinstance(x, CycloNumber):
        return x.is_zero()
    return x == 0


def to_rational(x) -> Fraction:
    """Rational value of `x`, raising if `x` has an irrational cyclotomic part."""
    if isinstance(x, CycloNumber):
        return x.to_rational()
    return _as_fraction(x)
