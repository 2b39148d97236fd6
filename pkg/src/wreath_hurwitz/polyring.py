"""Sparse polynomials with exact coefficients, and linear operators on them.

A variable is a small tuple: ``("p", alpha, k)`` and ``("u", alpha, k)`` are
power-sum variables of family alpha and index k (weight k), ``("t", k)`` is
a KP time (weight k) and ``("b", i)`` is the formal parameter beta_i
(weight 0).  A monomial is a sorted tuple of ``(variable, exponent)`` pairs.
Coefficients are ints, Fractions or CycloNumbers; zero coefficients are
never stored.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Mapping, Sequence

from .cyclo import CycloNumber
from .partitions import ColoredPartition, colored_from_parts, gen_colored_partitions, index_of

Var = tuple
Monomial = tuple  # tuple[tuple[Var, int], ...]
ONE: Monomial = ()


def var_weight(v: Var) -> int:
    if v[0] == "b":
        return 0
    return v[-1]


def mono_weight(mono: Monomial) -> int:
    return sum(var_weight(v) * e for v, e in mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_from_vars(vs: Iterable[Var]) -> Monomial:
    d: dict[Var, int] = {}
    for v in vs:
        d[v] = d.get(v, 0) + 1
    return tuple(sorted(d.items()))


def mono_exponent(mono: Monomial, v: Var) -> int:
    for w, e in mono:
        if w == v:
            return e
    return 0


def p_monomial(cp: ColoredPartition, family: str = "p") -> Monomial:
    """p_lambda-bar = prod_alpha prod_parts p^{(alpha)}_k as a monomial key."""
    return mono_from_vars((family, a, k) for k, a in cp.parts())


def monomial_to_cp(mono: Monomial, m: int, family: str = "p") -> ColoredPartition:
    parts = []
    for v, e in mono:
        if v[0] != family:
            raise ValueError(f"monomial {mono} has a variable outside family {family!r}")
        parts.extend([(v[2], v[1])] * e)
    return colored_from_parts(m, parts)


def split_monomial(mono: Monomial, families: Sequence[str]) -> tuple[Monomial, Monomial]:
    """Split a monomial into (part in the given families, remaining part)."""
    a = tuple((v, e) for v, e in mono if v[0] in families)
    b = tuple((v, e) for v, e in mono if v[0] not in families)
    return a, b


class Truncation:
    """Which monomials survive a product: weight <= max_weight, beta_i order <= max_beta[i]."""

    def __init__(self, max_weight: int | None = None, max_beta: Mapping[int, int] | None = None):
        self.max_weight = max_weight
        self.max_beta = dict(max_beta or {})

    def keeps(self, mono: Monomial) -> bool:
        if self.max_weight is not None and mono_weight(mono) > self.max_weight:
            return False
        if self.max_beta:
            for v, e in mono:
                if v[0] == "b" and e > self.max_beta.get(v[1], e):
                    return False
        return True


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict[Monomial, object] = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    self.terms[mono] = c

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({ONE: c})

    @classmethod
    def var(cls, v: Var, c=1) -> "Poly":
        return cls({((v, 1),): c})

    @classmethod
    def monomial(cls, mono: Monomial, c=1) -> "Poly":
        return cls({mono: c})

    @classmethod
    def from_class_vector(cls, vec: Mapping[ColoredPartition, object], family: str = "p") -> "Poly":
        return cls({p_monomial(cp, family): c for cp, c in vec.items()})

    def copy(self) -> "Poly":
        p = Poly()
        p.terms = dict(self.terms)
        return p

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coefficient(self, mono: Monomial):
        return self.terms.get(mono, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, CycloNumber)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return (self - other).is_zero()

    def is_zero(self) -> bool:
        return not any(self.terms.values())

    def _iadd_term(self, mono, c):
        old = self.terms.get(mono)
        new = c if old is None else old + c
        if new:
            self.terms[mono] = new
        elif old is not None:
            del self.terms[mono]

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        out = self.copy()
        for mono, c in other.terms.items():
            out._iadd_term(mono, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        if not c:
            return Poly()
        return Poly({mono: c * x for mono, x in self.terms.items()})

    def mul(self, other: "Poly", trunc: Truncation | None = None) -> "Poly":
        out: dict[Monomial, object] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = mono_mul(ma, mb)
                if trunc is not None and not trunc.keeps(mono):
                    continue
                c = ca * cb
                if mono in out:
                    out[mono] = out[mono] + c
                else:
                    out[mono] = c
        return Poly(out)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, trunc: Truncation) -> "Poly":
        return Poly({mono: c for mono, c in self.terms.items() if trunc.keeps(mono)})

    def partial(self, v: Var) -> "Poly":
        """Formal derivative with respect to the variable v."""
        out: dict[Monomial, object] = {}
        for mono, c in self.terms.items():
            e = mono_exponent(mono, v)
            if not e:
                continue
            new = tuple((w, f - 1) if w == v else (w, f) for w, f in mono)
            new = tuple((w, f) for w, f in new if f)
            out[new] = out.get(new, 0) + c * e
        return Poly(out)

    def map_coeffs(self, fn: Callable) -> "Poly":
        return Poly({mono: fn(c) for mono, c in self.terms.items()})

    def filter(self, keep: Callable[[Monomial], bool]) -> "Poly":
        return Poly({mono: c for mono, c in self.terms.items() if keep(mono)})

    def homogeneous_component(self, n: int) -> "Poly":
        return self.filter(lambda mono: mono_weight(mono) == n)

    def variables(self) -> set[Var]:
        return {v for mono in self.terms for v, _ in mono}

    def substitute(self, images: Mapping[Var, "Poly"], trunc: Truncation | None = None) -> "Poly":
        """Replace each variable in `images` by the given polynomial."""
        power_cache: dict[tuple[Var, int], Poly] = {}

        def power(v, e):
            key = (v, e)
            if key not in power_cache:
                power_cache[key] = images[v] if e == 1 else power(v, e - 1).mul(images[v], trunc)
            return power_cache[key]

        out = Poly()
        for mono, c in self.terms.items():
            term = Poly({tuple((v, e) for v, e in mono if v not in images): c})
            for v, e in mono:
                if v in images:
                    term = term.mul(power(v, e), trunc)
                    if not term:
                        break
            for m2, c2 in term.terms.items():
                out._iadd_term(m2, c2)
        return out

    def collect(self, families: Sequence[str]) -> dict[Monomial, "Poly"]:
        """Group terms by their part in `families`; values hold the remaining factors."""
        groups: dict[Monomial, dict] = defaultdict(dict)
        for mono, c in self.terms.items():
            a, b = split_monomial(mono, families)
            groups[a][b] = c
        return {k: Poly(v) for k, v in groups.items()}

    def to_class_vector(self, m: int, family: str = "p") -> dict[ColoredPartition, object]:
        return {monomial_to_cp(mono, m, family): c for mono, c in self.terms.items()}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{format_monomial(mono)}" for mono, c in sorted(self.terms.items()))

    __repr__ = __str__

    def to_json(self) -> list:
        from .serialize import scalar_to_json

        return [
            {"monomial": format_monomial(mono), "coefficient": scalar_to_json(c)}
            for mono, c in sorted(self.terms.items())
        ]


def format_var(v: Var) -> str:
    if v[0] in ("p", "u"):
        return f"{v[0]}{v[1]}_{v[2]}"
    if v[0] == "t":
        return f"t{v[1]}"
    if v[0] == "b":
        return f"beta{v[1]}"
    return str(v)


def format_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(format_var(v) + (f"^{e}" if e > 1 else "") for v, e in mono)


# ---------------------------------------------------------------------------
# Linear operators


def exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


class SquareMatrix:
    """Sparse square matrix; column j holds the image of basis vector j."""

    def __init__(self, dim: int, cols: Sequence[Mapping[int, object]] | None = None):
        self.dim = dim
        self.cols: list[dict[int, object]] = [
            {i: c for i, c in (cols[j].items() if cols else ()) if c} for j in range(dim)
        ]

    @classmethod
    def identity(cls, dim: int) -> "SquareMatrix":
        return cls(dim, [{j: 1} for j in range(dim)])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "SquareMatrix":
        dim = len(rows)
        return cls(dim, [{i: rows[i][j] for i in range(dim)} for j in range(dim)])

    def entry(self, i: int, j: int):
        return self.cols[j].get(i, 0)

    def to_rows(self) -> list[list[object]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def apply(self, vec: Mapping[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for j, x in vec.items():
            if not x:
                continue
            for i, a in self.cols[j].items():
                out[i] = out.get(i, 0) + a * x
        return {i: c for i, c in out.items() if c}

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        return SquareMatrix(self.dim, [self.apply(col) for col in other.cols])

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            for i, c in b.items():
                col[i] = col.get(i, 0) + c
            cols.append(col)
        return SquareMatrix(self.dim, cols)

    def scale(self, c) -> "SquareMatrix":
        return SquareMatrix(self.dim, [{i: c * x for i, x in col.items()} for col in self.cols])

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        return self + other.scale(-1)

    def is_zero(self) -> bool:
        return not any(any(col.values()) for col in self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.dim == other.dim and (self - other).is_zero()

    def commutator(self, other: "SquareMatrix") -> "SquareMatrix":
        return self @ other - other @ self

    def scalar_ratio(self, other: "SquareMatrix"):
        """The constant c with self == c * other, or None if there is none."""
        ratio = None
        for j in range(self.dim):
            keys = set(self.cols[j]) | set(other.cols[j])
            for i in keys:
                a, b = self.cols[j].get(i, 0), other.cols[j].get(i, 0)
                if not b:
                    if a:
                        return None
                    continue
                r = exact_div(a, b)
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return None
        return 0 if ratio is None else ratio


class DiffOperator:
    """A finite sum of terms  c * (product of variables) * (product of d/d variables).

    Images of monomials are memoized, so repeated application (as in the
    truncated exponentials of the generating function) is cheap.
    """

    def __init__(self, terms: Iterable[tuple[object, Sequence[Var], Sequence[Var]]] = ()):
        self.terms: list[tuple[object, Monomial, tuple[Var, ...]]] = []
        self._by_first: dict[Var, list[int]] = defaultdict(list)
        self._cache: dict[Monomial, Poly] = {}
        for c, mult, deriv in terms:
            self.add_term(c, mult, deriv)

    def add_term(self, c, mult: Sequence[Var], deriv: Sequence[Var]) -> None:
        if not c:
            return
        if not deriv:
            raise ValueError("terms without derivatives are not degree preserving here")
        self.terms.append((c, mono_from_vars(mult), tuple(sorted(deriv))))
        self._by_first[tuple(sorted(deriv))[0]].append(len(self.terms) - 1)
        self._cache.clear()

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        out = DiffOperator()
        for c, mult, deriv in self.terms + other.terms:
            out.add_term(c, [v for v, e in mult for _ in range(e)], deriv)
        return out

    def scale(self, k) -> "DiffOperator":
        out = DiffOperator()
        for c, mult, deriv in self.terms:
            out.add_term(c * k, [v for v, e in mult for _ in range(e)], deriv)
        return out

    def apply_monomial(self, mono: Monomial) -> Poly:
        hit = self._cache.get(mono)
        if hit is not None:
            return hit
        exps = dict(mono)
        out = Poly()
        for v in exps:
            for t in self._by_first.get(v, ()):
                c, mult, deriv = self.terms[t]
                coef = c
                rest = dict(exps)
                for d in deriv:
                    e = rest.get(d, 0)
                    if not e:
                        coef = 0
                        break
                    coef = coef * e
                    if e == 1:
                        del rest[d]
                    else:
                        rest[d] = e - 1
                if not coef:
                    continue
                new = mono_mul(tuple(sorted(rest.items())), mult)
                out._iadd_term(new, coef)
        self._cache[mono] = out
        return out

    def __call__(self, poly: Poly) -> Poly:
        return self.apply(poly)

    def apply(self, poly: Poly) -> Poly:
        out = Poly()
        for mono, c in poly.terms.items():
            img = self.apply_monomial(mono)
            for m2, c2 in img.terms.items():
                out._iadd_term(m2, c2 * c)
        return out

    def apply_graded(self, poly: Poly, families: Sequence[str]) -> Poly:
        """Apply to the part of each monomial in `families`, treating other variables as constants."""
        out = Poly()
        for mono, c in poly.terms.items():
            a, b = split_monomial(mono, families)
            for m2, c2 in self.apply_monomial(a).terms.items():
                out._iadd_term(mono_mul(m2, b), c2 * c)
        return out

    def matrix(self, m: int, n: int, family: str = "p") -> SquareMatrix:
        """Matrix on the basis p_lambda-bar, lambda-bar over gen_colored_partitions(m, n)."""
        basis = gen_colored_partitions(m, n)
        cols = []
        for cp in basis:
            img = self.apply_monomial(p_monomial(cp, family))
            col = {}
            for mono, c in img.terms.items():
                col[index_of(monomial_to_cp(mono, m, family))] = c
            cols.append(col)
        return SquareMatrix(len(basis), cols)


def is_degree_preserving(op: DiffOperator) -> bool:
    return all(
        mono_weight(mult) == sum(var_weight(d) for d in deriv) for _, mult, deriv in op.terms
    )


# ---------------------------------------------------------------------------
# Class vectors and the basis exchange Theta


def theta(vec: Mapping[ColoredPartition, object]) -> Poly:
    """C_lambda-bar -> p_lambda-bar; the vector must be homogeneous."""
    degrees = {cp.total for cp in vec}
    if len(degrees) > 1:
        raise ValueError("theta expects a homogeneous class vector")
    return Poly.from_class_vector(vec)


def theta_inv(poly: Poly, m: int) -> dict[ColoredPartition, object]:
    degrees = {mono_weight(mono) for mono in poly.terms}
    if len(degrees) > 1:
        raise ValueError("theta_inv expects a homogeneous polynomial")
    return poly.to_class_vector(m)


def truncated_exp_apply(op: Callable[[Poly], Poly], poly: Poly, order: int) -> list[Poly]:
    """[op^k(poly) / k!  for k = 0..order]: the coefficients of beta^k in e^{beta op} poly."""
    out = [poly]
    cur = poly
    for k in range(1, order + 1):
        cur = op(cur)
        out.append(cur.scale(Fraction(1, factorial(k))))
    return out


def series_in(param: Var, coeffs: Sequence[Poly]) -> Poly:
    """sum_k coeffs[k] * param^k."""
    out = Poly()
    for k, c in enumerate(coeffs):
        if k == 0:
            out = out + c
        else:
            out = out + c.mul(Poly.monomial(((param, k),)))
    return out


# ---------------------------------------------------------------------------
# Formal exp / log of series with constant term 1, graded by weight


def graded_components(poly: Poly, max_weight: int) -> list[Poly]:
    comps = [Poly() for _ in range(max_weight + 1)]
    for mono, c in poly.terms.items():
        w = mono_weight(mono)
        if w <= max_weight:
            comps[w]._iadd_term(mono, c)
    return comps


def graded_log(poly: Poly, max_weight: int, trunc: Truncation | None = None) -> Poly:
    """log(poly) up to weight max_weight; the weight-0 part of poly must be exactly 1.

    Uses w H_w = sum_{k=1}^{w} k F_k H_{w-k}, which is E(H) = E(F) H for the
    weight-counting derivation E.
    """
    H = graded_components(poly, max_weight)
    if H[0] != 1:
        raise ValueError("graded_log needs constant term 1")
    F = [Poly() for _ in range(max_weight + 1)]
    for w in range(1, max_weight + 1):
        acc = H[w]
        for k in range(1, w):
            if F[k] and H[w - k]:
                acc = acc - F[k].mul(H[w - k], trunc).scale(Fraction(k, w))
        F[w] = acc
    out = Poly()
    for comp in F:
        out = out + comp
    return out


def graded_exp(poly: Poly, max_weight: int, trunc: Truncation | None = None) -> Poly:
    """exp(poly) up to weight max_weight; poly must have no weight-0 part."""
    G = graded_components(poly, max_weight)
    if G[0]:
        raise ValueError("graded_exp needs a series without weight-0 terms")
    H = [Poly.const(1)] + [Poly() for _ in range(max_weight)]
    for w in range(1, max_weight + 1):
        acc = Poly()
        for k in range(1, w + 1):
            if G[k] and H[w - k]:
                acc = acc + G[k].mul(H[w - k], trunc).scale(Fraction(k, w))
        H[w] = acc
    out = Poly()
    for comp in H:
        out = out + comp
    return out


def scalar_exp(x: Poly, order: int, trunc: Truncation | None = None) -> Poly:
    """sum_{k <= order} x^k / k! for a weight-0 polynomial x (e.g. linear in the betas)."""
    out = Poly.const(1)
    term = Poly.const(1)
    for k in range(1, order + 1):
        term = term.mul(x, trunc).scale(Fraction(1, k))
        if not term:
            break
        out = out + term
    return out
