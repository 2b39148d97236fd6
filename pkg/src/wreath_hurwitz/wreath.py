"""The group G(m,1,n) = Z/mZ wr S_n, its reflections and conjugacy classes.

Elements are pairs [u; g] with u a permutation of {1..n} and g a vector of
residues mod m.  The product is

    [u; g] . [v; b] = [u v; v(g) + b],   v(g) = (g_{v(1)}, ..., g_{v(n)}),

where u v means "apply v first".  Point labels are one-based throughout.
The embedding into S_{mn} sends the point j + k n (1 <= j <= n,
0 <= k < m) to sigma(j) + (k + g_j) n, which turns the product above into
ordinary composition of permutations.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cache
from math import factorial, prod
from typing import Iterator, Sequence

from .partitions import ColoredPartition, colored_from_parts, gen_colored_partitions, z_constant


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed its configured budget."""


DEFAULT_BUDGET = 10**8


def perm_cycles(images: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycle decomposition of a one-based image table, fixed points included."""
    n = len(images)
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = images[x - 1]
        out.append(tuple(cyc))
    return out


def cycle_notation(images: Sequence[int]) -> str:
    cycles = [c for c in perm_cycles(images) if len(c) > 1]
    if not cycles:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def perm_from_cycles(n: int, cycles: Sequence[Sequence[int]]) -> tuple[int, ...]:
    images = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            images[a - 1] = b
    if sorted(images) != list(range(1, n + 1)):
        raise ValueError("cycles do not describe a permutation")
    return tuple(images)


@dataclass(frozen=True)
class WreathElement:
    m: int
    perm: tuple[int, ...]
    colors: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(self.perm)
        colors = tuple(c % self.m for c in self.colors)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
        if len(colors) != len(perm):
            raise ValueError("colors and perm must have the same length")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "colors", colors)

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, m: int, n: int) -> "WreathElement":
        return cls(m, tuple(range(1, n + 1)), (0,) * n)

    @classmethod
    def from_cycles(cls, m: int, n: int, cycles, colors=None) -> "WreathElement":
        return cls(m, perm_from_cycles(n, cycles), tuple(colors) if colors else (0,) * n)

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("cannot multiply elements of different groups")
        u, g = self.perm, self.colors
        v, b = other.perm, other.colors
        m = self.m
        return WreathElement(
            m,
            tuple(u[v[j] - 1] for j in range(self.n)),
            tuple((g[v[j] - 1] + b[j]) % m for j in range(self.n)),
        )

    def inverse(self) -> "WreathElement":
        n, m = self.n, self.m
        inv = [0] * n
        for j, uj in enumerate(self.perm):
            inv[uj - 1] = j + 1
        # [u;g]^{-1} = [u^{-1}; h] with u^{-1}(g) + h = 0, i.e. h_j = -g_{u^{-1}(j)}
        return WreathElement(m, tuple(inv), tuple((-self.colors[inv[j] - 1]) % m for j in range(n)))

    def __pow__(self, k: int) -> "WreathElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = WreathElement.identity(self.m, self.n)
        for _ in range(k):
            out = out * self
        return out

    def conjugate_by(self, g: "WreathElement") -> "WreathElement":
        """g x g^{-1}."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return self.perm == tuple(range(1, self.n + 1)) and not any(self.colors)

    def to_json(self) -> dict:
        return {"perm": list(self.perm), "colors": list(self.colors)}

    @classmethod
    def from_json(cls, m: int, data: dict) -> "WreathElement":
        return cls(m, tuple(data["perm"]), tuple(data["colors"]))

    def __str__(self) -> str:
        return f"[{cycle_notation(self.perm)}; {','.join(map(str, self.colors))}]"


def left_multiply(rho: WreathElement, x: WreathElement) -> WreathElement:
    return rho * x


def right_multiply(x: WreathElement, rho: WreathElement) -> WreathElement:
    return x * rho


@dataclass(frozen=True)
class BigPermutation:
    """A permutation of {1, ..., N} stored as its image table."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a bijection")
        object.__setattr__(self, "images", images)

    @property
    def N(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "BigPermutation") -> "BigPermutation":
        """Composition self o other (apply other first)."""
        return BigPermutation(tuple(self.images[y - 1] for y in other.images))

    def inverse(self) -> "BigPermutation":
        inv = [0] * self.N
        for i, y in enumerate(self.images):
            inv[y - 1] = i + 1
        return BigPermutation(tuple(inv))

    def commutes_with(self, other: "BigPermutation") -> bool:
        a, b = self.images, other.images
        return all(a[y - 1] == b[x - 1] for x, y in zip(a, b))

    def cycles(self) -> list[tuple[int, ...]]:
        return perm_cycles(self.images)

    def __str__(self) -> str:
        return cycle_notation(self.images)


def _point(j: int, k: int, n: int) -> int:
    """The label of fiber j (1-based) at level k (mod m) in {1..mn}."""
    return j + k * n


def _fiber(x: int, n: int) -> tuple[int, int]:
    return (x - 1) % n + 1, (x - 1) // n


@cache
def tau(m: int, n: int) -> BigPermutation:
    """(1 n+1 ... (m-1)n+1)(2 n+2 ...)...(n 2n ... mn): shift every fiber by one level."""
    images = []
    for x in range(1, m * n + 1):
        j, k = _fiber(x, n)
        images.append(_point(j, (k + 1) % m, n))
    return BigPermutation(tuple(images))


def embed(x: WreathElement) -> BigPermutation:
    m, n = x.m, x.n
    images = []
    for p in range(1, m * n + 1):
        j, k = _fiber(p, n)
        images.append(_point(x.perm[j - 1], (k + x.colors[j - 1]) % m, n))
    return BigPermutation(tuple(images))


def unembed(p: BigPermutation, m: int, n: int) -> WreathElement:
    """Inverse of embed on the normalizer of tau."""
    if p.N != m * n:
        raise ValueError("size mismatch")
    if not p.commutes_with(tau(m, n)):
        raise ValueError("permutation does not commute with tau")
    perm, colors = [], []
    for j in range(1, n + 1):
        tj, tk = _fiber(p(_point(j, 0, n)), n)
        perm.append(tj)
        colors.append(tk)
    return WreathElement(m, tuple(perm), tuple(colors))


def cycle_products(x: WreathElement) -> list[tuple[int, int]]:
    """(length, cycle-product mod m) for every cycle of the underlying permutation."""
    return [(len(c), sum(x.colors[i - 1] for i in c) % x.m) for c in perm_cycles(x.perm)]


def colored_type(x: WreathElement) -> ColoredPartition:
    """Conjugacy class label: cycle lengths sorted by their cycle-product."""
    return colored_from_parts(x.m, cycle_products(x))


def beta_type(p: BigPermutation, m: int, n: int) -> ColoredPartition:
    """Colored type read off the cycles of an element of S_{mn} commuting with tau.

    For a point x, let L be the first return time of p to the tau-orbit
    (fiber) of x.  Then p^L(x) = tau^alpha(x) and the cycle through x belongs
    to a beta_alpha family contributing one part L to color alpha.  Each
    family covers exactly m*L points.
    """
    t = tau(m, n)
    if p.N != m * n or not p.commutes_with(t):
        raise ValueError("permutation does not commute with tau")
    done = [False] * (m * n + 1)
    parts = []
    for x in range(1, m * n + 1):
        if done[x]:
            continue
        fiber_x, level_x = _fiber(x, n)
        y, L = p(x), 1
        while _fiber(y, n)[0] != fiber_x:
            y, L = p(y), L + 1
        alpha = (_fiber(y, n)[1] - level_x) % m
        # mark the whole family: all points in fibers visited by the orbit of x
        z = x
        for _ in range(L):
            fz = _fiber(z, n)[0]
            for k in range(m):
                done[_point(fz, k, n)] = True
            z = p(z)
        parts.append((L, alpha))
    return colored_from_parts(m, parts)


@dataclass(frozen=True)
class Reflection:
    """R(i, j, alpha) with i < j, or L(i, k) with 1 <= k < m."""

    kind: str
    i: int
    j_or_k: int
    alpha: int
    element: WreathElement

    @property
    def class_index(self) -> int:
        """0 for the class R, k for the class L^k."""
        return 0 if self.kind == "R" else self.j_or_k

    def __str__(self) -> str:
        if self.kind == "R":
            return f"R({self.i},{self.j_or_k};{self.alpha})"
        return f"L({self.i};{self.j_or_k})"


def reflection_r(m: int, n: int, i: int, j: int, alpha: int) -> WreathElement:
    colors = [0] * n
    colors[i - 1] = alpha % m
    colors[j - 1] = (-alpha) % m
    return WreathElement(m, perm_from_cycles(n, [(i, j)]), tuple(colors))


def reflection_l(m: int, n: int, i: int, k: int) -> WreathElement:
    colors = [0] * n
    colors[i - 1] = k % m
    return WreathElement(m, tuple(range(1, n + 1)), tuple(colors))


@cache
def all_reflections(m: int, n: int) -> tuple[Reflection, ...]:
    out = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for a in range(m):
            out.append(Reflection("R", i, j, a, reflection_r(m, n, i, j, a)))
    for i in range(1, n + 1):
        for k in range(1, m):
            out.append(Reflection("L", i, k, k, reflection_l(m, n, i, k)))
    return tuple(out)


@cache
def reflection_class(m: int, n: int, index: int) -> tuple[WreathElement, ...]:
    """Elements of R (index 0) or of L^index (1 <= index < m)."""
    if not 0 <= index < m:
        raise ValueError(f"class index must lie in 0..{m - 1}")
    return tuple(r.element for r in all_reflections(m, n) if r.class_index == index)


def reflection_class_type(m: int, n: int, index: int) -> ColoredPartition:
    """The colored partition labelling R (index 0) or L^index."""
    if index == 0:
        return ColoredPartition(((2,) + (1,) * (n - 2),) + ((),) * (m - 1))
    comps = [(1,) * (n - 1)] + [()] * (m - 1)
    comps[index] = (1,)
    return ColoredPartition(tuple(comps))


def group_order(m: int, n: int) -> int:
    return m**n * factorial(n)


def centralizer_order(cp: ColoredPartition) -> int:
    return prod(z_constant(c) * cp.m ** len(c) for c in cp.components)


def class_size(cp: ColoredPartition) -> int:
    """|C_lambda| = m^n n! / prod_alpha z_{lambda_alpha} m^{l(lambda_alpha)}."""
    return group_order(cp.m, cp.total) // centralizer_order(cp)


def enumerate_group(m: int, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[WreathElement]:
    if group_order(m, n) > budget:
        raise BudgetExceeded(f"|G(m,1,n)| = {group_order(m, n)} exceeds budget {budget}")
    for perm in itertools.permutations(range(1, n + 1)):
        for colors in itertools.product(range(m), repeat=n):
            yield WreathElement(m, perm, colors)


def representative(cp: ColoredPartition) -> WreathElement:
    """A canonical element of C_cp: consecutive cycles, color carried by the first point."""
    m, n = cp.m, cp.total
    images = [0] * n
    colors = [0] * n
    start = 1
    for k, a in cp.parts():
        pts = list(range(start, start + k))
        for x, y in zip(pts, pts[1:] + pts[:1]):
            images[x - 1] = y
        colors[start - 1] = a
        start += k
    return WreathElement(m, tuple(images), tuple(colors))


def random_element(m: int, n: int, rng: random.Random) -> WreathElement:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return WreathElement(m, tuple(perm), tuple(rng.randrange(m) for _ in range(n)))


def conjugacy_class(x: WreathElement, budget: int = DEFAULT_BUDGET) -> set[WreathElement]:
    """The orbit of x under conjugation, by exhaustive enumeration."""
    return {x.conjugate_by(g) for g in enumerate_group(x.m, x.n, budget)}


def normalizer_of_tau(m: int, n: int, budget: int = 10**6) -> list[BigPermutation]:
    """All permutations of S_{mn} commuting with tau, by exhaustive search."""
    N = m * n
    if factorial(N) > budget:
        raise BudgetExceeded(f"|S_{N}| = {factorial(N)} exceeds budget {budget}")
    t = tau(m, n).images
    out = []
    for images in itertools.permutations(range(1, N + 1)):
        if all(images[y - 1] == t[x - 1] for x, y in zip(images, t)):
            out.append(BigPermutation(images))
    return out


def check_class_sizes(m: int, n: int) -> bool:
    """Sum of class sizes equals the group order."""
    return sum(class_size(cp) for cp in gen_colored_partitions(m, n)) == group_order(m, n)
