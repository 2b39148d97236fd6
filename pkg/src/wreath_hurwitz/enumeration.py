"""Ground-truth Hurwitz numbers of G(m,1,n) by counting reflection sequences.

A profile (n_0, ..., n_{m-1}) asks for n_0 reflections from the class R and
n_k from the class L^k.  The Hurwitz number stored in every table is

    h = #{(s_1, ..., s_M) : s_p in class c_p, s_1 ... s_M in C_lambda} / (m^n n!)

for one fixed prescription (c_1, ..., c_M) with the profile's class counts.
Class sums are central, so the count does not depend on which prescription
is used; the canonical one lists all R factors first, then L^1, and so on.
:func:`count_all_interleavings` gives the count over every prescription at
once, which is larger by the multinomial coefficient M! / prod n_i!.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from math import factorial, prod
from typing import Iterable, Sequence

from .partitions import ColoredPartition, colored_from_parts, gen_colored_partitions, index_of
from .polyring import SquareMatrix
from .serialize import rows_to_csv
from .wreath import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    WreathElement,
    all_reflections,
    colored_type,
    enumerate_group,
    group_order,
    reflection_class,
    representative,
)

Profile = tuple[int, ...]

ENGINES = ("enumeration", "cutjoin", "schur")


def prescription(profile: Sequence[int]) -> tuple[int, ...]:
    """Canonical class sequence for a profile: n_0 zeros, then n_1 ones, ..."""
    return tuple(i for i, c in enumerate(profile) for _ in range(c))


def profile_of(order: Sequence[int], m: int) -> Profile:
    counts = Counter(order)
    return tuple(counts.get(i, 0) for i in range(m))


def profiles_up_to(m: int, max_total: int) -> list[Profile]:
    """All profiles with n_0 + ... + n_{m-1} <= max_total."""
    return [p for p in itertools.product(range(max_total + 1), repeat=m) if sum(p) <= max_total]


def profiles_in_box(orders: Sequence[int]) -> list[Profile]:
    """All profiles with n_i <= orders[i]."""
    return list(itertools.product(*(range(o + 1) for o in orders)))


def _check(m: int, n: int, profile: Sequence[int]) -> None:
    if len(profile) != m:
        raise ValueError(f"profile {tuple(profile)} must have length m = {m}")
    if any(c < 0 for c in profile):
        raise ValueError("profile entries must be nonnegative")
    if n < 1:
        raise ValueError("n must be positive")


# ---------------------------------------------------------------------------
# Element-level brute force


def bruteforce_counts(
    m: int, n: int, order: Sequence[int], budget: int = DEFAULT_BUDGET
) -> Counter:
    """Number of reflection sequences following `order`, keyed by the class of their product."""
    classes = [reflection_class(m, n, c) for c in order]
    steps = prod(len(c) for c in classes) * max(len(order), 1)
    if steps > budget:
        raise BudgetExceeded(f"{steps} sequence steps exceed budget {budget}")
    counts: Counter = Counter()

    def walk(depth: int, acc: WreathElement) -> None:
        if depth == len(classes):
            counts[colored_type(acc)] += 1
            return
        for s in classes[depth]:
            walk(depth + 1, acc * s)

    walk(0, WreathElement.identity(m, n))
    return counts


def hurwitz_bruteforce(
    m: int,
    n: int,
    profile: Sequence[int],
    cp: ColoredPartition,
    order: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Fraction:
    _check(m, n, profile)
    if cp.total != n or cp.m != m:
        raise ValueError(f"{cp} is not an {m}-colored partition of {n}")
    if order is None:
        order = prescription(profile)
    elif profile_of(order, m) != tuple(profile):
        raise ValueError("order does not match the profile")
    counts = bruteforce_counts(m, n, order, budget)
    return Fraction(counts.get(cp, 0), group_order(m, n))


def count_all_interleavings(
    m: int, n: int, profile: Sequence[int], cp: ColoredPartition, budget: int = DEFAULT_BUDGET
) -> int:
    """#{sequences with exactly n_i factors from each class, in any positions, product in C_cp}."""
    _check(m, n, profile)
    total = 0
    for order in set(itertools.permutations(prescription(profile))):
        total += bruteforce_counts(m, n, order, budget).get(cp, 0)
    return total


def multinomial(counts: Sequence[int]) -> int:
    return factorial(sum(counts)) // prod(factorial(c) for c in counts)


# ---------------------------------------------------------------------------
# Multiplicities and class-algebra matrices


def multiplicity(
    sigma: WreathElement, mu: ColoredPartition, index: int, side: str = "right"
) -> int:
    """#{rho in class `index` : sigma rho in C_mu} (or rho sigma for side="left")."""
    count = 0
    for rho in reflection_class(sigma.m, sigma.n, index):
        prod_ = sigma * rho if side == "right" else rho * sigma
        if colored_type(prod_) == mu:
            count += 1
    return count


@cache
def multiplicity_table(m: int, n: int, index: int) -> dict[ColoredPartition, Counter]:
    """lambda -> Counter(mu -> <lambda|mu>_index), scanned from a class representative."""
    table = {}
    for lam in gen_colored_partitions(m, n):
        sigma = representative(lam)
        table[lam] = Counter(colored_type(sigma * rho) for rho in reflection_class(m, n, index))
    return table


@cache
def t_matrix(m: int, n: int, index: int) -> SquareMatrix:
    """Multiplication by the class sum T_index in the basis of normalized class sums.

    Column lambda holds the multiplicities <lambda|mu>_index.
    """
    table = multiplicity_table(m, n, index)
    basis = gen_colored_partitions(m, n)
    cols = [{index_of(mu): c for mu, c in table[lam].items()} for lam in basis]
    return SquareMatrix(len(basis), cols)


def predicted_multiplicities(lam: ColoredPartition, index: int) -> Counter:
    """<lambda|mu>_index from the cut/join/Euler counting rules, without touching the group.

    R class (index 0): cutting one part i+j of color a+c into (i, a), (j, c)
    contributes (i+j)/2 times the number of such parts for every ordered
    split; joining two distinct cycles of sizes i and j contributes m*i*j.
    L^k class: moving one part (i, a) to color a+k contributes i per cycle.
    """
    m = lam.m
    parts = lam.parts()  # (size, color) pairs, one per cycle
    out: Counter = Counter()

    def replaced(remove: list[tuple[int, int]], add: list[tuple[int, int]]) -> ColoredPartition:
        rest = list(parts)
        for p in remove:
            rest.remove(p)
        return colored_from_parts(m, rest + add)

    if index == 0:
        for size, s in set(parts):
            count = parts.count((size, s))
            for i in range(1, size):
                for a in range(m):
                    mu = replaced([(size, s)], [(i, a), (size - i, (s - a) % m)])
                    out[mu] += Fraction(size * count, 2)
        for x, y in itertools.combinations(range(len(parts)), 2):
            (i, a), (j, c) = parts[x], parts[y]
            out[replaced([(i, a), (j, c)], [(i + j, (a + c) % m)])] += m * i * j
    else:
        for i, a in parts:
            out[replaced([(i, a)], [(i, (a + index) % m)])] += i
    return Counter({mu: int(v) for mu, v in out.items() if v})


@dataclass
class ClassVector:
    """Coordinates in the basis of normalized class sums C_lambda-bar."""

    m: int
    n: int
    coeffs: dict[ColoredPartition, object] = field(default_factory=dict)

    @classmethod
    def unit(cls, m: int, n: int) -> "ClassVector":
        return cls(m, n, {ColoredPartition.identity(m, n): Fraction(1)})

    def to_indexed(self) -> dict[int, object]:
        return {index_of(cp): c for cp, c in self.coeffs.items() if c}

    @classmethod
    def from_indexed(cls, m: int, n: int, vec: dict[int, object]) -> "ClassVector":
        basis = gen_colored_partitions(m, n)
        return cls(m, n, {basis[i]: c for i, c in vec.items() if c})

    def apply(self, mat: SquareMatrix) -> "ClassVector":
        return ClassVector.from_indexed(self.m, self.n, mat.apply(self.to_indexed()))


def class_dp_vector(m: int, n: int, order: Iterable[int]) -> ClassVector:
    """T_{c_1} ... T_{c_M} applied to the unit: coefficient of C_lambda counts sequences."""
    vec = ClassVector.unit(m, n)
    for c in order:
        vec = vec.apply(t_matrix(m, n, c))
    return vec


def hurwitz_classdp(m: int, n: int, profile: Sequence[int], cp: ColoredPartition) -> Fraction:
    _check(m, n, profile)
    if cp.total != n or cp.m != m:
        raise ValueError(f"{cp} is not an {m}-colored partition of {n}")
    vec = class_dp_vector(m, n, prescription(profile))
    return Fraction(vec.coeffs.get(cp, 0)) / group_order(m, n)


# ---------------------------------------------------------------------------
# Monodromy tuples up to conjugation


def count_covers(
    m: int, n: int, profile: Sequence[int], budget: int = DEFAULT_BUDGET
) -> dict[ColoredPartition, Fraction]:
    """Weighted count sum 1/|Aut| of monodromy tuples, per class at infinity.

    A tuple (s_1, ..., s_M, s_inf) with s_1 ... s_M s_inf = 1 and s_p in the
    prescribed reflection classes is one cover; covers are identified under
    simultaneous conjugation and weighted by the inverse of the size of the
    common centralizer.  The class recorded is that of s_inf^{-1}, i.e. of
    the product s_1 ... s_M.
    """
    _check(m, n, profile)
    order = prescription(profile)
    classes = [reflection_class(m, n, c) for c in order]
    G = list(enumerate_group(m, n, budget))
    inverses = [g.inverse() for g in G]
    size = len(G)
    if prod(len(c) for c in classes) * size > budget:
        raise BudgetExceeded("monodromy tuple enumeration exceeds budget")

    seen: set[tuple] = set()
    out: dict[ColoredPartition, Fraction] = {}
    for seq in itertools.product(*classes):
        acc = WreathElement.identity(m, n)
        for s in seq:
            acc = acc * s
        tup = tuple(seq) + (acc.inverse(),)
        if tup in seen:
            continue
        orbit = {tuple(g * s * ginv for s in tup) for g, ginv in zip(G, inverses)}
        seen |= orbit
        stabilizer = size // len(orbit)
        lam = colored_type(acc)
        out[lam] = out.get(lam, Fraction(0)) + Fraction(1, stabilizer)
    return out


def covers_value(m: int, n: int, profile: Sequence[int], cp: ColoredPartition) -> Fraction:
    return count_covers(m, n, profile).get(cp, Fraction(0))


# ---------------------------------------------------------------------------
# Tables


@dataclass
class HurwitzTable:
    """(profile, colored partition) -> exact Hurwitz number, tagged with its engine."""

    m: int
    engine: str
    entries: dict[tuple[Profile, ColoredPartition], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")

    def get(self, profile: Sequence[int], cp: ColoredPartition) -> Fraction:
        return self.entries.get((tuple(profile), cp), Fraction(0))

    def set(self, profile: Sequence[int], cp: ColoredPartition, value) -> None:
        self.entries[(tuple(profile), cp)] = Fraction(value)

    def keys(self):
        return sorted(self.entries, key=lambda k: (k[1].total, k[0], index_of(k[1])))

    def rows(self) -> list[dict]:
        out = []
        for profile, cp in self.keys():
            v = self.entries[(profile, cp)]
            out.append(
                {
                    "profile": list(profile),
                    "colored_partition": str(cp),
                    "numerator": str(v.numerator),
                    "denominator": str(v.denominator),
                    "engine": self.engine,
                }
            )
        return out

    def to_json(self) -> dict:
        return {"m": self.m, "engine": self.engine, "rows": self.rows()}

    @classmethod
    def from_json(cls, data: dict) -> "HurwitzTable":
        t = cls(data["m"], data["engine"])
        for row in data["rows"]:
            t.set(
                tuple(row["profile"]),
                ColoredPartition.parse(row["colored_partition"]),
                Fraction(int(row["numerator"]), int(row["denominator"])),
            )
        return t

    def to_csv(self) -> str:
        rows = [dict(r, profile=" ".join(map(str, r["profile"]))) for r in self.rows()]
        return rows_to_csv(rows, ["profile", "colored_partition", "numerator", "denominator", "engine"])

    def diff(self, other: "HurwitzTable") -> list[dict]:
        """Rows where the two tables disagree (missing entries read as zero)."""
        out = []
        for key in sorted(set(self.entries) | set(other.entries), key=lambda k: (k[1].total, k[0], index_of(k[1]))):
            a, b = self.entries.get(key, Fraction(0)), other.entries.get(key, Fraction(0))
            if a != b:
                out.append(
                    {
                        "profile": list(key[0]),
                        "colored_partition": str(key[1]),
                        self.engine: str(a),
                        other.engine: str(b),
                    }
                )
        return out


def enumeration_table(
    m: int,
    max_n: int,
    profiles: Iterable[Sequence[int]],
    min_n: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> HurwitzTable:
    """Hurwitz numbers via the class-algebra recursion for every n and profile.

    The budget caps the number of element products used to scan the
    multiplicity tables (one per class representative and reflection).
    """
    scans = sum(
        len(gen_colored_partitions(m, n)) * len(all_reflections(m, n)) for n in range(min_n, max_n + 1)
    )
    if scans > budget:
        raise BudgetExceeded(f"{scans} multiplicity scans exceed budget {budget}")
    table = HurwitzTable(m, "enumeration")
    profiles = [tuple(p) for p in profiles]
    for n in range(min_n, max_n + 1):
        G = group_order(m, n)
        for profile in profiles:
            vec = class_dp_vector(m, n, prescription(profile))
            for cp in gen_colored_partitions(m, n):
                table.set(profile, cp, Fraction(vec.coeffs.get(cp, 0)) / G)
    return table
