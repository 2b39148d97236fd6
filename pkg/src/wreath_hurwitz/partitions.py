"""Integer partitions and m-colored partitions.

A partition is a plain tuple of weakly decreasing positive integers.  A
colored partition bundles m of them, one per residue class mod m, and indexes
the conjugacy classes of Z/mZ wr S_n as well as the monomial basis of the
degree-n power-sum polynomials.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cache
from math import factorial, prod
from typing import Iterable, Sequence

Partition = tuple[int, ...]

EMPTY_MARK = "-"


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def make_partition(parts: Iterable[int]) -> Partition:
    """Sort `parts` into canonical (weakly decreasing) order, dropping zeros."""
    out = tuple(sorted((p for p in parts if p != 0), reverse=True))
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {out}")
    return out


@cache
def gen_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order: (n), (n-1, 1), ..., (1^n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def rec(rest: int, cap: int) -> list[Partition]:
        if rest == 0:
            return [()]
        out = []
        for first in range(min(rest, cap), 0, -1):
            out.extend((first,) + tail for tail in rec(rest - first, first))
        return out

    return tuple(rec(n, n))


def part_multiplicity(p: Partition, i: int) -> int:
    """Number of parts of `p` equal to `i`."""
    if i < 1:
        raise ValueError("part size must be positive")
    return sum(1 for x in p if x == i)


def multiplicities(p: Partition) -> dict[int, int]:
    return dict(Counter(p))


def z_constant(p: Partition) -> int:
    """Centralizer order of a permutation of cycle type p: prod_i i^c_i c_i!."""
    return prod(i**c * factorial(c) for i, c in Counter(p).items())


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > j) for j in range(p[0]))


def partition_to_str(p: Partition) -> str:
    return ",".join(map(str, p)) if p else EMPTY_MARK


def partition_from_str(text: str) -> Partition:
    text = text.strip()
    if text in (EMPTY_MARK, "", "()", "∅"):
        return ()
    parts = tuple(int(x) for x in text.split(","))
    if not is_partition(parts):
        raise ValueError(f"not a partition: {text!r}")
    return parts


@dataclass(frozen=True, order=False)
class ColoredPartition:
    """An m-tuple of partitions lambda_0 | ... | lambda_{m-1}."""

    components: tuple[Partition, ...]

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        if not comps:
            raise ValueError("a colored partition needs at least one color")
        for c in comps:
            if not is_partition(c):
                raise ValueError(f"component {c} is not a partition")
        object.__setattr__(self, "components", comps)

    @property
    def m(self) -> int:
        return len(self.components)

    @property
    def total(self) -> int:
        return sum(sum(c) for c in self.components)

    def __getitem__(self, alpha: int) -> Partition:
        return self.components[alpha]

    def __iter__(self):
        return iter(self.components)

    def __str__(self) -> str:
        return "|".join(partition_to_str(c) for c in self.components)

    def __repr__(self) -> str:
        return f"ColoredPartition({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "ColoredPartition":
        """Parse the textual form, e.g. ``"2,1|-|1"``."""
        return cls(tuple(partition_from_str(chunk) for chunk in text.split("|")))

    @classmethod
    def identity(cls, m: int, n: int) -> "ColoredPartition":
        """The class 1^n | empty | ... | empty of the identity element."""
        return cls(((1,) * n,) + ((),) * (m - 1))

    def parts(self) -> list[tuple[int, int]]:
        """All (length, color) pairs, colors ascending, lengths descending."""
        return [(k, a) for a, c in enumerate(self.components) for k in c]

    def length(self) -> int:
        return sum(len(c) for c in self.components)

    def multiplicity(self, alpha: int, i: int) -> int:
        return part_multiplicity(self.components[alpha], i)

    def sort_key(self) -> tuple:
        return tuple(_partition_key(c) for c in self.components)


def _partition_key(p: Partition) -> tuple:
    # larger size first, then reverse-lex within a size
    return (-sum(p), tuple(-x for x in p))


@cache
def gen_colored_partitions(m: int, n: int) -> tuple[ColoredPartition, ...]:
    """All m-colored partitions of total n in canonical order.

    The order is lexicographic on the m-tuple, where a single partition ranks
    before another if it is larger, or equally large and earlier in
    reverse-lexicographic order.  For m = 1 this is exactly gen_partitions(n).
    """
    if m < 1:
        raise ValueError("m must be positive")
    if n < 0:
        raise ValueError("n must be nonnegative")

    def rec(colors: int, rest: int) -> list[tuple[Partition, ...]]:
        if colors == 1:
            return [(p,) for p in gen_partitions(rest)]
        out = []
        for k in range(rest, -1, -1):
            for p in gen_partitions(k):
                out.extend((p,) + tail for tail in rec(colors - 1, rest - k))
        return out

    return tuple(ColoredPartition(c) for c in rec(m, n))


@cache
def _index_table(m: int, n: int) -> dict[ColoredPartition, int]:
    return {cp: i for i, cp in enumerate(gen_colored_partitions(m, n))}


def index_of(cp: ColoredPartition) -> int:
    """Position of `cp` in gen_colored_partitions(cp.m, cp.total)."""
    return _index_table(cp.m, cp.total)[cp]


def at_index(m: int, n: int, i: int) -> ColoredPartition:
    return gen_colored_partitions(m, n)[i]


def colored_from_parts(m: int, parts: Iterable[tuple[int, int]]) -> ColoredPartition:
    """Build a colored partition from (length, color) pairs in any order."""
    buckets: list[list[int]] = [[] for _ in range(m)]
    for k, a in parts:
        buckets[a % m].append(k)
    return ColoredPartition(tuple(make_partition(b) for b in buckets))
