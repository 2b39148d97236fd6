"""Exact simple Hurwitz numbers for the complex reflection groups G(m,1,n).

Three independent engines compute the same numbers: class-algebra
enumeration, cut-and-join evolution, and the Schur closed form.
"""
from .cyclo import CycloNumber, xi_pow
from .enumeration import (
    HurwitzTable,
    count_covers,
    hurwitz_bruteforce,
    hurwitz_classdp,
    multiplicity,
    t_matrix,
)
from .partitions import ColoredPartition, gen_colored_partitions, gen_partitions
from .wreath import WreathElement, colored_type, embed, tau

__all__ = [
    "ColoredPartition",
    "CycloNumber",
    "HurwitzTable",
    "WreathElement",
    "colored_type",
    "count_covers",
    "embed",
    "gen_colored_partitions",
    "gen_partitions",
    "hurwitz_bruteforce",
    "hurwitz_classdp",
    "multiplicity",
    "t_matrix",
    "tau",
    "xi_pow",
]

__version__ = "0.1.0"
