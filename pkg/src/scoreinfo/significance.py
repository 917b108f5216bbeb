"""Paired comparison of two classifiers with McNemar's test."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .classify import Record


@dataclass(frozen=True)
class ContingencyTable:
    both_correct: int  # a
    only_a_correct: int  # b
    only_b_correct: int  # c
    both_wrong: int  # d

    def __post_init__(self):
        if min(self.cells) < 0:
            raise ValueError("contingency counts must be non-negative")

    @property
    def cells(self) -> tuple[int, int, int, int]:
        return (self.both_correct, self.only_a_correct, self.only_b_correct, self.both_wrong)

    @property
    def total(self) -> int:
        return sum(self.cells)


@dataclass(frozen=True)
class McNemarResult:
    statistic: float
    p_value: float
    exact_p_value: float


def build_contingency(records_a: Sequence[Record], records_b: Sequence[Record]) -> ContingencyTable:
    a = {r.query_id: r.correct for r in records_a}
    b = {r.query_id: r.correct for r in records_b}
    if len(a) != len(records_a) or len(b) != len(records_b):
        raise ValueError("duplicate query ids in records")
    if a.keys() != b.keys():
        missing = sorted(a.keys() ^ b.keys())
        raise ValueError(f"record lists cover different queries: {missing[:5]}")
    pairs = Counter((ok_a, b[qid]) for qid, ok_a in a.items())
    return ContingencyTable(
        pairs[True, True], pairs[True, False], pairs[False, True], pairs[False, False]
    )


def chi2_sf_1dof(x: float) -> float:
    """Upper tail of chi-square with one degree of freedom.

    Q(1/2, x/2) reduces to erfc(sqrt(x/2)).
    """
    if x <= 0:
        return 1.0
    return math.erfc(math.sqrt(x / 2.0))


def exact_binomial_p(b: int, c: int) -> float:
    """Two-sided sign-test p-value for b successes in b + c trials at rate 1/2."""
    n = b + c
    if n == 0:
        return 1.0
    tail = sum(math.comb(n, i) for i in range(min(b, c) + 1))
    return min(1.0, 2 * tail / 2**n)


def mcnemar(table: ContingencyTable) -> McNemarResult:
    """Continuity-corrected McNemar statistic, its chi-square p, and the exact p."""
    b, c = table.only_a_correct, table.only_b_correct
    if b + c == 0:
        return McNemarResult(0.0, 1.0, 1.0)
    stat = max(abs(b - c) - 1, 0) ** 2 / (b + c)
    return McNemarResult(stat, chi2_sf_1dof(stat), exact_binomial_p(b, c))
