"""Plain-text evaluation reports.

Layout::

    # method infoq
    # id true predicted correct comp1 comp2 ...
    comp1-01 comp1 comp1 1 781.234567 1613.000000 ...
    # accuracy infoq
    comp1 15/15
    total 70/75
    # contingency infoq cdm
    a b c d
    # mcnemar statistic p_chi2 p_exact
    8.450000 0.003650 0.002577
"""

from __future__ import annotations

import math
from typing import Sequence

from .classify import AccuracyTable, Record
from .significance import ContingencyTable, McNemarResult


def format_value(value: float, paper_style: bool = False) -> str:
    if math.isinf(value):
        return "inf"
    if paper_style:
        return str(math.trunc(value))
    return f"{value:.6f}"


def format_records(records: Sequence[Record], method: str, paper_style: bool = False) -> str:
    labels = sorted({label for r in records for label, _ in r.outcome.per_class})
    lines = [f"# method {method}", "# id true predicted correct " + " ".join(labels)]
    for r in records:
        values = dict(r.outcome.per_class)
        cols = [format_value(values[lb], paper_style) if lb in values else "-" for lb in labels]
        lines.append(
            f"{r.query_id} {r.true_label} {r.outcome.predicted} {int(r.correct)} " + " ".join(cols)
        )
    return "\n".join(lines) + "\n"


def format_accuracy(table: AccuracyTable, method: str) -> str:
    lines = [f"# accuracy {method}"]
    lines += [f"{label} {c}/{n}" for label, c, n in table.per_class]
    lines.append(f"total {table.correct}/{table.total}")
    return "\n".join(lines) + "\n"


def format_mcnemar(table: ContingencyTable, result: McNemarResult, names: tuple[str, str]) -> str:
    return (
        f"# contingency {names[0]} {names[1]}\n"
        + " ".join(str(x) for x in table.cells)
        + "\n# mcnemar statistic p_chi2 p_exact\n"
        + f"{result.statistic:.6f} {result.p_value:.6f} {result.exact_p_value:.6f}\n"
    )
