"""Information quantity of a query string against a group index.

Bits are plain floats; an impossible piece (probability zero) costs
``math.inf``, which saturates sums and loses every ``min``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .suffix_index import SuffixIndex, match_table, substring_probability

INFINITE = math.inf
BRUTE_FORCE_LIMIT = 20


@dataclass
class InfoResult:
    total: float
    partition: list[str]
    per_piece: list[tuple[str, float]]

    def report(self) -> str:
        lines = [f"{self.total:.6f}"]
        lines += [f"{piece} {bits:.6f}" for piece, bits in self.per_piece]
        return "\n".join(lines) + "\n"


def char_information(p: float) -> float:
    """Self-information ``-log2 p`` in bits."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    if p == 0.0:
        return INFINITE
    return -math.log2(p)


def piece_bits(index: SuffixIndex, piece: str) -> float:
    return char_information(substring_probability(index, piece))


def _check_query(query: str) -> None:
    if not query:
        raise ValueError("query must be non-empty")
    if query.strip("01"):
        raise ValueError("query must consist of '0' and '1' only")


def info_characters(query: str, index: SuffixIndex) -> float:
    """Sum of per-character self-information (characters treated as independent)."""
    _check_query(query)
    per_char = {c: piece_bits(index, c) for c in set(query)}
    return sum(per_char[c] for c in query)


def info_min_partition(query: str, index: SuffixIndex) -> InfoResult:
    """Minimum over all segmentations of the summed piece information.

    Forward DP over start positions: once ``best[i]`` is final, every piece
    starting at ``i`` whose count is at least 2 relaxes ``best[i + m]``.
    That is O(N^2) in the worst case but each start stops at its longest
    repeated match.
    Pieces seen fewer than twice have zero probability and are never tried.
    Ties keep the longest final piece.
    """
    _check_query(query)
    n = len(query)
    L = index.length
    counts = match_table(index, query)
    m = np.arange(1, counts.shape[1] + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        cost = np.where(counts >= 2, -np.log2((counts - 1) / (L - m + 1)), np.inf)
    cost_rows = cost.tolist()

    best = [math.inf] * (n + 1)
    best[0] = 0.0
    prev = [-1] * (n + 1)
    for i in range(n):
        base = best[i]
        if base == math.inf:
            continue
        for step, c in enumerate(cost_rows[i], start=1):
            if c == math.inf:
                break
            cand = base + c
            if cand < best[i + step]:
                best[i + step] = cand
                prev[i + step] = i

    if best[n] == math.inf:
        pieces = list(query)
    else:
        pieces = []
        j = n
        while j > 0:
            i = prev[j]
            pieces.append(query[i:j])
            j = i
        pieces.reverse()

    per_piece = [(p, piece_bits(index, p)) for p in pieces]
    total = sum(bits for _, bits in per_piece)
    return InfoResult(total=total, partition=pieces, per_piece=per_piece)


def partitions(s: str):
    """All 2**(len(s)-1) ways to cut ``s`` into contiguous pieces."""
    n = len(s)
    for cuts in itertools.product((False, True), repeat=n - 1):
        pieces, start = [], 0
        for pos, cut in enumerate(cuts, start=1):
            if cut:
                pieces.append(s[start:pos])
                start = pos
        pieces.append(s[start:])
        yield pieces


def brute_force_info(query: str, index: SuffixIndex) -> float:
    """Exhaustive minimum over every partition. Test oracle; exponential."""
    _check_query(query)
    if len(query) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"query longer than {BRUTE_FORCE_LIMIT} characters")
    cache: dict[str, float] = {}

    def bits(piece: str) -> float:
        if piece not in cache:
            cache[piece] = piece_bits(index, piece)
        return cache[piece]

    return min(sum(bits(p) for p in parts) for parts in partitions(query))
