"""Suffix array over a group text, with substring counting.

Occurrence counts use the usual SA interval: the suffixes starting with a
pattern form one contiguous block of the array, found by two binary
searches.  Probabilities use the frequency-minus-one estimator

    P(t) = (count(t) - 1) / (L - |t| + 1)

so a substring seen once (or never) has probability zero.
"""

from __future__ import annotations

import struct
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

import numpy as np

MAGIC = b"SQIX"
VERSION = 1

# below every real byte value; marks "past the end of the text"
_END = -1


@dataclass(frozen=True)
class MatchRun:
    start: int
    lengths_counts: list[tuple[int, int]]


def suffix_array(codes: np.ndarray) -> np.ndarray:
    """Prefix-doubling suffix sort, O(L log^2 L) in numpy."""
    n = len(codes)
    if n == 0:
        return np.empty(0, dtype=np.int64)
    rank = codes.astype(np.int64)
    k = 1
    while True:
        second = np.full(n, _END, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r, s = rank[order], second[order]
        bumps = np.empty(n, dtype=np.int64)
        bumps[0] = 0
        bumps[1:] = (r[1:] != r[:-1]) | (s[1:] != s[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(bumps)
        rank = new_rank
        if rank.max() == n - 1 or k >= n:
            return order.astype(np.int64)
        k *= 2


@dataclass(frozen=True)
class SuffixIndex:
    text: str
    sa: np.ndarray
    _codes: np.ndarray = field(repr=False, compare=False)

    @property
    def length(self) -> int:
        return len(self.text)

    def __len__(self) -> int:
        return len(self.text)

    def interval(self, pattern: str) -> tuple[int, int]:
        """Half-open SA range of suffixes that start with ``pattern``."""
        m = len(pattern)
        sa, text = self.sa, self.text
        key = lambda i: text[sa[i] : sa[i] + m]  # noqa: E731
        lo = bisect_left(range(len(sa)), pattern, key=key)
        hi = bisect_right(range(len(sa)), pattern, lo=lo, key=key)
        return lo, hi

    def count(self, pattern: str) -> int:
        if not pattern:
            raise ValueError("pattern must be non-empty")
        lo, hi = self.interval(pattern)
        return hi - lo

    def probability(self, pattern: str) -> float:
        return substring_probability(self, pattern)

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(dump_index(self))


def _codes_of(text: str) -> np.ndarray:
    try:
        raw = text.encode("latin-1")
    except UnicodeEncodeError:
        raise ValueError("index text must be a byte string (latin-1 characters)") from None
    return np.frombuffer(raw, dtype=np.uint8).astype(np.int16)


def build_index(text: str) -> SuffixIndex:
    if not text:
        raise ValueError("cannot index an empty text")
    codes = _codes_of(text)
    sa = suffix_array(codes)
    sa.setflags(write=False)
    return SuffixIndex(text=text, sa=sa, _codes=codes)


def count_occurrences(index: SuffixIndex, pattern: str) -> int:
    return index.count(pattern)


def estimate(count: int, length: int, text_length: int) -> float:
    """Frequency-minus-one MLE for a substring of the given length."""
    if count < 1 or length > text_length:
        return 0.0
    return (count - 1) / (text_length - length + 1)


def substring_probability(index: SuffixIndex, pattern: str) -> float:
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if len(pattern) > index.length:
        return 0.0
    return estimate(index.count(pattern), len(pattern), index.length)


def match_extend(index: SuffixIndex, query: str, start: int) -> MatchRun:
    """Counts for query[start:start+m], m = 1, 2, ... while the count stays >= 2.

    The SA range is narrowed one character at a time instead of re-searching
    the whole array for each prefix.
    """
    if not 0 <= start < len(query):
        raise ValueError(f"start {start} outside query of length {len(query)}")
    sa, text = index.sa, index.text
    n = len(text)
    lo, hi = 0, len(sa)
    out: list[tuple[int, int]] = []
    for m in range(len(query) - start):
        ch = query[start + m]
        key = lambda i: text[sa[i] + m] if sa[i] + m < n else ""  # noqa: E731
        lo = bisect_left(range(hi), ch, lo=lo, key=key)
        hi = bisect_right(range(hi), ch, lo=lo, key=key)
        if hi - lo < 2:
            break
        out.append((m + 1, hi - lo))
    return MatchRun(start, out)


def match_counts(index: SuffixIndex, query: str) -> list[np.ndarray]:
    """``match_extend`` for every start position at once.

    Returns one int array per start; entry ``m - 1`` is the count of the
    length-``m`` prefix, truncated before the first count below 2.
    """
    table = match_table(index, query)
    widths = (table > 0).sum(axis=1)
    return [row[:w] for row, w in zip(table, widths)]


def match_table(index: SuffixIndex, query: str) -> np.ndarray:
    """Counts as a ``len(query) x max_run`` matrix, zero-padded past each run."""
    n_q = len(query)
    q = _codes_of(query).astype(np.int64)
    codes = index._codes.astype(np.int64)
    sa = index.sa
    n = len(codes)
    steps = max(1, int(n).bit_length())

    lo = np.zeros(n_q, dtype=np.int64)
    hi = np.full(n_q, n, dtype=np.int64)
    active = np.arange(n_q)
    columns: list[np.ndarray] = []

    m = 0
    while len(active):
        target = q[active + m]

        def char_at(k):
            pos = sa[np.minimum(k, n - 1)] + m
            return np.where(pos < n, codes[np.minimum(pos, n - 1)], _END)

        new_lo = _bisect(lo[active], hi[active], target, char_at, steps, strict=False)
        new_hi = _bisect(new_lo, hi[active], target, char_at, steps, strict=True)
        cnt = new_hi - new_lo
        keep = cnt >= 2
        col = np.zeros(n_q, dtype=np.int64)
        col[active[keep]] = cnt[keep]
        columns.append(col)
        lo[active], hi[active] = new_lo, new_hi
        active = active[keep]
        m += 1
        active = active[active + m < n_q]
    if not columns:
        return np.zeros((n_q, 0), dtype=np.int64)
    return np.stack(columns, axis=1)


def _bisect(lo, hi, target, char_at, steps, strict):
    """Vectorized lower bound (``strict``: upper bound) of ``target`` in [lo, hi)."""
    lo, hi = lo.copy(), hi.copy()
    for _ in range(steps + 1):
        open_ = lo < hi
        if not open_.any():
            break
        mid = (lo + hi) // 2
        c = char_at(mid)
        go_right = (c <= target) if strict else (c < target)
        go_right &= open_
        go_left = open_ & ~go_right
        lo = np.where(go_right, mid + 1, lo)
        hi = np.where(go_left, mid, hi)
    return lo


def dump_index(index: SuffixIndex) -> bytes:
    n = index.length
    return (
        MAGIC
        + bytes([VERSION])
        + struct.pack("<Q", n)
        + index.text.encode("latin-1")
        + index.sa.astype("<u8").tobytes()
    )


def load_index(data: bytes) -> SuffixIndex:
    if data[:4] != MAGIC:
        raise ValueError("not a suffix index file (bad magic)")
    if len(data) < 13 or data[4] != VERSION:
        raise ValueError("unsupported suffix index version")
    (n,) = struct.unpack_from("<Q", data, 5)
    if len(data) != 13 + 9 * n:
        raise ValueError(f"truncated index: expected {13 + 9 * n} bytes, got {len(data)}")
    text = data[13 : 13 + n].decode("latin-1")
    sa = np.frombuffer(data, dtype="<u8", count=n, offset=13 + n).astype(np.int64)
    if n == 0 or not np.array_equal(np.sort(sa), np.arange(n)):
        raise ValueError("suffix array is not a permutation of 0..L-1")
    sa.setflags(write=False)
    return SuffixIndex(text=text, sa=sa, _codes=_codes_of(text))


def read_index(path) -> SuffixIndex:
    with open(path, "rb") as fh:
        return load_index(fh.read())
