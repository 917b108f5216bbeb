"""Per-query cost of both classifiers as the group size grows.

After one indexing pass per group, the information-quantity classifier
should cost about the same per query whatever the group size.  CDM
compresses the query against every known score, so its cost grows with
the group size.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .cdm import CompressorBackend, make_backend
from .classify import ComposerGroup, LabeledScore, build_groups, classify_cdm, classify_infoq
from .synthetic import DEFAULT_SEED, composer_labels, markov_sources, sample_markov


@dataclass(frozen=True)
class BenchConfig:
    l: int = 2000  # string length
    c: int = 5  # composers
    g: int = 5  # scores per group (first of the doubling series)
    n: int = 5  # query scores

    def __post_init__(self):
        for name in ("l", "c", "g", "n"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    def group_sizes(self, steps: int = 3) -> tuple[int, ...]:
        return tuple(self.g * 2**i for i in range(steps))


@dataclass
class BenchRow:
    method: str
    g: int
    per_query: float  # mean seconds per query
    preprocess: float  # seconds spent building group indexes (infoq only)
    builds: int  # group indexes built for this row


@dataclass
class BenchReport:
    config: BenchConfig
    rows: list[BenchRow]

    def row(self, method: str, g: int) -> BenchRow:
        return next(r for r in self.rows if r.method == method and r.g == g)

    def ratio(self, method: str, g_from: int, g_to: int) -> float:
        return self.row(method, g_to).per_query / self.row(method, g_from).per_query

    def format(self) -> str:
        cfg = self.config
        lines = [
            f"# l={cfg.l} c={cfg.c} n={cfg.n}",
            f"{'method':<8}{'g':>5}{'per_query_s':>14}{'preprocess_s':>14}{'builds':>8}",
        ]
        for r in self.rows:
            lines.append(f"{r.method:<8}{r.g:>5}{r.per_query:>14.6f}{r.preprocess:>14.6f}{r.builds:>8}")
        return "\n".join(lines) + "\n"


def bench_corpus(config: BenchConfig, g: int, seed: int = DEFAULT_SEED) -> tuple[list[LabeledScore], list[str]]:
    """Known scores (``c * g``) and ``n`` queries, all from seeded Markov sources."""
    rng = np.random.default_rng(seed)
    sources = markov_sources(config.c, rng)
    labels = composer_labels(config.c)
    known = [
        LabeledScore(f"{label}-{i + 1:02d}", label, sample_markov(src, config.l, rng))
        for label, src in zip(labels, sources)
        for i in range(g)
    ]
    queries = [sample_markov(sources[j % config.c], config.l, rng) for j in range(config.n)]
    return known, queries


def bench_scaling(
    config: BenchConfig,
    g_values: Sequence[int] | None = None,
    seed: int = DEFAULT_SEED,
    backend: CompressorBackend | None = None,
    k: int = 1,
    on_build: Callable[[ComposerGroup], None] | None = None,
) -> BenchReport:
    backend = backend or make_backend("lzw")
    rows = []
    for g in g_values or config.group_sizes():
        known, queries = bench_corpus(config, g, seed)

        t0 = time.perf_counter()
        groups = build_groups(known)
        preprocess = time.perf_counter() - t0
        if on_build is not None:
            for grp in groups:
                on_build(grp)

        t0 = time.perf_counter()
        for q in queries:
            classify_infoq(q, groups)
        rows.append(BenchRow("infoq", g, (time.perf_counter() - t0) / len(queries), preprocess, len(groups)))

        pairs = [(s.label, s.text) for s in known]
        t0 = time.perf_counter()
        for q in queries:
            classify_cdm(q, pairs, backend, k)
        rows.append(BenchRow("cdm", g, (time.perf_counter() - t0) / len(queries), 0.0, 0))
    return BenchReport(config, rows)
