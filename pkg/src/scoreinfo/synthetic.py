"""Seeded synthetic corpora: one order-2 binary Markov source per "composer"."""

from __future__ import annotations

import numpy as np

from .classify import LabeledScore

DEFAULT_SEED = 20170901


def markov_sources(count: int, rng: np.random.Generator) -> np.ndarray:
    """``count x 4`` table of P(next = '1' | previous two bits).

    Kept sparse (at most one half) like piano-roll strings, which are mostly '0'.
    """
    return rng.uniform(0.02, 0.5, size=(count, 4))


def sample_markov(p_one: np.ndarray, length: int, rng: np.random.Generator) -> str:
    draws = rng.random(length)
    out = bytearray(length)
    ctx = int(rng.integers(4))
    for i in range(length):
        bit = 1 if draws[i] < p_one[ctx] else 0
        out[i] = 48 + bit
        ctx = ((ctx << 1) | bit) & 3
    return out.decode("ascii")


def composer_labels(count: int) -> list[str]:
    return [f"comp{j + 1}" for j in range(count)]


def synthetic_corpus(
    composers: int = 5,
    per_composer: int = 15,
    length: int = 2000,
    seed: int = DEFAULT_SEED,
) -> list[LabeledScore]:
    """``composers * per_composer`` scores; ids look like ``comp3-07``."""
    rng = np.random.default_rng(seed)
    sources = markov_sources(composers, rng)
    corpus = []
    for label, p_one in zip(composer_labels(composers), sources):
        for i in range(per_composer):
            corpus.append(LabeledScore(f"{label}-{i + 1:02d}", label, sample_markov(p_one, length, rng)))
    return corpus
