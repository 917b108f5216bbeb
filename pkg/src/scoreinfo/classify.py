"""Composer classification and leave-one-out evaluation.

Two classifiers share one outcome type:

* ``classify_infoq`` - least information quantity against each composer's
  pre-built group index;
* ``classify_cdm`` - k nearest neighbours under CDM against every known score.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .cdm import CompressorBackend, cdm, compress_size
from .codec import concat_group
from .infoq import info_min_partition
from .suffix_index import SuffixIndex, build_index

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabeledScore:
    id: str
    label: str
    text: str


@dataclass
class ComposerGroup:
    label: str
    scores: list[tuple[str, str]]
    index: SuffixIndex = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.scores)


@dataclass
class ClassificationOutcome:
    query_id: str
    per_class: list[tuple[str, float]]
    predicted: str
    tie: bool = False


@dataclass
class Record:
    query_id: str
    true_label: str
    outcome: ClassificationOutcome
    correct: bool


@dataclass(frozen=True)
class CdmMethod:
    backend: CompressorBackend
    k: int = 1


def build_group(label: str, scores: Sequence[tuple[str, str]]) -> ComposerGroup:
    """Concatenate one composer's strings and index them (the one-off pre-processing)."""
    scores = list(scores)
    if not scores:
        raise ValueError(f"group {label!r} has no scores")
    return ComposerGroup(label, scores, build_index(concat_group([s for _, s in scores])))


def build_groups(corpus: Sequence[LabeledScore]) -> list[ComposerGroup]:
    by_label: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for item in corpus:
        by_label[item.label].append((item.id, item.text))
    return [build_group(label, by_label[label]) for label in sorted(by_label)]


def argmin_decision(per_class: Sequence[tuple[str, float]]) -> tuple[str, bool]:
    """Label with the smallest value; ties go to the lexicographically least label."""
    if not per_class:
        raise ValueError("no classes to choose from")
    low = min(v for _, v in per_class)
    winners = sorted(label for label, v in per_class if v == low)
    return winners[0], len(winners) > 1


def classify_infoq(query: str, groups: Sequence[ComposerGroup], query_id: str = "") -> ClassificationOutcome:
    if not groups:
        raise ValueError("need at least one group")
    per_class = [(g.label, info_min_partition(query, g.index).total) for g in groups]
    predicted, tie = argmin_decision(per_class)
    return ClassificationOutcome(query_id, per_class, predicted, tie)


def classify_cdm(
    query: str,
    known: Sequence[tuple[str, str]],
    backend: CompressorBackend,
    k: int = 1,
    query_id: str = "",
    sizes: dict[str, int] | None = None,
) -> ClassificationOutcome:
    """k-NN vote over CDM distances.

    ``known`` holds ``(label, string)`` pairs. The vote is a plain majority;
    equal votes go to the smaller mean CDM, then to the lexicographically
    least label. ``sizes`` caches compressed sizes keyed by string.
    """
    if not 1 <= k <= len(known):
        raise ValueError(f"k={k} out of range for {len(known)} known scores")
    sizes = {} if sizes is None else sizes

    def size_of(s: str) -> int:
        if s not in sizes:
            sizes[s] = compress_size(backend, s)
        return sizes[s]

    cq = size_of(query)
    dist = [(cdm(backend, query, s, cx=cq, cy=size_of(s)), label) for label, s in known]
    ranked = sorted(dist)
    nearest = ranked[:k]

    tie = False
    if k < len(ranked):
        edge = ranked[k - 1][0]
        at_edge = {label for d, label in ranked if d == edge}
        tie = len(at_edge) > 1

    votes = Counter(label for _, label in nearest)
    top = max(votes.values())
    contenders = [label for label, v in votes.items() if v == top]
    if len(contenders) > 1:
        mean = {
            label: sum(d for d, lb in nearest if lb == label) / votes[label] for label in contenders
        }
        low = min(mean.values())
        contenders = [label for label in contenders if mean[label] == low]
        tie = tie or len(contenders) > 1
    predicted = min(contenders)

    per_label: dict[str, float] = {}
    for d, label in dist:
        per_label[label] = min(d, per_label.get(label, d))
    per_class = sorted(per_label.items())
    return ClassificationOutcome(query_id, per_class, predicted, tie)


def _check_corpus(corpus: Sequence[LabeledScore]) -> None:
    sizes = Counter(item.label for item in corpus)
    small = sorted(label for label, n in sizes.items() if n < 2)
    if small:
        raise ValueError(f"leave-one-out needs >= 2 scores per class; too few in {small}")
    ids = Counter(item.id for item in corpus)
    dup = sorted(i for i, n in ids.items() if n > 1)
    if dup:
        raise ValueError(f"duplicate score ids: {dup}")


def _infoq_fold(held: LabeledScore, own_scores, other_groups) -> tuple[Record, ComposerGroup]:
    rebuilt = build_group(held.label, [(i, s) for i, s in own_scores if i != held.id])
    groups = sorted([rebuilt, *other_groups], key=lambda g: g.label)
    outcome = classify_infoq(held.text, groups, held.id)
    return Record(held.id, held.label, outcome, outcome.predicted == held.label), rebuilt


def leave_one_out(
    corpus: Sequence[LabeledScore],
    method: str | CdmMethod = "infoq",
    *,
    on_fold: Callable[[LabeledScore, ComposerGroup], None] | None = None,
    jobs: int = 1,
) -> list[Record]:
    """Classify every score with itself removed from the known data.

    For ``"infoq"`` the held-out score's own group is rebuilt without it while
    the other groups are built once and reused.  For CDM the score is simply
    dropped from the known list.  ``on_fold`` sees each (held-out score,
    rebuilt group) pair for the information-quantity method.  Records come
    back sorted by score id regardless of ``jobs``.
    """
    _check_corpus(corpus)
    records: list[Record] = []
    if method == "infoq":
        full = {g.label: g for g in build_groups(corpus)}
        tasks = [
            (held, full[held.label].scores, [g for lb, g in full.items() if lb != held.label])
            for held in corpus
        ]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_infoq_fold, *zip(*tasks)))
        else:
            results = [_infoq_fold(*t) for t in tasks]
        for (held, _, _), (record, rebuilt) in zip(tasks, results):
            if on_fold is not None:
                on_fold(held, rebuilt)
            records.append(record)
    elif isinstance(method, CdmMethod):
        sizes: dict[str, int] = {}
        for held in corpus:
            known = [(o.label, o.text) for o in corpus if o.id != held.id]
            outcome = classify_cdm(held.text, known, method.backend, method.k, held.id, sizes)
            records.append(Record(held.id, held.label, outcome, outcome.predicted == held.label))
    else:
        raise ValueError(f"unknown method {method!r}")
    log.debug("leave-one-out finished: %d records", len(records))
    return sorted(records, key=lambda r: r.query_id)


@dataclass
class AccuracyTable:
    per_class: list[tuple[str, int, int]]  # label, correct, evaluated

    @property
    def correct(self) -> int:
        return sum(c for _, c, _ in self.per_class)

    @property
    def total(self) -> int:
        return sum(n for _, _, n in self.per_class)

    def counts(self) -> dict[str, int]:
        return {label: c for label, c, _ in self.per_class}


def accuracy_table(records: Sequence[Record]) -> AccuracyTable:
    correct: Counter[str] = Counter()
    seen: Counter[str] = Counter()
    for r in records:
        seen[r.true_label] += 1
        correct[r.true_label] += bool(r.correct)
    return AccuracyTable([(label, correct[label], seen[label]) for label in sorted(seen)])
