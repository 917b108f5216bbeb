"""Corpus manifests: one ``score <id> <label> <path>`` line per score.

Relative paths resolve against the manifest's directory.  Blank lines and
lines starting with ``#`` are ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .classify import LabeledScore
from .codec import ScoreError, read_encoded


class ManifestError(ValueError):
    pass


def read_manifest(path) -> list[tuple[str, str, Path]]:
    path = Path(path)
    base = path.parent
    entries = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "score":
            raise ManifestError(f"{path}:{lineno}: expected 'score <id> <label> <path>'")
        _, score_id, label, rel = parts
        entries.append((score_id, label, base / rel))
    if not entries:
        raise ManifestError(f"{path}: no scores listed")
    return entries


def load_corpus(path) -> list[LabeledScore]:
    corpus = []
    for score_id, label, file in read_manifest(path):
        try:
            text = read_encoded(file.read_bytes(), score_id)
        except ScoreError as exc:
            raise ScoreError(f"{file}: {exc}") from exc
        if not text:
            raise ScoreError(f"{file}: score encodes to an empty string")
        corpus.append(LabeledScore(score_id, label, text))
    return corpus


def write_corpus(corpus: Iterable[LabeledScore], directory) -> Path:
    """Write each score as a pre-encoded file plus a ``manifest.txt``; return the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lines = []
    for item in corpus:
        name = f"{item.id}.txt"
        (directory / name).write_text(item.text + "\n", encoding="ascii")
        lines.append(f"score {item.id} {item.label} {name}")
    manifest = directory / "manifest.txt"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest
