"""Score documents and the binary piano-roll string form.

A score document is line-oriented UTF-8 text::

    # comment
    steps 4
    note 0 60 2
    note 2 64 1

``note <onset> <pitch> <duration>`` uses absolute pitch 21..108, stored as
key 0..87. Files holding only '0'/'1' characters are pre-encoded strings and
bypass the codec.
"""

from __future__ import annotations

from dataclasses import dataclass, field

NUM_KEYS = 88
LOWEST_PITCH = 21
HIGHEST_PITCH = LOWEST_PITCH + NUM_KEYS - 1
SEPARATOR = "#"


class ScoreError(ValueError):
    """Base class for malformed or invalid score input."""


class ScoreParseError(ScoreError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScoreRangeError(ScoreParseError):
    """Pitch outside the 88-key range."""


class ScoreBoundsError(ScoreParseError):
    """Note extends past the declared number of steps."""


@dataclass(frozen=True)
class NoteEvent:
    onset: int
    key: int
    duration: int

    def __post_init__(self):
        if not 0 <= self.key < NUM_KEYS:
            raise ScoreRangeError(f"key {self.key} outside 0..{NUM_KEYS - 1}")
        if self.onset < 0:
            raise ScoreError(f"negative onset {self.onset}")
        if self.duration < 1:
            raise ScoreError(f"duration must be >= 1, got {self.duration}")

    @property
    def end(self) -> int:
        return self.onset + self.duration


@dataclass
class Score:
    id: str
    num_steps: int
    events: list[NoteEvent] = field(default_factory=list)
    composer: str | None = None

    def validate(self) -> None:
        if self.num_steps < 0:
            raise ScoreError(f"negative step count {self.num_steps}")
        for ev in self.events:
            if ev.end > self.num_steps:
                raise ScoreBoundsError(
                    f"note at onset {ev.onset} with duration {ev.duration} "
                    f"exceeds {self.num_steps} steps"
                )


def _parse_int(token: str, what: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ScoreParseError(f"{what}: expected integer, got {token!r}", lineno) from None


def parse_score_file(data: bytes, score_id: str = "", composer: str | None = None) -> Score:
    """Parse a score document into a validated :class:`Score`."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ScoreParseError(f"not UTF-8: {exc}") from None

    num_steps = None
    events: list[NoteEvent] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "steps":
            if num_steps is not None:
                raise ScoreParseError("duplicate 'steps' header", lineno)
            if len(parts) != 2:
                raise ScoreParseError("expected 'steps <T>'", lineno)
            num_steps = _parse_int(parts[1], "steps", lineno)
            if num_steps < 0:
                raise ScoreParseError(f"steps must be >= 0, got {num_steps}", lineno)
        elif kind == "note":
            if num_steps is None:
                raise ScoreParseError("'note' before 'steps' header", lineno)
            if len(parts) != 4:
                raise ScoreParseError("expected 'note <onset> <pitch> <duration>'", lineno)
            onset = _parse_int(parts[1], "onset", lineno)
            pitch = _parse_int(parts[2], "pitch", lineno)
            duration = _parse_int(parts[3], "duration", lineno)
            if not LOWEST_PITCH <= pitch <= HIGHEST_PITCH:
                raise ScoreRangeError(
                    f"pitch {pitch} outside {LOWEST_PITCH}..{HIGHEST_PITCH}", lineno
                )
            if onset < 0:
                raise ScoreParseError(f"onset must be >= 0, got {onset}", lineno)
            if duration < 1:
                raise ScoreParseError(f"duration must be >= 1, got {duration}", lineno)
            if onset + duration > num_steps:
                raise ScoreBoundsError(
                    f"note ends at step {onset + duration}, past {num_steps} steps", lineno
                )
            events.append(NoteEvent(onset, pitch - LOWEST_PITCH, duration))
        else:
            raise ScoreParseError(f"unknown record {kind!r}", lineno)

    if num_steps is None:
        raise ScoreParseError("missing 'steps' header")
    return Score(id=score_id, num_steps=num_steps, events=events, composer=composer)


def encode_score(score: Score) -> str:
    """Serialize to the piano-roll string: index ``88*t + k`` is '1' iff key k sounds at step t."""
    score.validate()
    cells = bytearray(b"0" * (NUM_KEYS * score.num_steps))
    for ev in score.events:
        for t in range(ev.onset, ev.end):
            cells[NUM_KEYS * t + ev.key] = ord("1")
    return cells.decode("ascii")


def decode_cells(encoded: str) -> set[tuple[int, int]]:
    """Return the set of (time, key) cells that are on."""
    if len(encoded) % NUM_KEYS:
        raise ValueError(f"length {len(encoded)} is not a multiple of {NUM_KEYS}")
    return {divmod(p, NUM_KEYS) for p, ch in enumerate(encoded) if ch == "1"}


def cells_to_string(cells: set[tuple[int, int]], num_steps: int) -> str:
    out = bytearray(b"0" * (NUM_KEYS * num_steps))
    for t, k in cells:
        out[NUM_KEYS * t + k] = ord("1")
    return out.decode("ascii")


def is_binary_string(s: str) -> bool:
    return bool(s) and not s.strip("01")


def read_encoded(data: bytes, score_id: str = "") -> str:
    """Load either a pre-encoded '0'/'1' file or a score document, returning the string form."""
    text = data.decode("utf-8", errors="replace")
    body = text[:-1] if text.endswith("\n") else text
    if is_binary_string(body):
        return body
    return encode_score(parse_score_file(data, score_id))


def concat_group(encoded: list[str]) -> str:
    """Join a group's strings with a single '#' so no 0/1 pattern spans two scores."""
    if not encoded:
        raise ValueError("cannot concatenate an empty group")
    return SEPARATOR.join(encoded)
