"""Compression-based dissimilarity ``C(xy) / (C(x) + C(y))``.

Backends:

``identity``
    size is the raw byte length (CDM is then always exactly 1).
``lzw``
    the fixed LZW scheme in :mod:`scoreinfo.lzw`; bit-stable across machines.
``external``
    any program whose standard output is the compressed data, e.g.
    ``bzip2 -c -9 {in}``. ``{in}`` is replaced by a temporary file path.

Every backend subtracts a constant ``offset`` from each measured size.
"""

from __future__ import annotations

import os
import shlex
import subprocess
import tempfile
from dataclasses import dataclass

from .lzw import lzw_encode_size

KINDS = ("identity", "lzw", "external")


class BackendError(RuntimeError):
    def __init__(self, message: str, returncode: int | None = None):
        super().__init__(message)
        self.returncode = returncode


class OffsetError(ValueError):
    pass


@dataclass(frozen=True)
class CompressorBackend:
    name: str
    kind: str = "identity"
    offset: int = 0
    command: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown backend kind {self.kind!r}; expected one of {KINDS}")
        if self.offset < 0:
            raise ValueError("offset must be non-negative")
        if self.kind == "external" and not self.command:
            raise ValueError("external backend needs a command template")


def make_backend(kind: str, offset: int = 0, command: str | None = None) -> CompressorBackend:
    return CompressorBackend(name=kind if not offset else f"{kind}+{offset}", kind=kind,
                             offset=offset, command=command)


def _as_bytes(data) -> bytes:
    return data.encode("latin-1") if isinstance(data, str) else bytes(data)


def _run_external(template: str, data: bytes) -> int:
    fd, path = tempfile.mkstemp(prefix="cdm-", suffix=".in")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        argv = [arg.replace("{in}", path) for arg in shlex.split(template)]
        try:
            proc = subprocess.run(argv, stdout=subprocess.PIPE, stderr=subprocess.PIPE)
        except OSError as exc:
            raise BackendError(f"cannot run {argv[0]!r}: {exc}") from exc
        if proc.returncode != 0:
            raise BackendError(
                f"{argv[0]} exited with status {proc.returncode}: "
                f"{proc.stderr.decode(errors='replace').strip()}",
                returncode=proc.returncode,
            )
        return len(proc.stdout)
    finally:
        os.unlink(path)


def raw_size(backend: CompressorBackend, data) -> int:
    data = _as_bytes(data)
    if not data:
        raise ValueError("data must be non-empty")
    if backend.kind == "identity":
        return len(data)
    if backend.kind == "lzw":
        return lzw_encode_size(data)
    return _run_external(backend.command, data)


def compress_size(backend: CompressorBackend, data) -> int:
    size = raw_size(backend, data)
    if backend.offset >= size:
        raise OffsetError(f"offset {backend.offset} >= measured size {size}")
    return size - backend.offset


def cdm(backend: CompressorBackend, x, y, *, cx: int | None = None, cy: int | None = None) -> float:
    """Dissimilarity of ``x`` and ``y``; smaller means more shared structure.

    ``cx`` / ``cy`` may pass in already-measured sizes of ``x`` and ``y``.
    """
    x, y = _as_bytes(x), _as_bytes(y)
    if not x or not y:
        raise ValueError("cdm needs two non-empty strings")
    if cx is None:
        cx = compress_size(backend, x)
    if cy is None:
        cy = compress_size(backend, y)
    return compress_size(backend, x + y) / (cx + cy)
