"""Fixed-parameter LZW used as the built-in CDM compressor.

Scheme (normative, so sizes are reproducible):

* dictionary starts with the 256 single bytes; next free code is 256
* codes are written at the current width, starting at 9 bits
* after an entry is added, the width grows by one once the next free code
  reaches ``2**width`` (so every assigned code stays representable)
* at ``2**16`` entries the dictionary is frozen; width stays 16
* bits are packed MSB-first (big-endian) and the last byte is zero-padded
"""

from __future__ import annotations

INITIAL_WIDTH = 9
MAX_WIDTH = 16
MAX_ENTRIES = 1 << MAX_WIDTH


def lzw_codes(data: bytes) -> list[tuple[int, int]]:
    """Return the emitted ``(code, width)`` pairs."""
    table = {bytes([i]): i for i in range(256)}
    next_code = 256
    width = INITIAL_WIDTH
    out: list[tuple[int, int]] = []
    w = b""
    for byte in data:
        wc = w + bytes([byte])
        if wc in table:
            w = wc
            continue
        out.append((table[w], width))
        if next_code < MAX_ENTRIES:
            table[wc] = next_code
            next_code += 1
            if next_code == 1 << width and width < MAX_WIDTH:
                width += 1
        w = bytes([byte])
    if w:
        out.append((table[w], width))
    return out


def lzw_encode(data: bytes) -> bytes:
    acc = 0
    nbits = 0
    for code, width in lzw_codes(data):
        acc = (acc << width) | code
        nbits += width
    pad = -nbits % 8
    return (acc << pad).to_bytes((nbits + pad) // 8, "big")


def lzw_encode_size(data: bytes) -> int:
    """Encoded size in bytes, ``ceil(total bits / 8)``."""
    if not data:
        raise ValueError("data must be non-empty")
    nbits = sum(width for _, width in lzw_codes(data))
    return (nbits + 7) // 8
