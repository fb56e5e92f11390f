"""graph6 encoding and decoding (nauty's ASCII format for simple graphs)."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import InvalidByte, LengthMismatch, MalformedHeader, NonzeroPadding
from .graph import Graph

HEADER = ">>graph6<<"


@lru_cache(maxsize=256)
def _triu_colmajor(n: int) -> tuple[np.ndarray, np.ndarray]:
    # lower-triangle row-major order is upper-triangle column-major order
    jj, ii = np.tril_indices(n, k=-1)
    return ii, jj


def _encode_size(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n < 1 << 18:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n < 1 << 36:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"n = {n} too large for graph6")


def _decode_size(data: bytes) -> tuple[int, int]:
    """Return ``(n, header_length)``."""
    if not data:
        raise MalformedHeader("empty graph6 record")
    for b in data[:8]:
        if not 63 <= b <= 126:
            raise InvalidByte(f"byte {b} outside 63..126 in size field")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedHeader("truncated 36-bit size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedHeader("truncated 18-bit size field")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def to_graph6(g: Graph) -> str:
    """Encode ``g`` as a graph6 record (no header, no newline)."""
    n = g.n
    head = _encode_size(n)
    if n < 2:
        return head.decode("ascii")
    ii, jj = _triu_colmajor(n)
    bits = g._matrix[ii, jj]
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6)
    values = groups @ np.array([32, 16, 8, 4, 2, 1], dtype=np.int64) + 63
    return (head + values.astype(np.uint8).tobytes()).decode("ascii")


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 record; an optional ``>>graph6<<`` prefix is stripped."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
    elif data.startswith(b">>"):
        raise MalformedHeader(f"unrecognised header in {data[:16]!r}")
    n, off = _decode_size(data)
    body = np.frombuffer(data[off:], dtype=np.uint8)
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    if body.size != expected:
        raise LengthMismatch(f"expected {expected} body bytes for n={n}, got {body.size}")
    if body.size and (body.min() < 63 or body.max() > 126):
        bad = body[(body < 63) | (body > 126)][0]
        raise InvalidByte(f"byte {int(bad)} outside 63..126")
    if n < 2:
        return Graph(n, (0,) * n)
    bits = np.unpackbits((body - 63).astype(np.uint8)[:, None], axis=1)[:, 2:].ravel()
    if bits[nbits:].any():
        raise NonzeroPadding("graph6 pad bits must be zero")
    a = np.zeros((n, n), dtype=np.uint8)
    ii, jj = _triu_colmajor(n)
    a[ii, jj] = bits[:nbits]
    a[jj, ii] = bits[:nbits]
    return Graph.from_matrix(a)


def read_graph6_lines(lines):
    """Yield ``(line_number, record)`` for non-blank lines, 1-based."""
    for k, line in enumerate(lines, start=1):
        s = line.strip()
        if s:
            yield k, s
