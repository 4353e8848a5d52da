"""graph6 encoding (undirected graphs only).

Layout: N(n) followed by the upper-triangle bits x(0,1), x(0,2), x(1,2),
x(0,3), ... (column by column), packed big-endian six to a byte and offset
by 63. N(n) is one byte for n < 63, ``~`` plus three bytes for
n < 258048, and ``~~`` plus six bytes above that.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from decksize.graph import Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    pass


def _encode_order(n: int) -> bytes:
    if n < 0:
        raise Graph6Error("negative order")
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return b"~" + bytes(63 + (n >> s & 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return b"~~" + bytes(63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0))
    raise Graph6Error(f"order {n} too large for graph6")


def _decode_order(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    chunk = data[start:start + width]
    if len(chunk) != width:
        raise Graph6Error("truncated order field")
    n = 0
    for b in chunk:
        n = (n << 6) | (b - 63)
    return n, start + width


_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


@lru_cache(maxsize=8)
def _column_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    # (j, i) pairs with i < j, sorted by j then i
    return np.tril_indices(n, -1)


def encode(g: Graph) -> bytes:
    n = g.n
    head = _encode_order(n)
    if n < 2:
        return head
    jj, ii = _column_order(n)
    bits = g.to_matrix()[ii, jj].astype(np.uint8)
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    body = bits.reshape(-1, 6) @ _WEIGHTS + 63
    return head + body.astype(np.uint8).tobytes()


def decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error("graph6 must be ASCII") from exc
    data = data.strip()
    if data.startswith(HEADER.encode()):
        data = data[len(HEADER):]
    raw = np.frombuffer(data, dtype=np.uint8)
    if ((raw < 63) | (raw > 126)).any():
        raise Graph6Error(f"illegal byte in graph6 string {data[:20]!r}")
    n, pos = _decode_order(data)
    nbits = n * (n - 1) // 2
    body = raw[pos:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    if n < 2:
        return Graph.empty(n)
    bits = np.unpackbits((body - 63).astype(np.uint8)[:, None], axis=1)[:, 2:].ravel()
    if bits[nbits:].any():
        raise Graph6Error("non-zero padding bits")
    jj, ii = _column_order(n)
    a = np.zeros((n, n), dtype=bool)
    a[ii, jj] = bits[:nbits].astype(bool)
    return Graph._from_bool_rows(a | a.T)


def encode_str(g: Graph) -> str:
    return encode(g).decode("ascii")
