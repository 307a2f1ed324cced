"""Edge-list and graph6 reading/writing.

Edge-list format: first line ``n m``, then ``m`` lines ``u v`` with 0-based
ids.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator

from .config import DEFAULT
from .graph import Graph


class FormatError(ValueError):
    pass


def _check_cap(n: int, cap: int | None) -> None:
    cap = DEFAULT.vertex_cap if cap is None else cap
    if n > cap:
        raise FormatError(f"graph has {n} vertices, above the configured cap of {cap}")


def parse_edge_list(text: str, cap: int | None = None) -> Graph:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise FormatError("empty edge list")
    try:
        n, m = (int(x) for x in rows[0])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    _check_cap(n, cap)
    seen = set()
    for u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge {u} {v}")
        seen.add(key)
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def _graph6_size(data: bytes) -> tuple[int, bytes]:
    if not data:
        raise FormatError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, data[1:]
    if len(data) > 1 and data[1] == 126:
        digits, rest = data[2:8], data[8:]
    else:
        digits, rest = data[1:4], data[4:]
    n = 0
    for c in digits:
        n = (n << 6) | (c - 63)
    return n, rest


def parse_graph6(line: str, cap: int | None = None) -> Graph:
    data = line.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    raw = data.encode("ascii")
    if any(c < 63 or c > 126 for c in raw):
        raise FormatError(f"invalid graph6 character in {line!r}")
    n, body = _graph6_size(raw)
    _check_cap(n, cap)
    bits = []
    for c in body:
        v = c - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise FormatError(f"graph6 body too short for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def format_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)]
    else:
        raise ValueError("graph too large for graph6")
    bits = [int(g.has_edge(i, j)) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


def read_graph(path: str | Path, cap: int | None = None) -> Graph:
    """Read one graph; graph6 when the suffix is ``.g6``, edge list otherwise."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".g6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise FormatError(f"{path}: expected exactly one graph6 line, found {len(lines)}")
        return parse_graph6(lines[0], cap)
    return parse_edge_list(text, cap)


def iter_graph6(lines: Iterable[str], cap: int | None = None) -> Iterator[Graph]:
    for line in lines:
        if line.strip():
            yield parse_graph6(line, cap)
