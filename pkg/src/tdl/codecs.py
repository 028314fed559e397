"""graph6 and edge-list JSON codecs."""

from __future__ import annotations

import json

from tdl.errors import CapacityError, ParseError, ValidationError
from tdl.graph import Graph

GRAPH6_MAX_N = 68719476735  # 2**36 - 1, the largest order graph6 can express
_HEADER = ">>graph6<<"

FORMATS = ("graph6", "json")


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= GRAPH6_MAX_N:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise CapacityError(f"graph6 cannot encode n={n} (limit {GRAPH6_MAX_N})")


def to_graph6(g: Graph) -> str:
    bits = [
        1 if g.has_edge(i, j) else 0
        for j in range(1, g.n)
        for i in range(j)
    ]
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2))
        for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def from_graph6(text: str) -> Graph:
    data = text.strip()
    base = 0
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
        base = len(_HEADER)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {ch!r} outside graph6 range 63..126", base + i)
    if not data:
        raise ParseError("empty graph6 string", base)

    def read_n() -> tuple[int, int]:
        if data[0] != "~":
            return ord(data[0]) - 63, 1
        if len(data) >= 2 and data[1] == "~":
            if len(data) < 8:
                raise ParseError("truncated 36-bit order field", base + len(data))
            chunk, width = data[2:8], 8
        else:
            if len(data) < 4:
                raise ParseError("truncated 18-bit order field", base + len(data))
            chunk, width = data[1:4], 4
        n = 0
        for ch in chunk:
            n = (n << 6) | (ord(ch) - 63)
        return n, width

    n, pos = read_n()
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} edge bytes for n={n}, found {len(body)}",
                         base + pos + min(len(body), need))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[k // 6]) - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    total = n * (n - 1) // 2
    for k in range(total, len(body) * 6):
        if (ord(body[k // 6]) - 63) >> (5 - k % 6) & 1:
            raise ParseError("non-zero padding bits", base + pos + k // 6)
    return Graph(n, edges)


def to_json_obj(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def from_json_obj(obj: object) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise ValidationError('edge-list JSON must be an object with keys "n" and "edges"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValidationError(f'"n" must be an integer, got {n!r}')
    edges = []
    for e in obj["edges"]:
        if (not isinstance(e, (list, tuple)) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise ValidationError(f"malformed edge {e!r}")
        edges.append(tuple(e))
    return Graph(n, edges)


def parse_graph(text: str, format: str = "json") -> Graph:
    """Decode a graph from graph6 or edge-list JSON text."""
    if format == "graph6":
        return from_graph6(text)
    if format == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.pos) from None
        return from_json_obj(obj)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Graph, format: str = "json") -> str:
    if format == "graph6":
        return to_graph6(g)
    if format == "json":
        return json.dumps(to_json_obj(g))
    raise ValueError(f"unknown graph format {format!r}")


def sniff_format(text: str) -> str:
    return "json" if text.lstrip().startswith("{") else "graph6"
