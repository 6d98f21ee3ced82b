"""Text formats: edge lists, colourings, rotation systems and graph6 import.

Edge list::

    # comment
    n m
    u v        (m lines, 0-based ids below n)

Colouring: one ``u v colour`` line per edge.  Rotation system: one
``v: u1 u2 ... ud`` line per vertex.  Blank lines and ``#`` comments are
ignored everywhere.  Serialisers emit sorted, comment-free text, so
``format_x(parse_x(text)) == text`` for text already in that form.
"""

from __future__ import annotations

from collections.abc import Iterator
from pathlib import Path

import networkx as nx

from .embedding import RotationSystem
from .errors import EmbeddingError, FormatError, GraphError
from .graph import EdgeColouring, Graph, edge_key


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _ints(line: str, count: int | None, path, no: int) -> list[int]:
    parts = line.split()
    if count is not None and len(parts) != count:
        raise FormatError(f"expected {count} integers, got {line!r}", path, no)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"non-integer token in {line!r}", path, no) from None


# -- graphs ------------------------------------------------------------------


def parse_graph(text: str, path=None) -> Graph:
    rows = list(_lines(text))
    if not rows:
        raise FormatError("empty graph file: header 'n m' missing", path, 1)
    no, header = rows[0]
    n, m = _ints(header, 2, path, no)
    if n < 0 or m < 0:
        raise FormatError("n and m must be non-negative", path, no)
    edges = []
    seen = set()
    for no, line in rows[1:]:
        u, v = _ints(line, 2, path, no)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex id out of range 0..{n - 1}: {line!r}", path, no)
        if u == v:
            raise FormatError(f"self-loop at {u}", path, no)
        key = edge_key(u, v)
        if key in seen:
            raise FormatError(f"repeated edge {u}-{v}", path, no)
        seen.add(key)
        edges.append(key)
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}", path, rows[0][0])
    return Graph(range(n), edges)


def format_graph(g: Graph) -> str:
    """Header uses ``n = max id + 1``; ids missing from ``g`` come back as isolated vertices."""
    n = g.next_id()
    lines = [f"{n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str, path=None) -> Graph:
    """First graph of a graph6 file (header optional)."""
    for no, line in _lines(text):
        try:
            nxg = nx.from_graph6_bytes(line.removeprefix(">>graph6<<").encode("ascii"))
        except (nx.NetworkXError, ValueError, IndexError, UnicodeEncodeError) as exc:
            raise FormatError(f"bad graph6 record: {exc}", path, no) from None
        return Graph(nxg.nodes, nxg.edges)
    raise FormatError("no graph6 record found", path, 1)


def read_graph(path: str | Path) -> Graph:
    path = Path(path)
    text = _read(path)
    if path.suffix in (".g6", ".graph6") or text.startswith(">>graph6<<"):
        return parse_graph6(text, path)
    return parse_graph(text, path)


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


# -- colourings --------------------------------------------------------------


def parse_colouring(text: str, g: Graph | None = None, path=None) -> EdgeColouring:
    colours = {}
    for no, line in _lines(text):
        u, v, c = _ints(line, 3, path, no)
        if c < 1:
            raise FormatError(f"colours start at 1, got {c}", path, no)
        key = edge_key(u, v)
        if key in colours:
            raise FormatError(f"edge {u}-{v} coloured twice", path, no)
        if g is not None and not g.has_edge(u, v):
            raise FormatError(f"{u}-{v} is not an edge of the graph", path, no)
        colours[key] = c
    return EdgeColouring(colours, max(colours.values(), default=1))


def format_colouring(col: EdgeColouring) -> str:
    return "".join(f"{u} {v} {c}\n" for (u, v), c in sorted(col.items()))


def read_colouring(path: str | Path, g: Graph | None = None) -> EdgeColouring:
    return parse_colouring(_read(Path(path)), g, path)


# -- rotation systems --------------------------------------------------------


def parse_rotation(text: str, g: Graph | None = None, path=None) -> RotationSystem:
    rot: dict[int, list[int]] = {}
    for no, line in _lines(text):
        head, sep, rest = line.partition(":")
        if not sep:
            raise FormatError(f"expected 'v: u1 u2 ...', got {line!r}", path, no)
        (v,) = _ints(head, 1, path, no)
        if v in rot:
            raise FormatError(f"rotation of {v} given twice", path, no)
        rot[v] = _ints(rest, None, path, no) if rest.strip() else []
    try:
        if g is None:
            return RotationSystem(rot)
        return RotationSystem.from_graph(g, rot)
    except (EmbeddingError, GraphError) as exc:
        raise FormatError(str(exc), path) from None


def format_rotation(rs: RotationSystem) -> str:
    return "".join(
        f"{v}: {' '.join(map(str, ns))}\n" if ns else f"{v}:\n" for v, ns in rs.items()
    )


def read_rotation(path: str | Path, g: Graph | None = None) -> RotationSystem:
    return parse_rotation(_read(Path(path)), g, path)


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read file: {exc.strerror}", path) from None
    except UnicodeDecodeError:
        raise FormatError("file is not UTF-8 text", path) from None
