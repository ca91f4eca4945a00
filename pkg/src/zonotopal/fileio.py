"""Plain-text matrix and graph files.

Matrix file: a header line ``n m`` then ``n`` lines of ``m`` rationals.
Graph file: a header line ``v e`` then ``e`` lines ``u w`` (0-based).
Blank lines and lines starting with ``#`` are ignored in both.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

from .errors import ParseError
from .graphs import Graph
from .linalg import QMatrix, parse_rational


def _content_lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append(line.split())
    return out


def _header(lines: list[list[str]], what: str) -> tuple[int, int]:
    if not lines or len(lines[0]) != 2:
        raise ParseError(f"{what} file must start with a two-number header")
    try:
        a, b = int(lines[0][0]), int(lines[0][1])
    except ValueError:
        raise ParseError(f"bad {what} header: {' '.join(lines[0])!r}") from None
    if a < 0 or b < 0:
        raise ParseError(f"negative size in {what} header")
    return a, b


def parse_matrix(text: str) -> QMatrix:
    lines = _content_lines(text)
    n, m = _header(lines, "matrix")
    body = lines[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} matrix rows, found {len(body)}")
    rows = []
    for i, tokens in enumerate(body):
        if len(tokens) != m:
            raise ParseError(f"row {i} has {len(tokens)} entries, expected {m}")
        rows.append([parse_rational(t) for t in tokens])
    return QMatrix(n, m, (x for r in rows for x in r))


def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    v, e = _header(lines, "graph")
    body = lines[1:]
    if len(body) != e:
        raise ParseError(f"expected {e} edges, found {len(body)}")
    edges = []
    for tokens in body:
        if len(tokens) != 2:
            raise ParseError(f"edge line must have two vertices: {' '.join(tokens)!r}")
        try:
            edges.append((int(tokens[0]), int(tokens[1])))
        except ValueError:
            raise ParseError(f"bad edge {' '.join(tokens)!r}") from None
    try:
        return Graph(v, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_graph(G: Graph) -> str:
    return "\n".join([f"{G.v} {G.e}"] + [f"{a} {b}" for a, b in G.edges]) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def load_matrix(path: str | Path) -> QMatrix:
    return parse_matrix(read_text(path))


def load_graph(path: str | Path) -> Graph:
    return parse_graph(read_text(path))


def digest(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\0")
    return h.hexdigest()


DATA_DIR = Path(__file__).parent / "data"
EXAMPLE_MATRIX = DATA_DIR / "example_A.txt"
EXAMPLE_GRAPH = DATA_DIR / "example_G.txt"
