"""DIMACS ``.col`` graph files: 1-based on disk, 0-based in memory."""

import logging
from typing import Iterable, List, Optional, Tuple, Union

from src.models.graph import Graph
from src.services.graph_ops import build_graph

logger = logging.getLogger(__name__)


class DimacsFormatError(Exception):
    """Malformed graph file; ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DimacsFormatError(f"{what} is not an integer: {token!r}", line)


def parse_graph_file(text: Union[bytes, str]) -> Graph:
    """
    Parse DIMACS edge format.

    ``c`` lines are comments, ``p edge <n> <m>`` must come before any
    ``e <u> <v>`` line.  Repeated edges collapse; an edge count that
    disagrees with the header is logged, not rejected.

    Raises:
        DimacsFormatError: On a malformed or missing header, an unknown line
            type, an endpoint out of range or a self-loop
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise DimacsFormatError(f"file is not UTF-8: {e}")

    n: Optional[int] = None
    declared_edges = 0
    edges: List[Tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise DimacsFormatError("duplicate problem line", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise DimacsFormatError("expected 'p edge <n> <m>'", lineno)
            n = _int(tokens[2], lineno, "vertex count")
            declared_edges = _int(tokens[3], lineno, "edge count")
            if n < 0 or declared_edges < 0:
                raise DimacsFormatError("counts must be non-negative", lineno)
        elif kind == "e":
            if n is None:
                raise DimacsFormatError("edge before problem line", lineno)
            if len(tokens) != 3:
                raise DimacsFormatError("expected 'e <u> <v>'", lineno)
            u = _int(tokens[1], lineno, "endpoint")
            v = _int(tokens[2], lineno, "endpoint")
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsFormatError(f"endpoint out of range 1..{n}: {u} {v}", lineno)
            if u == v:
                raise DimacsFormatError(f"self-loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise DimacsFormatError(f"unknown line type {kind!r}", lineno)

    if n is None:
        raise DimacsFormatError("missing problem line 'p edge <n> <m>'")

    g = build_graph(n, edges)
    if g.edge_count != declared_edges:
        logger.warning(
            f"header declares {declared_edges} edges, file has {g.edge_count} distinct"
        )
    return g


def write_dimacs(g: Graph, comments: Iterable[str] = ()) -> str:
    """Canonical file text: comments, header, then edges sorted with ``u < v``."""
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"
