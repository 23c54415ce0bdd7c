"""DIMACS ``.col`` reading and writing.

Files carry a ``p edge <n> <m>`` header and ``e <u> <v>`` lines with 1-based
endpoints. Lines starting with ``c`` are comments. Writing is canonical: each
edge once with ``u < v``, sorted lexicographically.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import ChiboundError, ParseError
from .graph import Graph, make_graph


def parse_dimacs(text: str) -> Graph:
    order = None
    declared_edges = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        fields = line.split()
        try:
            if fields[0] == "p":
                if order is not None:
                    raise ParseError(f"line {lineno}: duplicate problem line")
                if len(fields) != 4 or fields[1] not in ("edge", "col"):
                    raise ParseError(f"line {lineno}: expected 'p edge <n> <m>'")
                order, declared_edges = int(fields[2]), int(fields[3])
            elif fields[0] == "e":
                if order is None:
                    raise ParseError(f"line {lineno}: edge before problem line")
                if len(fields) != 3:
                    raise ParseError(f"line {lineno}: expected 'e <u> <v>'")
                edges.append((int(fields[1]) - 1, int(fields[2]) - 1))
            else:
                raise ParseError(f"line {lineno}: unknown line type {fields[0]!r}")
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if order is None:
        raise ParseError("missing 'p edge' line")
    try:
        G = make_graph(order, edges)
    except ChiboundError as exc:
        raise ParseError(str(exc)) from None
    # Some generators list each edge in both directions, so a header count above the
    # number of distinct edges is tolerated.
    if declared_edges is not None and G.n_edges > declared_edges:
        raise ParseError(f"header declares {declared_edges} edges but file has {G.n_edges}")
    return G


def format_dimacs(G: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {G.order} {G.n_edges}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def read_dimacs(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_dimacs(text)


def write_dimacs(G: Graph, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_dimacs(G, comments))
