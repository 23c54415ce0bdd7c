"""Plain-text certificates for χ and ω.

A colouring certificate is a ``chi <k>`` line followed by one
``color <v> <c>`` line per vertex; a clique certificate is ``omega <k>``
followed by ``member <v>`` lines. Vertices are 0-based, colours 1-based.
"""

from __future__ import annotations

from .errors import ParseError
from .graph import Graph
from .solvers import CliqueCert, Coloring, verify_clique, verify_coloring


def format_coloring(c: Coloring) -> str:
    lines = [f"chi {c.colors_used}"]
    lines.extend(f"color {v} {col}" for v, col in enumerate(c.assignment))
    return "\n".join(lines) + "\n"


def format_clique(q: CliqueCert) -> str:
    lines = [f"omega {len(q.vertices)}"]
    lines.extend(f"member {v}" for v in q.vertices)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> tuple[str, int, Coloring | CliqueCert]:
    """Return ``(kind, claimed value, certificate)`` where kind is ``chi`` or ``omega``."""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if not rows or len(rows[0]) != 2 or rows[0][0] not in ("chi", "omega"):
        raise ParseError("certificate must start with 'chi <k>' or 'omega <k>'")
    kind = rows[0][0]
    try:
        value = int(rows[0][1])
        if kind == "chi":
            colors: dict[int, int] = {}
            for row in rows[1:]:
                if len(row) != 3 or row[0] != "color":
                    raise ParseError(f"expected 'color <v> <c>', got {' '.join(row)!r}")
                v, c = int(row[1]), int(row[2])
                if v in colors:
                    raise ParseError(f"vertex {v} coloured twice")
                colors[v] = c
            if sorted(colors) != list(range(len(colors))):
                raise ParseError("colour lines must cover vertices 0..n-1")
            assignment = tuple(colors[v] for v in range(len(colors)))
            return kind, value, Coloring(len(set(assignment)), assignment)
        members = []
        for row in rows[1:]:
            if len(row) != 2 or row[0] != "member":
                raise ParseError(f"expected 'member <v>', got {' '.join(row)!r}")
            members.append(int(row[1]))
        return kind, value, CliqueCert(tuple(members))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def check_certificate(G: Graph, text: str) -> tuple[str, int, bool]:
    """Parse and verify a certificate against ``G``; the claimed value must match the certificate."""
    kind, value, cert = parse_certificate(text)
    if isinstance(cert, Coloring):
        ok = cert.colors_used == value and max(cert.assignment, default=0) == value and verify_coloring(G, cert)
    else:
        ok = len(cert.vertices) == value and verify_clique(G, cert)
    return kind, value, ok
