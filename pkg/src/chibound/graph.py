"""Immutable finite simple undirected graphs.

Vertices are the dense indices ``0..order-1``. Adjacency is stored as one
Python ``int`` bitmask per vertex, so set operations on neighbourhoods are
single integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import IndexOutOfRange, SelfLoop

VertexSet = tuple[int, ...]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    order: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 0 or len(self.adj) != self.order:
            raise IndexOutOfRange(f"adjacency length {len(self.adj)} != order {self.order}")
        full = (1 << self.order) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise IndexOutOfRange(f"vertex {v} has a neighbour outside 0..{self.order - 1}")
            if nb >> v & 1:
                raise SelfLoop(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @property
    def vertices(self) -> range:
        return range(self.order)

    @property
    def all_mask(self) -> int:
        return (1 << self.order) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return tuple(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        return [(u, v) for u in range(self.order) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def n_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.n_edges})"


def make_graph(order: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from an edge list; duplicates and orientation are ignored."""
    if order < 0:
        raise IndexOutOfRange(f"negative order {order}")
    adj = [0] * order
    for u, v in edges:
        if not (0 <= u < order and 0 <= v < order):
            raise IndexOutOfRange(f"edge ({u}, {v}) has an endpoint outside 0..{order - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(order, tuple(adj))


def empty_graph(order: int = 0) -> Graph:
    return Graph(order, (0,) * order)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def _check_subset(G: Graph, S: Iterable[int]) -> VertexSet:
    verts = tuple(sorted(set(S)))
    for v in verts:
        if not 0 <= v < G.order:
            raise IndexOutOfRange(f"vertex {v} outside 0..{G.order - 1}")
    return verts


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, VertexSet]:
    """Return ``G[S]`` re-indexed by ascending original index, plus the index map.

    ``index_map[i]`` is the original vertex that became vertex ``i``.
    """
    verts = _check_subset(G, S)
    pos = {v: i for i, v in enumerate(verts)}
    keep = mask_of(verts)
    adj = tuple(mask_of(pos[u] for u in bits(G.adj[v] & keep)) for v in verts)
    return Graph(len(verts), adj), verts


def induced_by_mask(G: Graph, keep: int) -> Graph:
    return induced_subgraph(G, bits(keep))[0]


def disjoint_union(G: Graph, H: Graph) -> Graph:
    shift = G.order
    return Graph(G.order + H.order, G.adj + tuple(nb << shift for nb in H.adj))


def component_masks(G: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by minimum vertex."""
    remaining = G.all_mask if within is None else within
    out = []
    while remaining:
        low = remaining & -remaining
        comp = frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.adj[v]
            frontier = nxt & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def components(G: Graph) -> list[VertexSet]:
    return [tuple(bits(c)) for c in component_masks(G)]


def is_connected(G: Graph) -> bool:
    """An empty graph is not connected; a single vertex is."""
    return len(component_masks(G)) == 1


def is_triangle_free(G: Graph) -> bool:
    for u in range(G.order):
        for v in bits(G.adj[u] >> (u + 1) << (u + 1)):
            if G.adj[u] & G.adj[v]:
                return False
    return True
