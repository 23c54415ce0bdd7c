"""Exact clique number, chromatic number and restricted chromatic number.

Every solver returns a certificate that :func:`verify_coloring` or
:func:`verify_clique` can check without trusting the search. All searches
take a time budget in seconds; running out of time never produces a wrong
value, only a bound with ``timed_out`` set.

The ``brute_force_*`` functions are deliberately naive oracles used to
cross-check the real solvers. They share no code with them beyond the
:class:`Graph` type.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Union

from .errors import InvalidParameter, SolverTimeout, TooLarge
from .graph import Graph, VertexSet, bits, component_masks, induced_subgraph, mask_of

DEFAULT_BUDGET = 120.0
BUDGET_ENV = "CHIBOUND_BUDGET"
BRUTE_FORCE_CAP = 12

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))


def default_budget() -> float:
    value = os.environ.get(BUDGET_ENV)
    return float(value) if value else DEFAULT_BUDGET


@dataclass(frozen=True)
class Coloring:
    """A colouring with colours ``1..colors_used``; ``assignment[v]`` is the colour of ``v``."""

    colors_used: int
    assignment: tuple[int, ...]

    @classmethod
    def canonical(cls, assignment) -> "Coloring":
        """Relabel colours in order of first appearance along vertex index."""
        relabel: dict[int, int] = {}
        out = []
        for c in assignment:
            if c not in relabel:
                relabel[c] = len(relabel) + 1
            out.append(relabel[c])
        return cls(len(relabel), tuple(out))


@dataclass(frozen=True)
class CliqueCert:
    vertices: VertexSet


Certificate = Union[Coloring, CliqueCert, None]


@dataclass
class SolveResult:
    """Outcome of an exact solve.

    When ``timed_out`` is false, ``lower == value == upper``. Otherwise
    ``value`` is the bound the certificate attains (a lower bound for ω, an
    upper bound for χ) and the other side is kept in ``lower``/``upper``.
    """

    value: int
    certificate: Certificate
    lower: int
    upper: int
    nodes: int = 0
    elapsed: float = 0.0
    timed_out: bool = False

    @property
    def exact(self) -> bool:
        return not self.timed_out


@dataclass
class RestrictedChiResult:
    n: int
    value: int
    witness: VertexSet
    nodes: int = 0
    elapsed: float = 0.0
    timed_out: bool = False


class Clock:
    """Node counter with a wall-clock deadline checked every few hundred ticks."""

    def __init__(self, budget: float | None):
        self.start = time.monotonic()
        self.deadline = None if budget is None else self.start + budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and not self.nodes & 0xFF and time.monotonic() > self.deadline:
            raise SolverTimeout(f"budget exhausted after {self.nodes} nodes")

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start


# --- certificate checks -----------------------------------------------------


def verify_coloring(G: Graph, c: Coloring) -> bool:
    if len(c.assignment) != G.order:
        return False
    if any(not 1 <= col <= c.colors_used for col in c.assignment):
        return False
    if len(set(c.assignment)) != c.colors_used:
        return False
    return all(c.assignment[u] != c.assignment[v] for u, v in G.edges())


def verify_clique(G: Graph, S) -> bool:
    verts = list(S.vertices if isinstance(S, CliqueCert) else S)
    if len(set(verts)) != len(verts) or any(not 0 <= v < G.order for v in verts):
        return False
    return all(G.has_edge(u, v) for u, v in combinations(verts, 2))


# --- maximum clique ---------------------------------------------------------


def _color_sort(adj: tuple[int, ...], P: int) -> tuple[list[int], list[int]]:
    """Greedy colour classes of ``P``; returns vertices and their class numbers, ascending."""
    order: list[int] = []
    colors: list[int] = []
    k = 0
    uncolored = P
    while uncolored:
        k += 1
        Q = uncolored
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            uncolored ^= low
            Q &= ~low & ~adj[v]
            order.append(v)
            colors.append(k)
    return order, colors


def _max_clique(G: Graph, within: int, clock: Clock, best: list[int]) -> None:
    """Branch and bound for a maximum clique of ``G[within]``; improves ``best`` in place.

    Vertices are relabelled by non-increasing degree so that the greedy
    colouring bound sees high-degree pivots first.
    """
    verts = sorted(bits(within), key=lambda v: (-(G.adj[v] & within).bit_count(), v))
    pos = {v: i for i, v in enumerate(verts)}
    adj = tuple(mask_of(pos[u] for u in bits(G.adj[v] & within)) for v in verts)

    def expand(R: list[int], P: int) -> None:
        clock.tick()
        order, colors = _color_sort(adj, P)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + colors[i] <= len(best):
                return
            v = order[i]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best[:] = sorted(verts[u] for u in R)
            R.pop()
            P &= ~(1 << v)

    if verts:
        expand([], (1 << len(verts)) - 1)


def _lex_least_clique(G: Graph, size: int, clock: Clock) -> VertexSet | None:
    """The lexicographically least clique of ``size`` vertices, scanning ascending."""

    def grow(R: list[int], P: int) -> list[int] | None:
        if len(R) == size:
            return R
        clock.tick()
        need = size - len(R)
        _, colors = _color_sort(G.adj, P)
        if not colors or colors[-1] < need:
            return None
        while P.bit_count() >= need:
            low = P & -P
            P ^= low
            v = low.bit_length() - 1
            found = grow(R + [v], P & G.adj[v])
            if found:
                return found
        return None

    found = grow([], G.all_mask)
    return None if found is None else tuple(found)


def _remaining(budget: float | None, clock: Clock) -> float | None:
    return None if budget is None else max(budget - clock.elapsed, 0.0)


def clique_number(G: Graph, budget: float | None = DEFAULT_BUDGET) -> SolveResult:
    """Exact ω(G) with the lexicographically least maximum clique as certificate.

    If the budget runs out while picking the least clique, the clique found
    by the search is reported instead; the value is still exact.
    """
    clock = Clock(budget)
    best: list[int] = []
    timed_out = False
    try:
        _max_clique(G, G.all_mask, clock, best)
    except SolverTimeout:
        timed_out = True
    upper = G.order if timed_out else len(best)
    if not timed_out and best:
        try:
            best = list(_lex_least_clique(G, len(best), Clock(_remaining(budget, clock))))
        except SolverTimeout:
            pass
    return SolveResult(len(best), CliqueCert(tuple(best)), len(best), upper,
                       clock.nodes, clock.elapsed, timed_out)


# --- colouring --------------------------------------------------------------


def _dsatur_greedy(G: Graph, within: int) -> dict[int, int]:
    """Greedy DSATUR colouring of ``G[within]``; colours start at 1."""
    color: dict[int, int] = {}
    seen: dict[int, int] = {v: 0 for v in bits(within)}  # bitmask of neighbour colours
    uncolored = within
    while uncolored:
        v = max(bits(uncolored),
                key=lambda u: (seen[u].bit_count(), (G.adj[u] & uncolored).bit_count(), -u))
        c = 1
        while seen[v] >> c & 1:
            c += 1
        color[v] = c
        uncolored &= ~(1 << v)
        for u in bits(G.adj[v] & uncolored):
            seen[u] |= 1 << c
    return color


def _k_color(G: Graph, within: int, k: int, clock: Clock) -> dict[int, int] | None:
    """Exact k-colourability of ``G[within]`` by DSATUR-ordered backtracking.

    A vertex may only open colour ``used + 1``, which removes colour
    permutation symmetry. Raises :class:`SolverTimeout`.
    """
    adj = G.adj
    classes = [0] * (k + 1)
    color: dict[int, int] = {}
    state = {"uncolored": within}

    def search(used: int) -> bool:
        uncolored = state["uncolored"]
        if not uncolored:
            return True
        clock.tick()
        pick, pick_key = -1, None
        for v in bits(uncolored):
            nb = adj[v]
            sat = 0
            for c in range(1, used + 1):
                if nb & classes[c]:
                    sat += 1
            if sat >= k:
                return False
            key = (sat, (nb & uncolored).bit_count())
            if pick_key is None or key > pick_key:
                pick, pick_key = v, key
        bit = 1 << pick
        nb = adj[pick]
        for c in range(1, min(used + 1, k) + 1):
            if nb & classes[c]:
                continue
            classes[c] |= bit
            color[pick] = c
            state["uncolored"] = uncolored & ~bit
            if search(max(used, c)):
                return True
            classes[c] &= ~bit
            state["uncolored"] = uncolored
        color.pop(pick, None)
        return False

    if k == 0:
        return {} if not within else None
    return dict(color) if search(0) else None


def _component_chi(G: Graph, comp: int, floor: int, clock: Clock) -> tuple[dict[int, int], int, int, bool]:
    """Colour one component; returns (colouring, lower, upper, timed_out).

    If the greedy colouring already fits within ``floor`` colours the exact
    search is skipped, since the component cannot raise the overall value.
    """
    greedy = _dsatur_greedy(G, comp)
    upper = max(greedy.values())
    if upper <= floor:
        return greedy, 0, upper, False
    best_clique: list[int] = []
    try:
        _max_clique(G, comp, clock, best_clique)
    except SolverTimeout:
        return greedy, max(len(best_clique), 1), upper, True
    lower = len(best_clique)
    for k in range(max(lower, floor), upper):
        try:
            found = _k_color(G, comp, k, clock)
        except SolverTimeout:
            return greedy, k, upper, True
        if found is not None:
            return found, k, k, False
    return greedy, upper, upper, False


def chromatic_number(G: Graph, budget: float | None = DEFAULT_BUDGET) -> SolveResult:
    """Exact χ(G), solved component by component, largest first."""
    clock = Clock(budget)
    if G.order == 0:
        return SolveResult(0, Coloring(0, ()), 0, 0)
    comps = sorted(component_masks(G), key=lambda c: (-c.bit_count(), c))
    assignment = [0] * G.order
    lower = upper = 0
    timed_out = False
    for comp in comps:
        col, lo, up, to = _component_chi(G, comp, upper if not timed_out else 0, clock)
        timed_out |= to
        lower = max(lower, lo)
        upper = max(upper, up)
        for v, c in col.items():
            assignment[v] = c
    if not timed_out:
        try:
            assignment = _lex_least_coloring(G, upper, Clock(_remaining(budget, clock)))
        except SolverTimeout:
            pass
    coloring = Coloring.canonical(assignment)
    return SolveResult(coloring.colors_used, coloring, lower if timed_out else upper, upper,
                       clock.nodes, clock.elapsed, timed_out)


def _lex_least_coloring(G: Graph, k: int, clock: Clock) -> list[int]:
    """The lexicographically least proper k-colouring (as a colour vector), k >= χ(G).

    Components are independent, so the least vector is the union of the
    least colouring of each component scanned in ascending vertex order.
    """
    adj = G.adj
    assignment = [0] * G.order
    for comp in component_masks(G):
        verts = list(bits(comp))
        classes = [0] * (k + 1)

        def fits(u: int) -> bool:
            return any(not adj[u] & classes[c] for c in range(1, k + 1))

        def place(i: int, used: int, later: int) -> bool:
            if i == len(verts):
                return True
            clock.tick()
            v = verts[i]
            bit = 1 << v
            later &= ~bit
            for c in range(1, min(used + 1, k) + 1):
                if adj[v] & classes[c]:
                    continue
                classes[c] |= bit
                assignment[v] = c
                if all(fits(u) for u in bits(adj[v] & later)) and place(i + 1, max(used, c), later):
                    return True
                classes[c] &= ~bit
            return False

        if not place(0, 0, comp):
            raise ValueError(f"component is not {k}-colourable")
    return assignment


def k_colorable(G: Graph, k: int, budget: float | None = DEFAULT_BUDGET) -> Coloring | None:
    """Return a proper colouring with at most ``k`` colours, or None if none exists.

    Raises :class:`SolverTimeout` when the search is inconclusive.
    """
    if k < 0:
        raise InvalidParameter(f"k must be non-negative, got {k}")
    clock = Clock(budget)
    assignment = [0] * G.order
    for comp in component_masks(G):
        found = _k_color(G, comp, k, clock)
        if found is None:
            return None
        for v, c in found.items():
            assignment[v] = c
    return Coloring.canonical(assignment)


# --- restricted chromatic number ---------------------------------------------


def _cliques_of_size(G: Graph, size: int) -> list[int]:
    out: list[int] = []

    def grow(mask: int, cand: int, left: int) -> None:
        if left == 0:
            out.append(mask)
            return
        while cand.bit_count() >= left:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            grow(mask | low, cand & G.adj[v], left - 1)

    grow(0, G.all_mask, size)
    return out


def _restricted_component(G: Graph, n: int, clock: Clock, best: list[int]) -> None:
    """χ^{(n)} of a connected graph by branching over clique transversals.

    Every induced subgraph with ω ≤ n is ``G - D`` for some set ``D`` meeting
    all (n+1)-cliques, and χ only drops as ``D`` grows, so it suffices to
    branch on which vertex of an unhit clique to delete. ``best`` holds
    ``[value, witness mask]`` and survives a :class:`SolverTimeout`.
    """
    full = G.all_mask
    best[:] = [1, full & -full]
    cliques = _cliques_of_size(G, n + 1)
    if not cliques:
        best[:] = [chromatic_number_within(G, full, clock), full]
        return
    # ω(H) ≤ 1 means H is edgeless.
    cap = 1 if n == 1 else G.order

    def branch(deleted: int, kept: int) -> None:
        clock.tick()
        if best[0] >= cap:
            return
        remaining = full & ~deleted
        if max(_dsatur_greedy(G, remaining).values(), default=0) <= best[0]:
            return
        target = 0
        for q in cliques:
            if q & deleted:
                continue
            free = q & ~kept
            if not free:
                return
            if not target or free.bit_count() < target.bit_count():
                target = free
                if target.bit_count() == 1:
                    break
        if not target:
            value = chromatic_number_within(G, remaining, clock)
            if value > best[0]:
                best[:] = [value, remaining]
            return
        for v in bits(target):
            branch(deleted | 1 << v, kept)
            kept |= 1 << v

    branch(0, 0)


def chromatic_number_within(G: Graph, within: int, clock: Clock) -> int:
    """Exact χ(G[within]) on a shared clock; raises :class:`SolverTimeout`."""
    value = 0
    for comp in sorted(component_masks(G, within), key=lambda c: -c.bit_count()):
        col, lo, up, to = _component_chi(G, comp, value, clock)
        if to:
            raise SolverTimeout("budget exhausted inside restricted search")
        value = max(value, up)
    return value


def chi_restricted(G: Graph, n: int, budget: float | None = DEFAULT_BUDGET) -> RestrictedChiResult:
    """Exact χ^{(n)}(G): the largest χ of an induced subgraph with clique number ≤ n."""
    if n < 0:
        raise InvalidParameter(f"n must be non-negative, got {n}")
    clock = Clock(budget)
    if n == 0 or G.order == 0:
        return RestrictedChiResult(n, 0, ())
    value, witness, timed_out = 0, 0, False
    # Both ω and χ of a disjoint union are maxima over components.
    for comp in component_masks(G):
        H, index = induced_subgraph(G, bits(comp))
        best: list[int] = [0, 0]
        try:
            _restricted_component(H, n, clock, best)
        except SolverTimeout:
            timed_out = True
        value = max(value, best[0])
        witness |= mask_of(index[i] for i in bits(best[1]))
        if timed_out:
            break
    return RestrictedChiResult(n, value, tuple(bits(witness)), clock.nodes, clock.elapsed, timed_out)


# --- oracles ------------------------------------------------------------------


def _check_cap(G: Graph) -> None:
    if G.order > BRUTE_FORCE_CAP:
        raise TooLarge(f"brute force is capped at {BRUTE_FORCE_CAP} vertices, got {G.order}")


def brute_force_omega(G: Graph) -> int:
    """Largest clique by scanning every vertex subset."""
    _check_cap(G)
    edges = set(G.edges())
    best = 0
    for size in range(1, G.order + 1):
        if any(all((u, v) in edges for u, v in combinations(S, 2))
               for S in combinations(range(G.order), size)):
            best = size
        else:
            break
    return best


def brute_force_chi(G: Graph) -> int:
    """Smallest k admitting a proper assignment, by exhaustive enumeration.

    Assignments are enumerated as restricted growth strings (vertex ``i``
    may use at most one colour beyond those used by vertices ``< i``), which
    covers every colouring up to renaming colours. Prefixes with a conflict
    are abandoned, which is still exhaustive.
    """
    _check_cap(G)
    n = G.order
    earlier = [[u for u in range(v) if G.has_edge(u, v)] for v in range(n)]

    def extend(assign: list[int], k: int) -> bool:
        i = len(assign)
        if i == n:
            return True
        for c in range(min(max(assign, default=-1) + 2, k)):
            if all(assign[u] != c for u in earlier[i]):
                assign.append(c)
                if extend(assign, k):
                    return True
                assign.pop()
        return False

    k = 0
    while not extend([], k):
        k += 1
    return k


def _subset_tables(G: Graph) -> tuple[list[int], list[int]]:
    """ω and χ of every induced subgraph, indexed by vertex bitmask."""
    n = G.order
    size = 1 << n
    omega = [0] * size
    indep = [True] * size
    chi = [0] * size
    for S in range(1, size):
        low = S & -S
        v = low.bit_length() - 1
        rest = S ^ low
        omega[S] = max(omega[rest], 1 + omega[rest & G.adj[v]])
        indep[S] = indep[rest] and not G.adj[v] & rest
        best = n
        sub = rest
        while True:
            if indep[sub | low]:
                best = min(best, 1 + chi[rest & ~sub])
            if not sub:
                break
            sub = (sub - 1) & rest
        chi[S] = best
    return omega, chi


def brute_force_chi_restricted(G: Graph, n: int) -> tuple[int, VertexSet]:
    """χ^{(n)} by scanning all vertex subsets with dynamic-programming tables."""
    _check_cap(G)
    if n < 0:
        raise InvalidParameter(f"n must be non-negative, got {n}")
    omega, chi = _subset_tables(G)
    best, witness = 0, 0
    for S in range(1 << G.order):
        if omega[S] <= n and chi[S] > best:
            best, witness = chi[S], S
    return best, tuple(bits(witness))

