"""Mycielskians, Mycielski towers, core providers and tagged blocks.

A tagged block for parameters ``(r, m)`` is the disjoint union of a *core*
graph with clique number ``r`` and chromatic number at least ``m`` and a
*tag*, the Mycielski tower ``T_r`` (triangle-free, connected, χ = r). The core
occupies the leading indices and the tag the trailing ``3 * 2**(r-2) - 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from pathlib import Path

from .dimacs import read_dimacs
from .errors import ClaimMismatch, InvalidParameter, ParseError, PreconditionFailed, SolverTimeout
from .graph import Graph, VertexSet, complete_graph, disjoint_union, make_graph
from .solvers import DEFAULT_BUDGET, clique_number, k_colorable

MYCIELSKI = "mycielski"


class Provenance(str, Enum):
    """How a reported χ value was established."""

    EXACT = "EXACT"  # proved by an exhaustive solver run
    BOUND = "BOUND"  # solver ran out of budget; value is a proved bound only
    CLAIM = "CLAIM"  # holds by construction, not re-proved here


@dataclass(frozen=True)
class MycielskiLayout:
    """Index layout of M(G): old ``v_i -> i``, shadows ``u_i -> n + i``, apex ``w -> 2n``."""

    base_order: int

    def old(self, i: int) -> int:
        return i

    def new(self, i: int) -> int:
        return self.base_order + i

    @property
    def apex(self) -> int:
        return 2 * self.base_order

    @property
    def order(self) -> int:
        return 2 * self.base_order + 1


def mycielskian(G: Graph) -> tuple[Graph, MycielskiLayout]:
    L = MycielskiLayout(G.order)
    edges = []
    for i, j in G.edges():
        edges.append((L.old(i), L.old(j)))
        edges.append((L.new(i), L.old(j)))
        edges.append((L.new(j), L.old(i)))
    edges.extend((L.apex, L.new(i)) for i in range(G.order))
    return make_graph(L.order, edges), L


def tower_order(r: int) -> int:
    return 3 * 2 ** (r - 2) - 1


def mycielski_tower(r: int) -> tuple[Graph, int]:
    """Return ``(T_r, claimed χ)`` with ``T_2 = K_2`` and ``T_{r+1} = M(T_r)``."""
    if r < 2:
        raise InvalidParameter(f"tower level must be >= 2, got {r}")
    T = complete_graph(2)
    for _ in range(r - 2):
        T, _ = mycielskian(T)
    return T, r


def provider_r2(m: int) -> Graph:
    """Core for r = 2: the tower ``T_max(m, 2)`` (ω = 2, χ = max(m, 2))."""
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m}")
    return mycielski_tower(max(m, 2))[0]


def compute_B(r: int) -> int:
    """Bound on χ of the core's induced subgraphs with clique number < r.

    Takes the maximum of f(1) = 1 and f(i) = C(3i+1, 3) for 2 <= i <= r-1.
    """
    if r < 2:
        raise InvalidParameter(f"r must be >= 2, got {r}")
    return max([1] + [comb(3 * i + 1, 3) for i in range(2, r)])


def compute_W(r: int) -> int:
    return max(compute_B(r), r)


# --- provider files -------------------------------------------------------------


def claims_path(graph_path: str | Path) -> Path:
    return Path(graph_path).with_suffix(".claims")


def write_claims(graph_path: str | Path, r: int, m: int, claimed_omega: int,
                 claimed_chi_lb: int, source: str) -> Path:
    path = claims_path(graph_path)
    doc = {"r": r, "m": m, "claimed_omega": claimed_omega,
           "claimed_chi_lb": claimed_chi_lb, "source": source}
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return path


def read_claims(graph_path: str | Path) -> dict | None:
    path = claims_path(graph_path)
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    return doc


@dataclass
class ProviderGraph:
    """A user-supplied core graph and what could be established about it."""

    graph: Graph
    r: int
    m: int
    omega: int
    chi_lb: int
    chi_provenance: Provenance
    source: str = ""


def load_provider_graph(r: int, m: int, path: str | Path,
                        budget: float | None = DEFAULT_BUDGET) -> ProviderGraph:
    """Load a core graph for ``r >= 3`` and check what can be checked.

    ω must equal ``r`` exactly. χ >= m is proved by exhausting the
    (m-1)-colouring search when the budget allows; otherwise the sidecar's
    ``claimed_chi_lb`` is accepted and labelled as a claim.
    """
    if r < 3:
        raise InvalidParameter(f"file providers are for r >= 3, got r = {r}")
    if m < 1:
        raise InvalidParameter(f"m must be >= 1, got {m}")
    G = read_dimacs(path)
    claims = read_claims(path) or {}
    for key, expected in (("r", r), ("m", m)):
        if key in claims and claims[key] != expected:
            raise ClaimMismatch(f"{path}: sidecar {key} = {claims[key]}, requested {expected}")

    om = clique_number(G, budget)
    if om.lower > r:
        raise ClaimMismatch(f"{path}: clique number {om.lower} exceeds r = {r}")
    if om.timed_out:
        raise PreconditionFailed(f"{path}: clique number not settled within budget")
    if om.value != r:
        raise ClaimMismatch(f"{path}: clique number is {om.value}, expected r = {r}")
    if "claimed_omega" in claims and claims["claimed_omega"] != om.value:
        raise ClaimMismatch(f"{path}: sidecar claims omega {claims['claimed_omega']}, solver finds {om.value}")

    try:
        smaller = k_colorable(G, m - 1, budget)
    except SolverTimeout:
        claimed = claims.get("claimed_chi_lb")
        if claimed is None or claimed < m:
            raise PreconditionFailed(f"{path}: chi >= {m} neither proved nor claimed") from None
        return ProviderGraph(G, r, m, om.value, claimed, Provenance.CLAIM, claims.get("source", ""))
    if smaller is not None:
        raise ClaimMismatch(f"{path}: graph is {smaller.colors_used}-colourable, so chi < m = {m}")
    return ProviderGraph(G, r, m, om.value, max(m, om.value), Provenance.EXACT, claims.get("source", ""))


# --- tagged blocks ------------------------------------------------------------------


@dataclass(frozen=True)
class BlockSpec:
    r: int
    m: int
    provider: str = MYCIELSKI

    def __post_init__(self) -> None:
        if self.r < 2:
            raise InvalidParameter(f"r must be >= 2, got {self.r}")
        if self.m < 1:
            raise InvalidParameter(f"m must be >= 1, got {self.m}")

    @property
    def B(self) -> int:
        return compute_B(self.r)

    @property
    def W(self) -> int:
        return compute_W(self.r)

    @property
    def claimed_omega(self) -> int:
        return self.r

    @property
    def claimed_chi_lb(self) -> int:
        return self.m

    @property
    def label(self) -> str:
        return f"X({self.r},{self.m})"


@dataclass(frozen=True)
class TaggedGraph:
    """A block with its core/tag partition and what is known about the core.

    ``core_chi`` is the core's chromatic number as known by construction;
    ``core_chi_is_exact`` says whether it is the exact value (towers) or only
    a lower bound (provider files).
    """

    graph: Graph
    core_vertices: VertexSet
    tag_vertices: VertexSet
    spec: BlockSpec
    core_chi: int
    core_chi_provenance: Provenance = Provenance.CLAIM
    core_chi_is_exact: bool = True


def build_block(spec: BlockSpec, budget: float | None = DEFAULT_BUDGET) -> TaggedGraph:
    if spec.provider == MYCIELSKI:
        if spec.r != 2:
            raise PreconditionFailed(f"no built-in core provider for r = {spec.r}; supply a graph file")
        core = provider_r2(spec.m)
        core_chi, prov, is_exact = max(spec.m, 2), Provenance.CLAIM, True
    else:
        loaded = load_provider_graph(spec.r, spec.m, spec.provider, budget)
        core, core_chi, prov, is_exact = loaded.graph, loaded.chi_lb, loaded.chi_provenance, False
    tag, _ = mycielski_tower(spec.r)
    X = disjoint_union(core, tag)
    return TaggedGraph(X, tuple(range(core.order)), tuple(range(core.order, X.order)),
                       spec, core_chi, prov, is_exact)


@dataclass(frozen=True)
class SliceEntry:
    r: int
    ms: tuple[int, ...]
    providers: dict[int, str] = field(default_factory=dict, hash=False)

    def specs(self) -> list[BlockSpec]:
        return [BlockSpec(self.r, m, self.providers.get(m, MYCIELSKI)) for m in self.ms]


@dataclass(frozen=True)
class ClassSpec:
    """A finite slice of the block class: explicit (r, m) pairs with their providers."""

    entries: tuple[SliceEntry, ...] = ()

    def __post_init__(self) -> None:
        for e in self.entries:
            if e.r < 2 or any(m < 1 for m in e.ms):
                raise InvalidParameter(f"slice entry r = {e.r}, m = {e.ms} out of range")

    @classmethod
    def from_dict(cls, doc: dict, base: Path | None = None) -> "ClassSpec":
        entries = []
        for raw in doc.get("entries", []):
            providers = {}
            for m, p in raw.get("providers", {}).items():
                p = Path(p)
                providers[int(m)] = str(base / p if base and not p.is_absolute() else p)
            entries.append(SliceEntry(int(raw["r"]), parse_m_range(raw["m"]), providers))
        return cls(tuple(entries))

    @classmethod
    def load(cls, path: str | Path) -> "ClassSpec":
        try:
            doc = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"{path}: {exc}") from None
        return cls.from_dict(doc, Path(path).parent)

    def to_dict(self) -> dict:
        return {"entries": [{"r": e.r, "m": list(e.ms),
                             "providers": {str(k): v for k, v in sorted(e.providers.items())}}
                            for e in self.entries]}


def parse_m_range(value) -> tuple[int, ...]:
    """Accept ``[1, 2, 4]``, ``3`` or ``"1..4"``."""
    if isinstance(value, int):
        return (value,)
    if isinstance(value, str):
        lo, sep, hi = value.partition("..")
        try:
            return tuple(range(int(lo), int(hi) + 1)) if sep else (int(lo),)
        except ValueError:
            raise ParseError(f"bad m range {value!r}") from None
    return tuple(int(m) for m in value)
