"""Checkers for the block construction on explicit finite slices.

Each checker returns a report whose ``status`` is ``pass``, ``fail`` or
``inconclusive`` (a solver ran out of budget before settling something).
Every χ value carries a :class:`Provenance` mark so that proved values and
by-construction claims are never confused.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from .constructions import (MYCIELSKI, BlockSpec, ClassSpec, Provenance, TaggedGraph, build_block,
                            compute_W, mycielski_tower, mycielskian)
from .errors import (ChiboundError, InvalidParameter, ParseError, PreconditionFailed, SolverTimeout,
                     TableTooShort)
from .graph import Graph, VertexSet, bits, induced_subgraph, is_connected, is_triangle_free, mask_of
from .solvers import (DEFAULT_BUDGET, Coloring, chi_restricted, chromatic_number, clique_number,
                      k_colorable, verify_coloring)

EXHAUSTIVE_LIMIT = 18
DEFAULT_SAMPLES = 1000
# Graphs larger than this are not exact-solved for χ; the construction's claim is reported instead.
EXACT_ORDER_LIMIT = 32


@dataclass
class Report:
    check: str
    anchor: str
    inputs: dict[str, Any] = field(default_factory=dict)
    values: dict[str, Any] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    inconclusive: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def record(self, name: str, value: Any, provenance: Provenance | None = None) -> None:
        if provenance is None:
            self.values[name] = value
        else:
            self.values[name] = {"value": value, "provenance": provenance.value}

    def require(self, condition: bool, message: str) -> bool:
        if not condition:
            self.failures.append(message)
        return condition

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        return {"check": self.check, "anchor": self.anchor, "inputs": self.inputs,
                "values": self.values, "status": self.status, "failures": self.failures,
                "inconclusive": self.inconclusive, "notes": self.notes}


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    """Ordered map, optionally over a process pool."""
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (8 * jobs))))


def _chi_evidence(G: Graph, claim: int, budget: float | None,
                  exact_limit: int) -> tuple[int, Provenance]:
    """χ(G) as ``(value, provenance)``: EXACT, a proved lower BOUND on timeout, or the CLAIM."""
    if G.order > exact_limit:
        return claim, Provenance.CLAIM
    res = chromatic_number(G, budget)
    if res.timed_out:
        return res.lower, Provenance.BOUND
    return res.value, Provenance.EXACT


# --- Mycielskian -----------------------------------------------------------------


def check_mycielski_lemma(G: Graph, budget: float | None = DEFAULT_BUDGET) -> Report:
    """Check that M(G) is triangle-free and χ(M(G)) = χ(G) + 1.

    The upper bound is certified by lifting an optimal colouring of ``G``
    (each shadow vertex copies its original, the apex gets a fresh colour);
    the lower bound by exhausting the χ(G)-colouring search on M(G).
    """
    if not is_triangle_free(G):
        raise PreconditionFailed("input graph contains a triangle")
    report = Report("mycielski-lemma",
                    "triangle-free G with chi(G) = q >= 2 gives triangle-free M(G) with chi(M(G)) = q + 1",
                    {"order": G.order, "edges": G.n_edges})
    base = chromatic_number(G, budget)
    if base.timed_out:
        report.inconclusive.append(f"chi(G) not settled: between {base.lower} and {base.upper}")
        return report
    q = base.value
    if q < 2:
        raise PreconditionFailed(f"chi(G) = {q} < 2")
    report.record("q", q, Provenance.EXACT)
    M, _ = mycielskian(G)
    report.record("order_M", M.order)
    report.require(is_triangle_free(M), "M(G) contains a triangle")

    lifted = base.certificate.assignment * 2 + (q + 1,)
    upper = Coloring.canonical(lifted)
    report.require(verify_coloring(M, upper) and upper.colors_used == q + 1,
                   "lifted colouring of M(G) is not a proper (q+1)-colouring")
    report.record("upper_certificate", list(upper.assignment))
    try:
        smaller = k_colorable(M, q, budget)
    except SolverTimeout:
        report.inconclusive.append(f"search for a {q}-colouring of M(G) did not finish")
        return report
    if report.require(smaller is None, f"M(G) has a proper {q}-colouring"):
        report.record("lower_certificate", f"no proper {q}-colouring exists (exhaustive search)")
        report.record("chi_M", q + 1, Provenance.EXACT)
    return report


# --- blocks ----------------------------------------------------------------------


def _structure_problems(X: TaggedGraph) -> list[str]:
    """Ways in which ``X`` is not a core/tag disjoint union with a triangle-free connected tag."""
    G = X.graph
    problems = []
    core, tag = mask_of(X.core_vertices), mask_of(X.tag_vertices)
    if core & tag or core | tag != G.all_mask:
        problems.append("core and tag do not partition the vertex set")
    if any(G.adj[v] & core for v in bits(tag)):
        problems.append("an edge joins the core to the tag")
    T, _ = induced_subgraph(G, X.tag_vertices)
    if not is_triangle_free(T):
        problems.append("tag contains a triangle")
    elif T.n_edges == 0:
        problems.append("tag has no edge")
    if not is_connected(T):
        problems.append("tag is not connected")
    return problems


def check_block_observation(X: TaggedGraph, budget: float | None = DEFAULT_BUDGET,
                            exact_limit: int = EXACT_ORDER_LIMIT) -> Report:
    r, m = X.spec.r, X.spec.m
    G = X.graph
    report = Report("block-observation",
                    "omega(X) = r; chi(X) >= m; X contains the tag T_r with omega 2 and chi r; "
                    "X is disconnected while the tag is connected",
                    {"block": X.spec.label, "r": r, "m": m, "provider": X.spec.provider,
                     "order": G.order})
    for problem in _structure_problems(X):
        report.require(False, problem)

    om = clique_number(G, budget)
    if om.timed_out:
        report.inconclusive.append(f"omega(X) not settled: between {om.lower} and {om.upper}")
    else:
        report.record("omega", om.value)
        report.require(om.value == r, f"omega(X) = {om.value}, expected {r}")

    claim = max(X.core_chi, r)
    chi, prov = _chi_evidence(G, claim, budget, exact_limit)
    report.record("chi", chi, prov)
    if prov is Provenance.CLAIM:
        report.require(X.core_chi >= m, f"core claim chi >= {X.core_chi} is below m = {m}")
        report.notes.append("chi(X) taken from the construction, not re-proved")
    elif chi < m:
        if prov is Provenance.EXACT:
            report.require(False, f"chi(X) = {chi} < m = {m}")
        else:
            report.inconclusive.append(f"only chi(X) >= {chi} proved within budget")
    if prov is Provenance.EXACT and X.core_chi_is_exact:
        report.require(chi == claim, f"chi(X) = {chi}, expected max(core chi, r) = {claim}")

    T, _ = induced_subgraph(G, X.tag_vertices)
    tag_om = clique_number(T, budget)
    report.record("tag_omega", tag_om.value)
    report.require(tag_om.value == 2, f"tag clique number {tag_om.value}, expected 2")
    tag_chi, tag_prov = _chi_evidence(T, r, budget, exact_limit)
    report.record("tag_chi", tag_chi, tag_prov)
    if tag_prov is Provenance.EXACT:
        report.require(tag_chi == r, f"tag chi = {tag_chi}, expected {r}")
    elif tag_prov is Provenance.BOUND and tag_chi < r:
        report.inconclusive.append(f"only tag chi >= {tag_chi} proved within budget")

    report.record("block_connected", is_connected(G))
    report.record("tag_connected", is_connected(T))
    report.require(not is_connected(G), "block is connected")
    report.require(is_connected(T), "tag is not connected")
    return report


# --- hereditary samples ------------------------------------------------------------


def hereditary_closure_sample(X: TaggedGraph | Graph, strategy: str = "exhaustive",
                              limit: int = DEFAULT_SAMPLES, seed: int = 0) -> Iterator[VertexSet]:
    """Vertex sets whose induced subgraphs are members of the hereditary closure.

    ``exhaustive`` streams all ``2**n`` subsets when ``n <= 18`` and otherwise
    behaves like ``random``: ``limit`` uniform random subsets followed by
    every single-vertex deletion.
    """
    G = X.graph if isinstance(X, TaggedGraph) else X
    if strategy not in ("exhaustive", "random"):
        raise InvalidParameter(f"unknown sampling strategy {strategy!r}")
    n = G.order
    if strategy == "exhaustive" and n <= EXHAUSTIVE_LIMIT:
        return (tuple(bits(mask)) for mask in range(1 << n))
    if limit <= 0:
        raise InvalidParameter("random sampling needs limit >= 1")

    def generate() -> Iterator[VertexSet]:
        rng = random.Random(seed)
        for _ in range(limit):
            yield tuple(bits(rng.getrandbits(n))) if n else ()
        for v in range(n):
            yield tuple(u for u in range(n) if u != v)

    return generate()


def _restricted_value(task: tuple[Graph, VertexSet, int, float | None]) -> tuple[int, bool]:
    G, S, n, budget = task
    res = chi_restricted(induced_subgraph(G, S)[0], n, budget)
    return res.value, res.timed_out


@dataclass
class GoodnessReport:
    r: int
    W: int
    strategy: str
    samples: list[tuple[str, int]] = field(default_factory=list)
    max_observed: int = 0
    malformed: list[str] = field(default_factory=list)
    timed_out: int = 0
    per_block: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_observed <= self.W

    @property
    def status(self) -> str:
        if not self.passed or self.malformed:
            return "fail"
        return "inconclusive" if self.timed_out else "pass"

    def to_dict(self, include_samples: bool = False) -> dict[str, Any]:
        doc = {"check": "goodness",
               "anchor": "chi^(r-1) of every sampled induced subgraph is at most W_r = max(B_r, r)",
               "inputs": {"r": self.r, "strategy": self.strategy},
               "values": {"W": self.W, "max_observed": self.max_observed,
                          "n_samples": len(self.samples), "timed_out_samples": self.timed_out,
                          "blocks": self.per_block},
               "status": self.status,
               "failures": ([] if self.passed else [f"max chi^(r-1) = {self.max_observed} > W = {self.W}"])
               + [f"malformed block: {m}" for m in self.malformed],
               "inconclusive": [f"{self.timed_out} samples hit the budget"] if self.timed_out else [],
               "notes": ["verified on the declared finite slice only"]}
        if include_samples:
            doc["values"]["samples"] = [list(s) for s in self.samples]
        return doc


def check_goodness(blocks: Iterable[BlockSpec | TaggedGraph], strategy: str = "exhaustive",
                   budget: float | None = DEFAULT_BUDGET, limit: int = DEFAULT_SAMPLES,
                   seed: int = 0, jobs: int = 1) -> GoodnessReport:
    """Compute χ^{(r-1)} over sampled induced subgraphs of each block and compare with W_r."""
    built = [b if isinstance(b, TaggedGraph) else build_block(b, budget) for b in blocks]
    rs = {X.spec.r for X in built}
    if len(rs) > 1:
        raise InvalidParameter(f"all blocks must share r, got {sorted(rs)}")
    r = rs.pop() if rs else 2
    report = GoodnessReport(r, compute_W(r), strategy)
    for X in built:
        problems = _structure_problems(X)
        if problems:
            report.malformed.append(f"{X.spec.label}: " + "; ".join(problems))
        sets = list(hereditary_closure_sample(X, strategy, limit, seed))
        results = _map(_restricted_value, [(X.graph, S, r - 1, budget) for S in sets], jobs)
        block_max, argmax = 0, ()
        for S, (value, timed_out) in zip(sets, results):
            report.samples.append((f"{X.spec.label}:{','.join(map(str, S))}", value))
            report.timed_out += timed_out
            if value > block_max:
                block_max, argmax = value, S
        report.max_observed = max(report.max_observed, block_max)
        report.per_block.append({"block": X.spec.label, "samples": len(sets),
                                 "max": block_max, "argmax": list(argmax)})
    return report


# --- polynomial witnesses ------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Non-negative integer coefficients, constant term first."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or any(c < 0 for c in self.coeffs):
            raise InvalidParameter(f"coefficients must be non-negative and non-empty: {self.coeffs}")

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        try:
            return cls(tuple(int(c) for c in text.split(",")))
        except ValueError:
            raise ParseError(f"bad polynomial {text!r}; expected comma-separated integers") from None

    @property
    def degree(self) -> int:
        return max((i for i, c in enumerate(self.coeffs) if c), default=0)

    def __call__(self, x: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            terms.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
        return " + ".join(reversed(terms)) or "0"


def find_nonpoly_witness(r: int, p: Polynomial, provider: str = MYCIELSKI,
                         budget: float | None = DEFAULT_BUDGET,
                         exact_limit: int = EXACT_ORDER_LIMIT) -> tuple[int, Report]:
    """Pick ``m = p(r) + 1`` and show the block X_{r,m} has χ >= m > p(ω)."""
    m = p(r) + 1
    report = Report("nonpoly-witness",
                    "m = p(r) + 1 gives a block with omega = r and chi >= m > p(r)",
                    {"r": r, "poly": list(p.coeffs), "poly_text": str(p), "provider": provider})
    report.record("p_r", p(r))
    report.record("m", m)
    X = build_block(BlockSpec(r, m, provider), budget)
    report.record("order", X.graph.order)
    om = clique_number(X.graph, budget)
    if om.timed_out:
        report.inconclusive.append("omega(X) not settled within budget")
    else:
        report.record("omega", om.value)
        report.require(om.value == r, f"omega(X) = {om.value}, expected {r}")
    chi, prov = _chi_evidence(X.graph, max(X.core_chi, r), budget, exact_limit)
    report.record("chi", chi, prov)
    if prov is Provenance.CLAIM:
        report.notes.append("chi >= m holds by the tower construction; not re-proved at this size")
    if chi <= p(r):
        if prov is Provenance.BOUND:
            report.inconclusive.append(f"only chi >= {chi} proved within budget")
        else:
            report.require(False, f"chi(X) = {chi} does not exceed p(r) = {p(r)}")
    return m, report


# --- bounding tables ------------------------------------------------------------------


@dataclass(frozen=True)
class BoundingTable:
    """A tabulated bounding function: ``values[s - 1]`` bounds χ at clique number ``s``."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.values):
            raise InvalidParameter("table values must be non-negative")

    @classmethod
    def parse(cls, text: str) -> "BoundingTable":
        try:
            return cls(tuple(int(v) for v in text.split(",")))
        except ValueError:
            raise ParseError(f"bad table {text!r}; expected comma-separated integers") from None

    def __len__(self) -> int:
        return len(self.values)

    def phi(self, s: int) -> int:
        return self.values[s - 1]

    def allows(self, omega: int, chi: int) -> bool | None:
        """Whether χ <= φ(ω); None when ω lies beyond the table."""
        if omega == 0:
            return chi == 0
        if omega > len(self.values):
            return None
        return chi <= self.phi(omega)


def pollyanna_bound(table: BoundingTable) -> tuple[int, int]:
    """Return ``(R, M)`` with ``R = max(2, φ(2))`` and ``M = max φ(s)`` over ``1 <= s <= R``."""
    if len(table) < 2:
        raise TableTooShort(f"table has {len(table)} entries; phi(2) is required")
    R = max(2, table.phi(2))
    if len(table) < R:
        raise TableTooShort(f"R = {R} exceeds table length {len(table)}")
    return R, max(table.phi(s) for s in range(1, R + 1))


def check_pollyanna_implication(table: BoundingTable, blocks: Iterable[BlockSpec | TaggedGraph],
                                strategy: str = "exhaustive", limit: int = DEFAULT_SAMPLES,
                                seed: int = 0, budget: float | None = DEFAULT_BUDGET) -> Report:
    """For blocks whose sampled induced subgraphs all respect the table, check r <= φ(2) and χ(X) <= M."""
    R, M = pollyanna_bound(table)
    report = Report("pollyanna",
                    "blocks respecting a bounding table phi have r <= phi(2) and chi <= M = max phi(1..R)",
                    {"table": list(table.values), "strategy": strategy, "seed": seed})
    report.record("R", R)
    report.record("M", M)
    entries = []
    for b in blocks:
        X = b if isinstance(b, TaggedGraph) else build_block(b, budget)
        sets = list(hereditary_closure_sample(X, strategy, limit, seed))
        sets.extend([X.tag_vertices, tuple(range(X.graph.order))])
        consistent = True
        chi_X = None
        for S in sets:
            H = induced_subgraph(X.graph, S)[0]
            om, chi = clique_number(H, budget), chromatic_number(H, budget)
            if om.timed_out or chi.timed_out:
                report.inconclusive.append(f"{X.spec.label}: sample not settled within budget")
                consistent = False
                break
            if len(S) == X.graph.order:
                chi_X = chi.value
            if not table.allows(om.value, chi.value):
                consistent = False
                break
        entry = {"block": X.spec.label, "r": X.spec.r, "respects_table": consistent}
        if consistent:
            entry["chi"] = chi_X
            report.require(X.spec.r <= table.phi(2), f"{X.spec.label}: r > phi(2) yet table respected")
            report.require(chi_X <= M, f"{X.spec.label}: chi = {chi_X} > M = {M}")
        entries.append(entry)
    report.record("blocks", entries)
    return report


# --- class-level checks ------------------------------------------------------------------


def chi_max_of_class(graphs: Iterable[Graph], n: int, budget: float | None = DEFAULT_BUDGET) -> int | None:
    """Largest χ among the members with clique number exactly ``n``; None if there are none."""
    best = None
    for G in graphs:
        om = clique_number(G, budget)
        if om.timed_out:
            raise SolverTimeout("clique number not settled within budget")
        if om.value != n:
            continue
        chi = chromatic_number(G, budget)
        if chi.timed_out:
            raise SolverTimeout("chromatic number not settled within budget")
        best = chi.value if best is None else max(best, chi.value)
    return best


def _non_hereditary_report(r: int, blocks: list[TaggedGraph]) -> Report:
    report = Report("non-hereditary",
                    "every block is a disjoint union and so disconnected, while its tag T_r is connected; "
                    "T_r is an induced subgraph of each block but not itself a block",
                    {"r": r, "blocks": [X.spec.label for X in blocks]})
    T, _ = mycielski_tower(r)
    report.record("tag_connected", is_connected(T))
    report.require(is_connected(T), f"T_{r} is not connected")
    for X in blocks:
        connected = is_connected(X.graph)
        report.record(f"{X.spec.label}_connected", connected)
        report.require(not connected, f"{X.spec.label} is connected")
    return report


@dataclass
class Summary:
    slice: dict[str, Any]
    seed: int
    checks: list[Any] = field(default_factory=list)

    @property
    def status(self) -> str:
        statuses = {c.status for c in self.checks}
        if "fail" in statuses:
            return "fail"
        return "inconclusive" if "inconclusive" in statuses else "pass"

    def to_dict(self) -> dict[str, Any]:
        return {"slice": self.slice, "seed": self.seed, "status": self.status,
                "note": "all conclusions are verified on the declared finite slice only",
                "checks": [c.to_dict() for c in self.checks]}


def verify_all(slice_: ClassSpec, poly: Polynomial | None = None,
               budget: float | None = DEFAULT_BUDGET, strategy: str = "exhaustive",
               limit: int = DEFAULT_SAMPLES, seed: int = 0, jobs: int = 1,
               exact_limit: int = EXACT_ORDER_LIMIT) -> Summary:
    """Run every block-level and class-level check on a finite slice, in declaration order.

    A failure to build one block (bad provider file, failed claim) is
    reported as a failed check and does not stop the remaining checks.
    """
    summary = Summary(slice_.to_dict(), seed)
    for entry in slice_.entries:
        built = []
        for spec in entry.specs():
            try:
                X = build_block(spec, budget)
            except ChiboundError as exc:
                summary.checks.append(Report("provider", "core graph must load with its claims intact",
                                             {"block": spec.label, "provider": spec.provider},
                                             failures=[f"{type(exc).__name__}: {exc}"]))
                continue
            built.append(X)
            summary.checks.append(check_block_observation(X, budget, exact_limit))
        summary.checks.append(_non_hereditary_report(entry.r, built))
        if built:
            summary.checks.append(check_goodness(built, strategy, budget, limit, seed, jobs))
        if poly is not None:
            m = poly(entry.r) + 1
            provider = entry.providers.get(m, MYCIELSKI)
            try:
                summary.checks.append(find_nonpoly_witness(entry.r, poly, provider, budget, exact_limit)[1])
            except ChiboundError as exc:
                summary.checks.append(Report("nonpoly-witness", "m = p(r) + 1 witness block",
                                             {"r": entry.r, "m": m, "provider": provider},
                                             failures=[f"{type(exc).__name__}: {exc}"]))
    return summary
