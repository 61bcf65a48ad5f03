"""Assemble the glued instance, build the adversarial lists, and certify.

Given a gadget H whose sides A and B are cliques of size n, the instance
is the union of copies of H sharing A: one copy per coloring tuple c of A
over the 2n-1 color universe (full mode), or one per injective tuple
(reduced mode).  Every copy's B side is a fresh vertex block, so the union
is a repeated clique-sum on A.  Lists: A vertices get the full universe;
a B vertex in copy c loses the colors its copy assigns to its A
non-neighbours.

Reduced-mode soundness: a proper coloring restricted to the clique A is
injective, so only injective copies can constrain a coloring; dropping the
others never changes whether the instance is colorable.

Verification is exact both ways.  The matching method walks every
injective tuple c, strips the colors of each B vertex's A-neighbours from
its list, and asks for a system of distinct representatives on the B
clique; the direct method backtracks over the whole instance.  The
certificate stores machine-checked integers only: the minimum list size s
yields the bound s+1 on the list chromatic number, and the Hadwiger number
of the instance equals that of H by the clique-sum equality.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from .choose import (
    ListAssignment,
    clique_extension_feasible,
    find_list_coloring,
)
from .errors import BudgetError, InputError, IntegrityError
from .gadget import BipartitionedGraph, PropertyReport
from .graphs import (
    Graph,
    ceil_frac,
    graph_from_edges,
    induced_subgraph,
    is_clique,
    iter_bits,
    mask_of,
    render_graph,
)
from .minor import DEFAULT_MAX_EXACT, hadwiger_number

#: Default ceiling on assembled instance size, in vertices.
DEFAULT_VERTEX_BUDGET = 100_000

MATCHING_METHOD = "matching-per-injective-coloring"
DIRECT_METHOD = "direct-backtracking"


def choose_epsilon_prime(epsilon: Fraction) -> Fraction:
    """Largest e' with (2 - e')/(1 + 2e') >= 2 - epsilon/2, exactly.

    Clearing denominators gives e' = epsilon / (2*(5 - epsilon)); the
    bound is re-checked on return.  Accepts epsilon in (0, 1].
    """
    if not (0 < epsilon <= 1):
        raise InputError(f"epsilon must lie in (0,1], got {epsilon}")
    ep = epsilon / (2 * (5 - epsilon))
    assert (2 - ep) / (1 + 2 * ep) >= 2 - epsilon / 2
    return ep


def derive_n(t: int, epsilon_prime: Fraction) -> int:
    """Side size floor(t / (1 + 2*e')); rejects a zero result."""
    if t < 1:
        raise InputError(f"t must be >= 1, got {t}")
    n = int(Fraction(t) / (1 + 2 * epsilon_prime))
    if n < 1:
        raise InputError(f"t={t} too small for epsilon_prime={epsilon_prime}")
    return n


@dataclass(frozen=True)
class ConstructionParams:
    """Pipeline parameters.

    ``epsilon`` drives the gadget (sampling exponent, non-degree bound).
    ``epsilon_prime`` is the derived (or supplied) value entering the side
    size derivation from ``t`` and the reported ratio; when ``t`` is given,
    the defining inequality is checked exactly and n = floor(t/(1+2e')).
    """

    epsilon: Fraction
    epsilon_prime: Fraction
    n: int
    t: int | None
    mode: str
    seed: int
    max_attempts: int = 64
    vertex_budget: int = DEFAULT_VERTEX_BUDGET

    def __post_init__(self):
        if self.mode not in ("full", "reduced"):
            raise InputError(f"mode must be full or reduced, got {self.mode!r}")
        if not (0 < self.epsilon < 1):
            raise InputError(f"epsilon must lie in (0,1), got {self.epsilon}")
        if self.t is not None:
            if (2 - self.epsilon_prime) / (1 + 2 * self.epsilon_prime) < 2 - self.epsilon / 2:
                raise InputError(
                    f"epsilon_prime={self.epsilon_prime} violates the selection "
                    f"inequality for epsilon={self.epsilon}"
                )
            if self.n != derive_n(self.t, self.epsilon_prime):
                raise InputError("n does not match floor(t/(1+2*epsilon_prime))")
        if self.n < 1:
            raise InputError(f"side size must be >= 1, got {self.n}")


def make_construction_params(
    epsilon: Fraction,
    *,
    n: int | None = None,
    t: int | None = None,
    epsilon_prime: Fraction | None = None,
    mode: str = "reduced",
    seed: int = 0,
    max_attempts: int = 64,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> ConstructionParams:
    """Resolve the epsilon'/n/t triangle; exactly one of n, t is required."""
    if (n is None) == (t is None):
        raise InputError("give exactly one of n or t")
    if epsilon_prime is None:
        epsilon_prime = choose_epsilon_prime(epsilon)
    if t is not None:
        n = derive_n(t, epsilon_prime)
    assert n is not None
    return ConstructionParams(
        epsilon=epsilon,
        epsilon_prime=epsilon_prime,
        n=n,
        t=t,
        mode=mode,
        seed=seed,
        max_attempts=max_attempts,
        vertex_budget=vertex_budget,
    )


@dataclass(frozen=True)
class AssembledInstance:
    """The union graph, its shared side, the copies, and the lists.

    ``copies[r]`` is ``(c, b_start)``: the coloring tuple of copy r and the
    first vertex of its B block (blocks have length n and are pairwise
    disjoint).  ``universe`` is 2n-1; colors are 1..universe.
    """

    graph: Graph
    n: int
    shared_a: int
    copies: tuple[tuple[tuple[int, ...], int], ...]
    lists: ListAssignment
    gadget: BipartitionedGraph
    universe: int
    mode: str
    params: ConstructionParams | None = None


def _copy_tuples(n: int, universe: int, mode: str):
    colors = range(1, universe + 1)
    if mode == "full":
        return product(colors, repeat=n)
    if mode == "reduced":
        return permutations(colors, n)
    raise InputError(f"mode must be full or reduced, got {mode!r}")


def copy_count(n: int, mode: str) -> int:
    universe = 2 * n - 1
    if mode == "full":
        return universe**n
    count = 1
    for i in range(n):
        count *= universe - i
    return count


def assemble(
    h: BipartitionedGraph,
    mode: str,
    *,
    params: ConstructionParams | None = None,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> AssembledInstance:
    """Build the instance from a gadget whose sides are cliques.

    The covering property is not required here: the list machinery works
    for any clique-sided H (gadget quality only affects minor-freeness).
    Exceeding the vertex budget raises BudgetError naming the requirement.
    """
    n = h.n
    g = h.graph
    if not (is_clique(g, h.side_a) and is_clique(g, h.side_b)):
        raise InputError("gadget sides must both be cliques")
    universe = 2 * n - 1
    count = copy_count(n, mode)
    total_vertices = n + count * n
    if total_vertices > vertex_budget:
        raise BudgetError(
            f"{mode} mode at side size {n} needs {total_vertices} vertices; "
            f"budget is {vertex_budget}",
            required=total_vertices,
        )

    a_edges = [(u, v) for u, v in g.edges() if u < n and v < n]
    b_edges = [(u - n, v - n) for u, v in g.edges() if u >= n and v >= n]
    cross = [(u, v - n) for u, v in g.edges() if u < n and v >= n]
    nonadj_a = [
        tuple(iter_bits(h.side_a & ~g.adj_row(n + j))) for j in range(n)
    ]

    edges = list(a_edges)
    copies = []
    lists: list[frozenset[int]] = [frozenset(range(1, universe + 1))] * n
    base = n
    for c in _copy_tuples(n, universe, mode):
        copies.append((c, base))
        for u, j in cross:
            edges.append((u, base + j))
        for i, j in b_edges:
            edges.append((base + i, base + j))
        for j in range(n):
            removed = {c[a] for a in nonadj_a[j]}
            lists.append(frozenset(range(1, universe + 1)) - removed)
        base += n

    graph = graph_from_edges(total_vertices, edges, max_vertices=vertex_budget)
    return AssembledInstance(
        graph=graph,
        n=n,
        shared_a=(1 << n) - 1,
        copies=tuple(copies),
        lists=tuple(lists),
        gadget=h,
        universe=universe,
        mode=mode,
        params=params,
    )


@dataclass(frozen=True)
class UnlistcolorabilityResult:
    unlistcolorable: bool
    methods: tuple[str, ...]
    counterexample: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def verify_unlistcolorable(
    inst: AssembledInstance, *, cross_check: bool = False
) -> UnlistcolorabilityResult:
    """Decide whether no proper coloring from the lists exists.

    Primary method: for every injective coloring tuple c of A (lexicographic
    order) locate its copy, subtract the colors of each B vertex's
    A-neighbours from its list, and test the B clique for a system of
    distinct representatives.  True iff every injective c fails.
    Non-injective tuples never need checking: a proper coloring is
    injective on the clique A.  A missing copy is an integrity error.

    With ``cross_check``, a direct backtracking search over the whole
    instance must agree, else IntegrityError.
    """
    n = inst.n
    h = inst.gadget.graph
    copy_at = {c: b_start for c, b_start in inst.copies}
    adj_a = [h.adj_row(n + j) & inst.shared_a for j in range(n)]

    counterexample = None
    for c in permutations(range(1, inst.universe + 1), n):
        b_start = copy_at.get(c)
        if b_start is None:
            raise IntegrityError(f"instance has no copy for injective coloring {c}")
        residuals = []
        for j in range(n):
            forbidden = {c[a] for a in iter_bits(adj_a[j])}
            residuals.append(inst.lists[b_start + j] - forbidden)
        feasible, assignment = clique_extension_feasible(residuals)
        if feasible:
            counterexample = (c, assignment)
            break
    result = counterexample is None
    methods = [MATCHING_METHOD]

    if cross_check:
        coloring = find_list_coloring(inst.graph, inst.lists)
        if (coloring is None) != result:
            raise IntegrityError(
                "matching-based and direct verification disagree"
            )
        methods.append(DIRECT_METHOD)

    return UnlistcolorabilityResult(
        unlistcolorable=result,
        methods=tuple(methods),
        counterexample=counterexample,
    )


@dataclass(frozen=True)
class Certificate:
    """Machine-checked record of the instance's verified claims."""

    params: dict
    graph_sha: str
    n: int
    universe: int
    mode: str
    copies: tuple[tuple[tuple[int, ...], int], ...]
    min_list_size: int
    unlistcolorable: bool
    methods: tuple[str, ...]
    hadwiger_h: int | None
    chi_list_lower_bound: int | None
    ratio_report: str | None

    def to_json_dict(self) -> dict:
        return {
            "params": self.params,
            "graph_sha": self.graph_sha,
            "n": self.n,
            "universe": self.universe,
            "mode": self.mode,
            "copies": [
                {"c": list(c), "b_range": [b, b + self.n]} for c, b in self.copies
            ],
            "min_list_size": self.min_list_size,
            "unlistcolorable": self.unlistcolorable,
            "methods": list(self.methods),
            "hadwiger_H": self.hadwiger_h,
            "chi_list_lower_bound": self.chi_list_lower_bound,
            "ratio_report": self.ratio_report,
        }


def _params_dict(inst: AssembledInstance) -> dict:
    p = inst.params
    out = {"n": inst.n, "mode": inst.mode}
    if p is not None:
        out = {
            "epsilon": str(p.epsilon),
            "epsilon_prime": str(p.epsilon_prime),
            "n": p.n,
            "t": p.t,
            "mode": p.mode,
            "seed": p.seed,
            "max_attempts": p.max_attempts,
        }
    if inst.gadget.seed is not None:
        out["gadget_seed"] = inst.gadget.seed
    return out


def min_list_size(lists: ListAssignment) -> int:
    return min(len(colors) for colors in lists)


def certify(
    inst: AssembledInstance,
    unlist: UnlistcolorabilityResult,
    report: PropertyReport,
) -> Certificate:
    """Assemble the certificate from already-verified facts.

    The list-chromatic bound s+1 appears only when the instance was
    verified uncolorable; s must dominate 2n-1 minus the gadget's max
    non-degree (integrity check).  The instance's Hadwiger number equals
    the gadget's by the clique-sum equality, so only h(H) is stored.
    """
    s = min_list_size(inst.lists)
    floor_bound = inst.universe - report.max_nondegree
    if s < floor_bound:
        raise IntegrityError(
            f"min list size {s} below guaranteed floor {floor_bound}"
        )
    bound = s + 1 if unlist.unlistcolorable else None
    ratio = None
    if bound is not None and report.hadwiger is not None:
        ratio = f"{bound}/{report.hadwiger + 1}"
    return Certificate(
        params=_params_dict(inst),
        graph_sha=hashlib.sha256(render_graph(inst.graph).encode()).hexdigest(),
        n=inst.n,
        universe=inst.universe,
        mode=inst.mode,
        copies=inst.copies,
        min_list_size=s,
        unlistcolorable=unlist.unlistcolorable,
        methods=unlist.methods,
        hadwiger_h=report.hadwiger,
        chi_list_lower_bound=bound,
        ratio_report=ratio,
    )


@dataclass
class ReplayReport:
    """Outcome of re-verifying a serialized certificate."""

    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def replay_certificate(
    graph_text: str,
    lists_text: str,
    cert: dict,
    *,
    max_exact: int = DEFAULT_MAX_EXACT,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> ReplayReport:
    """Re-verify every certificate claim from the artifacts alone.

    Nothing from the builder is trusted: the gadget is recovered from the
    first copy block, the whole graph and all lists are rebuilt from it and
    compared, and every numeric claim is recomputed.
    """
    from .choose import parse_lists
    from .graphs import parse_graph

    rep = ReplayReport()
    rep.add(
        "graph_sha",
        hashlib.sha256(graph_text.encode()).hexdigest() == cert["graph_sha"],
        "hash of graph file matches certificate",
    )
    graph = parse_graph(graph_text, max_vertices=vertex_budget)
    rep.add(
        "graph_canonical",
        render_graph(graph) == graph_text,
        "graph file is in canonical form",
    )
    n = cert["n"]
    universe = cert["universe"]
    mode = cert["mode"]
    rep.add("universe", universe == 2 * n - 1, "universe is 2n-1")

    copies = [(tuple(entry["c"]), entry["b_range"][0]) for entry in cert["copies"]]
    expected_tuples = list(_copy_tuples(n, universe, mode))
    blocks_ok = all(
        entry["b_range"] == [n + r * n, n + (r + 1) * n]
        for r, entry in enumerate(cert["copies"])
    )
    rep.add(
        "copies_enumeration",
        [c for c, _ in copies] == expected_tuples and blocks_ok,
        f"{mode}-mode copies are complete and in order",
    )
    rep.add(
        "vertex_count",
        graph.n == n + n * len(copies),
        "graph size matches copy layout",
    )
    if not rep.ok:
        return rep

    # Recover H from the first copy and rebuild the whole instance from it.
    first_block = mask_of(range(copies[0][1], copies[0][1] + n))
    h_graph, _ = induced_subgraph(graph, (1 << n) - 1 | first_block)
    h = BipartitionedGraph(graph=h_graph, n=n, tag="gadget")
    cliques_ok = is_clique(h_graph, h.side_a) and is_clique(h_graph, h.side_b)
    rep.add("gadget_cliques", cliques_ok, "recovered gadget has clique sides")
    if not cliques_ok:
        return rep
    rebuilt = assemble(h, mode, vertex_budget=vertex_budget)
    rep.add(
        "graph_structure",
        rebuilt.graph == graph,
        "every copy replicates the recovered gadget over the shared side",
    )
    lists = parse_lists(lists_text, graph.n)
    rep.add(
        "lists_formula",
        rebuilt.lists == lists,
        "lists match the construction formula",
    )
    if not rep.ok:
        return rep

    s = min_list_size(lists)
    rep.add(
        "min_list_size",
        s == cert["min_list_size"],
        f"recomputed minimum list size {s}",
    )
    max_nondeg = max((h_graph.n - 1) - h_graph.degree(v) for v in range(h_graph.n))
    rep.add(
        "list_size_floor",
        s >= universe - max_nondeg,
        "minimum list size dominates 2n-1 minus the max non-degree",
    )

    inst = AssembledInstance(
        graph=graph,
        n=n,
        shared_a=(1 << n) - 1,
        copies=tuple(copies),
        lists=lists,
        gadget=h,
        universe=universe,
        mode=mode,
    )
    unlist = verify_unlistcolorable(inst)
    rep.add(
        "unlistcolorable",
        unlist.unlistcolorable == cert["unlistcolorable"],
        "matching-based verification agrees with the certificate",
    )
    expected_bound = s + 1 if unlist.unlistcolorable else None
    rep.add(
        "chi_list_lower_bound",
        cert["chi_list_lower_bound"] == expected_bound,
        "bound is min list size + 1 exactly when uncolorable",
    )
    if cert["hadwiger_H"] is not None:
        if h_graph.n <= max_exact:
            t, _ = hadwiger_number(h_graph, max_exact=max_exact)
            rep.add(
                "hadwiger_H",
                t == cert["hadwiger_H"],
                f"recomputed gadget Hadwiger number {t}",
            )
            expected_ratio = (
                f"{expected_bound}/{t + 1}" if expected_bound is not None else None
            )
            rep.add(
                "ratio_report",
                cert["ratio_report"] == expected_ratio,
                "ratio field consistent",
            )
        else:
            rep.add(
                "hadwiger_H",
                False,
                "certificate claims a Hadwiger number beyond the exact range",
            )
    else:
        rep.add(
            "ratio_report",
            cert["ratio_report"] is None,
            "no ratio without a Hadwiger value",
        )
    return rep


def certificate_to_json(cert: Certificate) -> str:
    return json.dumps(cert.to_json_dict(), indent=2) + "\n"
