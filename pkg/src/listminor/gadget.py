"""Seeded bipartite sampling and the complement gadget with its checks.

The sampler draws a bipartite graph on sides A = {0..n-1} and
B = {n..2n-1}: each cross pair (i, j) is an edge iff u(seed, i, j) < p,
where p = exp(-delta * ln n) computed once in double precision and
u is a per-pair 53-bit uniform derived from a splitmix-style 64-bit
finalizer.  Draws are pure functions of (seed, i, j), so sampling is
order-independent, reproducible, and embarrassingly parallel.

The gadget is the complement of a sample: both sides become cliques and
each vertex's non-neighbours are exactly its cross neighbours in the
sample.  Checks cover the two clique sides, the non-degree bound
ceil(eps*n), the covering property of the sample, and (optionally) an
exact clique-minor bound on the gadget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ExhaustionError, InputError
from .graphs import (
    Graph,
    ceil_frac,
    complement,
    graph_from_edges,
    is_clique,
    iter_bits,
    mask_of,
)
from .minor import DEFAULT_MAX_EXACT, hadwiger_number

_MASK64 = (1 << 64) - 1
_GOLDEN_A = 0x9E3779B97F4A7C15
_GOLDEN_B = 0xC2B2AE3D27D4EB4F

#: Estimated-step ceiling above which the covering check refuses to run.
COVERING_WORK_LIMIT = 10**8


def mix64(x: int) -> int:
    """Splitmix-style 64-bit finalizer (scalar reference)."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def pair_uniform(seed: int, i: int, j: int) -> float:
    """Deterministic uniform draw in [0, 1) for cross pair (i, j)."""
    h = mix64(seed)
    h = mix64(h ^ ((i + _GOLDEN_A) & _MASK64))
    h = mix64(h ^ ((j + _GOLDEN_B) & _MASK64))
    return (h >> 11) * 2.0**-53


def _pair_uniform_grid(seed: int, n: int) -> np.ndarray:
    """All n*n pair draws at once; bit-identical to pair_uniform."""
    i = np.arange(n, dtype=np.uint64).reshape(n, 1)
    j = np.arange(n, dtype=np.uint64).reshape(1, n)

    def fin(x: np.ndarray) -> np.ndarray:
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))

    h0 = np.uint64(mix64(seed))
    hi = fin(h0 ^ (i + np.uint64(_GOLDEN_A)))
    h = fin(hi ^ (j + np.uint64(_GOLDEN_B)))
    return (h >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class GadgetParams:
    """Sampling parameters: side size, epsilon, and a 64-bit seed.

    Derived values: f = ceil(1/eps), delta = eps/2 (so f*delta < 1 always
    holds for eps in (0,1); checked anyway), p = n**(-delta) in binary
    floating point.
    """

    n: int
    epsilon: Fraction
    seed: int
    f: int = field(init=False)
    delta: Fraction = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"side size must be >= 1, got {self.n}")
        if not (0 < self.epsilon < 1):
            raise InputError(f"epsilon must lie in (0,1), got {self.epsilon}")
        if not (0 <= self.seed <= _MASK64):
            raise InputError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "f", ceil_frac(1 / self.epsilon))
        object.__setattr__(self, "delta", self.epsilon / 2)
        if self.f * self.delta >= 1:
            raise InputError("f * delta must be < 1")

    @property
    def p(self) -> float:
        return math.exp(-float(self.delta) * math.log(self.n))


@dataclass(frozen=True)
class BipartitionedGraph:
    """A graph on 2n vertices with sides A = 0..n-1 and B = n..2n-1.

    ``tag`` records provenance: "bipartite-sample" promises all edges cross
    between the sides; "gadget" marks a complemented sample.  ``seed`` is
    the effective sampler seed when known.
    """

    graph: Graph
    n: int
    tag: str
    seed: int | None = None

    def __post_init__(self):
        if self.graph.n != 2 * self.n:
            raise InputError(f"graph has {self.graph.n} vertices, expected {2 * self.n}")
        if self.tag == "bipartite-sample":
            for v in range(self.n):
                if self.graph.adj_row(v) & self.side_a:
                    raise InputError("sample has an edge inside side A")
            for v in range(self.n, 2 * self.n):
                if self.graph.adj_row(v) & self.side_b:
                    raise InputError("sample has an edge inside side B")

    @property
    def side_a(self) -> int:
        return (1 << self.n) - 1

    @property
    def side_b(self) -> int:
        return ((1 << self.n) - 1) << self.n


@dataclass
class PropertyReport:
    """Verification outcomes for one gadget candidate.

    ``covering`` and ``minor_free`` are tri-state: "verified", "violated",
    or "skipped" (size guard refused; never a silent pass).  The witness is
    present exactly when the covering check is violated.
    """

    cliques_ok: bool
    max_nondegree: int
    nondegree_bound: int
    covering: str = "skipped"
    covering_witness: tuple[tuple[int, ...], tuple[tuple[int, ...], ...]] | None = None
    minor_free: str = "skipped"
    hadwiger: int | None = None
    minor_bound: int | None = None

    @property
    def nondegree_ok(self) -> bool:
        return self.max_nondegree <= self.nondegree_bound

    def to_json_dict(self) -> dict:
        witness = None
        if self.covering_witness is not None:
            x, ys = self.covering_witness
            witness = {"X": list(x), "Y": [list(y) for y in ys]}
        return {
            "cliques_ok": self.cliques_ok,
            "max_nondegree": self.max_nondegree,
            "nondegree_bound": self.nondegree_bound,
            "covering": self.covering,
            "covering_witness": witness,
            "hadwiger": self.hadwiger,
            "minor_bound": self.minor_bound,
        }


def sample_bipartite(params: GadgetParams) -> BipartitionedGraph:
    """Draw the seeded bipartite graph; identical params give identical graphs."""
    n = params.n
    hit = _pair_uniform_grid(params.seed, n) < params.p
    edges = [(int(i), n + int(j)) for i, j in np.argwhere(hit)]
    g = graph_from_edges(2 * n, edges)
    return BipartitionedGraph(graph=g, n=n, tag="bipartite-sample", seed=params.seed)


def gadget_from_sample(sample: BipartitionedGraph) -> BipartitionedGraph:
    """Complement of a sample on the same sides; A and B become cliques."""
    if sample.tag != "bipartite-sample":
        raise InputError(f"expected a bipartite-sample, got tag {sample.tag!r}")
    return BipartitionedGraph(
        graph=complement(sample.graph), n=sample.n, tag="gadget", seed=sample.seed
    )


def check_cliques_and_nondegree(h: BipartitionedGraph, epsilon: Fraction) -> PropertyReport:
    """Clique sides plus the max non-degree against ceil(eps*n)."""
    g = h.graph
    cliques_ok = is_clique(g, h.side_a) and is_clique(g, h.side_b)
    max_nondegree = max((g.n - 1) - g.degree(v) for v in range(g.n)) if g.n else 0
    bound = ceil_frac(epsilon * h.n)
    return PropertyReport(
        cliques_ok=cliques_ok, max_nondegree=max_nondegree, nondegree_bound=bound
    )


def _family_count(k: int, ground: int, f: int) -> int:
    """Exact number of unordered families of k disjoint non-empty sets of
    size <= f from a ground set of the given size."""
    memo: dict[tuple[int, int], int] = {}

    def ordered(kk: int, avail: int) -> int:
        if kk == 0:
            return 1
        key = (kk, avail)
        if key in memo:
            return memo[key]
        total = 0
        for s in range(1, min(f, avail) + 1):
            total += math.comb(avail, s) * ordered(kk - 1, avail - s)
        memo[key] = total
        return total

    return ordered(k, ground) // math.factorial(k)


def covering_work_estimate(n: int, m: int, k: int, f: int) -> int:
    """Conservative step estimate: both sides, every X, every Y-family."""
    return 2 * math.comb(n, m) * _family_count(k, n, f)


def check_covering_property(
    sample: BipartitionedGraph,
    epsilon: Fraction,
    f: int,
    *,
    work_limit: int = COVERING_WORK_LIMIT,
) -> tuple[str, tuple[tuple[int, ...], tuple[tuple[int, ...], ...]] | None]:
    """Exhaustive covering check of the sample; tri-state result.

    Verified means: for every X of size m = ceil(eps*n) on either side and
    every family of m pairwise disjoint non-empty sets of size <= f on the
    opposite side, some x in X is adjacent to all of some member set
    (checking the minimum size and count suffices: the property is
    monotone in both).  A violation returns the lexicographically first
    witness (X, Y-family) in global vertex ids.  When the estimated work
    exceeds the limit the check refuses with "skipped".
    """
    n = sample.n
    m = ceil_frac(epsilon * n)
    k = m
    if covering_work_estimate(n, m, k, f) > work_limit:
        return "skipped", None
    g = sample.graph

    def side_check(side_ids, opp_ids):
        candidates = []
        for size in range(1, min(f, len(opp_ids)) + 1):
            candidates.extend(combinations(opp_ids, size))
        candidates.sort()
        cand_masks = [mask_of(c) for c in candidates]
        for x_ids in combinations(side_ids, m):
            x_rows = [g.adj_row(x) for x in x_ids]
            uncovered = [
                idx
                for idx, cm in enumerate(cand_masks)
                if not any(cm & ~row == 0 for row in x_rows)
            ]
            pick: list[int] = []

            def disjoint_family(start: int, used: int) -> bool:
                if len(pick) == k:
                    return True
                for pos in range(start, len(uncovered)):
                    cm = cand_masks[uncovered[pos]]
                    if cm & used:
                        continue
                    pick.append(uncovered[pos])
                    if disjoint_family(pos + 1, used | cm):
                        return True
                    pick.pop()
                return False

            if disjoint_family(0, 0):
                witness = (x_ids, tuple(candidates[idx] for idx in pick))
                return witness
        return None

    a_ids = tuple(range(n))
    b_ids = tuple(range(n, 2 * n))
    for side, opp in ((a_ids, b_ids), (b_ids, a_ids)):
        witness = side_check(side, opp)
        if witness is not None:
            return "violated", witness
    return "verified", None


def minor_bound_for(epsilon: Fraction, n: int) -> int:
    """Largest clique-minor order allowed: ceil((1+2*eps)*n) - 1."""
    return ceil_frac((1 + 2 * epsilon) * n) - 1


def generate_verified_gadget(
    params: GadgetParams,
    max_attempts: int,
    verify_minor_bound: bool,
    *,
    max_exact: int = DEFAULT_MAX_EXACT,
    covering_work_limit: int = COVERING_WORK_LIMIT,
) -> tuple[BipartitionedGraph, PropertyReport]:
    """Resample (seed, seed+1, ...) until a candidate passes every check.

    An attempt passes when the gadget's cliques and non-degree hold, the
    sample's covering check is not violated (a skipped check does not
    reject), and, when requested and within the exact solver's range, the
    gadget's Hadwiger number respects the minor bound.  Exhausting all
    attempts raises ExhaustionError carrying the last report; at very
    small n this is the expected outcome.
    """
    if max_attempts < 1:
        raise InputError(f"max_attempts must be >= 1, got {max_attempts}")
    last_report: PropertyReport | None = None
    for attempt in range(max_attempts):
        attempt_params = replace(params, seed=(params.seed + attempt) & _MASK64)
        sample = sample_bipartite(attempt_params)
        h = gadget_from_sample(sample)
        report = check_cliques_and_nondegree(h, params.epsilon)
        report.minor_bound = minor_bound_for(params.epsilon, params.n)
        last_report = report
        if not (report.cliques_ok and report.nondegree_ok):
            continue
        report.covering, report.covering_witness = check_covering_property(
            sample, params.epsilon, params.f, work_limit=covering_work_limit
        )
        if report.covering == "violated":
            continue
        if verify_minor_bound and h.graph.n <= max_exact:
            t, _ = hadwiger_number(h.graph, max_exact=max_exact)
            report.hadwiger = t
            if t > report.minor_bound:
                report.minor_free = "violated"
                continue
            report.minor_free = "verified"
        return h, report
    raise ExhaustionError(
        f"no gadget found in {max_attempts} attempts (n={params.n}, "
        f"epsilon={params.epsilon})",
        last_report=last_report,
        attempts=max_attempts,
    )


def max_cross_degree(sample: BipartitionedGraph) -> int:
    """Maximum degree of the bipartite sample."""
    return max(sample.graph.degree(v) for v in range(sample.graph.n))


def nondegree_of(h: BipartitionedGraph, v: int) -> tuple[int, ...]:
    """Non-neighbours of ``v`` in the gadget (excluding ``v`` itself)."""
    g = h.graph
    mask = g.full_mask & ~g.adj_row(v) & ~(1 << v)
    return tuple(iter_bits(mask))
