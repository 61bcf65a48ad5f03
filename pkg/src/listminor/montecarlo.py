"""Seeded Monte Carlo estimation of the sampler's tail behaviour.

Each trial draws one bipartite sample (seeds seed, seed+1, ...), records
its degree statistics, whether the maximum degree exceeds ceil(eps*n), and
the covering-check outcome where the work guard allows it.  Trials are
independent, so they may run on a thread pool; aggregation is by trial
index and therefore identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import InputError
from .gadget import (
    COVERING_WORK_LIMIT,
    GadgetParams,
    check_covering_property,
    sample_bipartite,
)
from .graphs import ceil_frac

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class TrialOutcome:
    seed: int
    edges: int
    max_degree: int
    maxdeg_exceeded: bool
    covering: str

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "edges": self.edges,
            "max_degree": self.max_degree,
            "maxdeg_exceeded": self.maxdeg_exceeded,
            "covering": self.covering,
        }


@dataclass(frozen=True)
class MonteCarloReport:
    """Aggregated sampler statistics over seeded trials."""

    n: int
    delta: Fraction
    epsilon: Fraction
    trials: int
    seed: int
    freq_maxdeg_exceeded: float
    freq_covering_violated: float | None
    mean_degree: float
    stddev_degree: float
    per_trial: tuple[TrialOutcome, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": str(self.delta),
            "epsilon": str(self.epsilon),
            "trials": self.trials,
            "seed": self.seed,
            "freq_maxdeg_exceeded": self.freq_maxdeg_exceeded,
            "freq_covering_violated": self.freq_covering_violated,
            "mean_degree": self.mean_degree,
            "stddev_degree": self.stddev_degree,
            "per_trial": [t.to_json_dict() for t in self.per_trial],
        }


def monte_carlo(
    n: int,
    epsilon: Fraction,
    trials: int,
    seed: int,
    *,
    threads: int = 1,
    covering_work_limit: int = COVERING_WORK_LIMIT,
) -> MonteCarloReport:
    """Run seeded trials and aggregate; deterministic for fixed arguments."""
    if trials < 1:
        raise InputError(f"trials must be >= 1, got {trials}")
    base = GadgetParams(n=n, epsilon=epsilon, seed=seed)
    bound = ceil_frac(epsilon * n)

    def one_trial(i: int) -> tuple[TrialOutcome, list[int]]:
        params = replace(base, seed=(seed + i) & _MASK64)
        sample = sample_bipartite(params)
        degrees = [sample.graph.degree(v) for v in range(sample.graph.n)]
        max_degree = max(degrees)
        covering, _ = check_covering_property(
            sample, epsilon, params.f, work_limit=covering_work_limit
        )
        outcome = TrialOutcome(
            seed=params.seed,
            edges=sample.graph.edge_count,
            max_degree=max_degree,
            maxdeg_exceeded=max_degree > bound,
            covering=covering,
        )
        return outcome, degrees

    if threads == 0:
        import os

        threads = os.cpu_count() or 1
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one_trial, range(trials)))
    else:
        results = [one_trial(i) for i in range(trials)]

    outcomes = tuple(out for out, _ in results)
    all_degrees: list[int] = []
    for _, degs in results:
        all_degrees.extend(degs)
    mean_degree = sum(all_degrees) / len(all_degrees)
    variance = sum((d - mean_degree) ** 2 for d in all_degrees) / len(all_degrees)
    checkable = [o for o in outcomes if o.covering != "skipped"]
    freq_covering = (
        sum(1 for o in checkable if o.covering == "violated") / len(checkable)
        if checkable
        else None
    )
    return MonteCarloReport(
        n=n,
        delta=base.delta,
        epsilon=epsilon,
        trials=trials,
        seed=seed,
        freq_maxdeg_exceeded=sum(o.maxdeg_exceeded for o in outcomes) / trials,
        freq_covering_violated=freq_covering,
        mean_degree=mean_degree,
        stddev_degree=math.sqrt(variance),
        per_trial=outcomes,
    )
