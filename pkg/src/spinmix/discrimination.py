"""Quantifying how distinguishable two ensembles are.

Two complementary views: trace distances between the exact k-particle
reduced states, and the success probability of the Bayes-optimal
equal-prior guesser that sees only the +1-outcome count along one axis,
with a Monte Carlo estimate of the latter for validation.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .ensembles import (
    EnsembleSpec,
    ensemble_literal,
    reduced_density_matrix,
    total_variation,
)
from .linalg import PARTICLE_CAP, trace_distance
from .measurement import (
    _chunk_bounds,
    exact_count_pmf,
    measure_realization,
    sample_realization,
    trial_stream,
)
from .spin import Axis


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Empirical success rate with its binomial standard error."""

    value: float
    stderr: float
    trials: int


@dataclass(frozen=True)
class AxisFigures:
    """Count-statistic discrimination figures for one measurement axis."""

    axis: Axis
    tv_distance: float
    bayes_success: float
    monte_carlo: MonteCarloEstimate | None


@dataclass(frozen=True)
class DistinguishabilityReport:
    pair: tuple[str, str]
    n: int
    trace_distances: tuple[tuple[int, float], ...]
    per_axis: tuple[AxisFigures, ...]


def pairwise_trace_distances(
    a: EnsembleSpec,
    b: EnsembleSpec,
    k_max: int,
    *,
    cap: int = PARTICLE_CAP,
) -> list[tuple[int, float]]:
    """trace_distance(ρ_k of a, ρ_k of b) for k = 1..k_max."""
    limit = min(a.n, b.n, cap)
    if not 1 <= k_max <= limit:
        raise ValueError(f"k_max {k_max} outside 1..{limit}")
    return [
        (k, trace_distance(reduced_density_matrix(a, k), reduced_density_matrix(b, k)))
        for k in range(1, k_max + 1)
    ]


def bayes_success_from_counts(a: EnsembleSpec, b: EnsembleSpec, axis: Axis) -> float:
    """Best equal-prior guessing probability from the exact count pmfs:
    ½ Σ max(p_a(m), p_b(m)), i.e. ½(1 + TV)."""
    if a.n != b.n:
        raise ValueError(f"ensembles differ in n: {a.n} vs {b.n}")
    pa = exact_count_pmf(a, axis).probabilities
    pb = exact_count_pmf(b, axis).probabilities
    return 0.5 * float(np.maximum(pa, pb).sum())


def monte_carlo_discrimination(
    a: EnsembleSpec,
    b: EnsembleSpec,
    axis: Axis,
    trials: int,
    master_seed: int,
    *,
    workers: int = 1,
) -> MonteCarloEstimate:
    """Simulated equal-prior discrimination on the count statistic.

    Per trial: a fair coin from the trial's stream picks the true ensemble,
    one full experiment runs, and the guess is the spec whose exact pmf puts
    more mass on the observed count, ties broken toward `a`.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if a.n != b.n:
        raise ValueError(f"ensembles differ in n: {a.n} vs {b.n}")
    pa = exact_count_pmf(a, axis).probabilities
    pb = exact_count_pmf(b, axis).probabilities
    guess_is_a = pa >= pb
    labels = (ensemble_literal(a), ensemble_literal(b))

    def run_range(bounds: tuple[int, int]) -> int:
        lo, hi = bounds
        successes = 0
        for i in range(lo, hi):
            rng = trial_stream(master_seed, i)
            truth_is_a = rng.random() < 0.5
            spec = a if truth_is_a else b
            realization = sample_realization(spec, rng)
            record = measure_realization(
                realization,
                axis,
                rng,
                seed=master_seed,
                trial=i,
                ensemble=labels[0] if truth_is_a else labels[1],
            )
            if bool(guess_is_a[record.plus_count]) == truth_is_a:
                successes += 1
        return successes

    if workers <= 1:
        successes = run_range((0, trials))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            successes = sum(pool.map(run_range, _chunk_bounds(trials, workers)))
    rate = successes / trials
    return MonteCarloEstimate(rate, sqrt(rate * (1.0 - rate) / trials), trials)


def build_report(
    a: EnsembleSpec,
    b: EnsembleSpec,
    *,
    labels: tuple[str, str] | None = None,
    k_max: int,
    axes: list[Axis],
    trials: int = 0,
    master_seed: int = 0,
    workers: int = 1,
) -> DistinguishabilityReport:
    """Full report: per-k trace distances plus per-axis count figures."""
    if labels is None:
        labels = (ensemble_literal(a), ensemble_literal(b))
    distances = tuple(pairwise_trace_distances(a, b, k_max))
    figures = []
    for axis in axes:
        tv = total_variation(exact_count_pmf(a, axis), exact_count_pmf(b, axis))
        bayes = bayes_success_from_counts(a, b, axis)
        mc = None
        if trials > 0:
            mc = monte_carlo_discrimination(a, b, axis, trials, master_seed, workers=workers)
        figures.append(AxisFigures(axis, tv, bayes, mc))
    return DistinguishabilityReport(labels, a.n, distances, tuple(figures))
