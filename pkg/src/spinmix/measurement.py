"""Simulated experiments: prepare a realization, measure every particle once
along a single global axis, and collect the +1-outcome count.

Randomness contract
-------------------
Each Monte Carlo trial draws from its own stream,
``trial_stream(master_seed, i)``: a Philox4x64 counter-based generator keyed
by the (master seed, trial index) pair.  Distinct keys give statistically
independent streams and the derivation is deterministic, so replaying a
master seed reproduces every record bitwise and any execution order —
including the thread-pool split used when ``workers > 1`` — yields the
identical list of records.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .ensembles import (
    CountPmf,
    EnsembleSpec,
    FixedComposition,
    binomial_pmf,
    ensemble_literal,
)
from .spin import Axis, PureState, transition_probability

_SEED_LIMIT = 2**64


def trial_stream(master_seed: int, trial: int) -> np.random.Generator:
    """Independent, reproducible stream for one trial."""
    if not 0 <= master_seed < _SEED_LIMIT:
        raise ValueError(f"master_seed must be a 64-bit unsigned integer, got {master_seed}")
    if trial < 0:
        raise ValueError(f"trial index must be nonnegative, got {trial}")
    return np.random.Generator(np.random.Philox(key=[master_seed, trial]))


@dataclass(frozen=True)
class Realization:
    """One prepared instance of an ensemble: the ordered particle states."""

    states: tuple[PureState, ...]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("a realization holds at least one particle")


@dataclass(frozen=True)
class ExperimentRecord:
    """Outcomes of measuring one realization along one axis."""

    seed: int
    trial: int
    ensemble: str
    axis: Axis
    outcomes: tuple[int, ...]
    plus_count: int

    def __post_init__(self) -> None:
        if self.plus_count != sum(1 for o in self.outcomes if o == 1):
            raise ValueError("plus_count does not match the outcomes")


def sample_realization(spec: EnsembleSpec, rng: np.random.Generator) -> Realization:
    """Fixed composition: its exact multiset in uniformly random order.
    I.i.d. mixture: n independent component draws."""
    if isinstance(spec, FixedComposition):
        pool: list[PureState] = []
        for state, count in spec.components:
            pool.extend([state] * count)
        order = rng.permutation(len(pool))
        return Realization(tuple(pool[i] for i in order))
    probs = np.array([p for _, p in spec.components])
    draws = rng.choice(len(spec.components), size=spec.n, p=probs)
    return Realization(tuple(spec.components[i][0] for i in draws))


def measure_realization(
    realization: Realization,
    axis: Axis,
    rng: np.random.Generator,
    *,
    seed: int = 0,
    trial: int = 0,
    ensemble: str = "",
) -> ExperimentRecord:
    """Projective measurement of every particle along `axis`.

    Each particle independently yields +1 with its Born weight along the
    axis, else -1.  Particles are measured in list order; their outcomes are
    independent, so the order carries no statistical weight.
    """
    born: dict[int, float] = {}
    for state in realization.states:
        key = id(state)
        if key not in born:
            born[key] = transition_probability(state, axis, +1)
    weights = np.array([born[id(s)] for s in realization.states])
    hits = rng.random(len(weights)) < weights
    outcomes = tuple(1 if h else -1 for h in hits)
    return ExperimentRecord(
        seed=seed,
        trial=trial,
        ensemble=ensemble,
        axis=axis,
        outcomes=outcomes,
        plus_count=int(hits.sum()),
    )


def exact_count_pmf(spec: EnsembleSpec, axis: Axis) -> CountPmf:
    """Exact distribution of the +1-outcome count over the whole ensemble.

    Fixed composition: the convolution over components of Binomial(count,
    q) with q the component's Born weight — outcomes are independent given
    the fixed multiset.  I.i.d. mixture: Binomial(n, Σ p·q), since each
    draw-and-measure is one Bernoulli trial with the averaged weight.
    """
    if isinstance(spec, FixedComposition):
        pmf = np.array([1.0])
        for state, count in spec.components:
            q = transition_probability(state, axis, +1)
            pmf = np.convolve(pmf, binomial_pmf(count, q).probabilities)
        return CountPmf(spec.n, pmf)
    q_bar = 0.0
    for state, p in spec.components:
        q_bar += p * transition_probability(state, axis, +1)
    return binomial_pmf(spec.n, min(1.0, max(0.0, q_bar)))


def pmf_moments(pmf: CountPmf) -> tuple[float, float]:
    """Mean and variance of a count pmf."""
    counts = np.arange(pmf.n + 1, dtype=float)
    mean = float(counts @ pmf.probabilities)
    variance = float(((counts - mean) ** 2) @ pmf.probabilities)
    return mean, variance


def _chunk_bounds(trials: int, workers: int) -> list[tuple[int, int]]:
    per = (trials + workers - 1) // workers
    return [(lo, min(lo + per, trials)) for lo in range(0, trials, per)]


def run_experiments(
    spec: EnsembleSpec,
    axis: Axis,
    trials: int,
    master_seed: int,
    *,
    workers: int = 1,
) -> list[ExperimentRecord]:
    """One full experiment (fresh realization, then measurement) per trial.

    Trial i runs entirely on trial_stream(master_seed, i), so the returned
    list is identical whether the range is executed sequentially or split
    across a thread pool with ``workers > 1``.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    label = ensemble_literal(spec)

    def run_range(bounds: tuple[int, int]) -> list[ExperimentRecord]:
        lo, hi = bounds
        out = []
        for i in range(lo, hi):
            rng = trial_stream(master_seed, i)
            realization = sample_realization(spec, rng)
            out.append(
                measure_realization(
                    realization, axis, rng, seed=master_seed, trial=i, ensemble=label
                )
            )
        return out

    if workers <= 1:
        return run_range((0, trials))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run_range, _chunk_bounds(trials, workers)))
    return [record for part in parts for record in part]


def monte_carlo_count_pmf(
    spec: EnsembleSpec,
    axis: Axis,
    trials: int,
    master_seed: int,
    *,
    workers: int = 1,
) -> CountPmf:
    """Empirical +1-count histogram over independent full experiments."""
    records = run_experiments(spec, axis, trials, master_seed, workers=workers)
    hist = np.bincount([r.plus_count for r in records], minlength=spec.n + 1)
    return CountPmf(spec.n, hist / trials)
