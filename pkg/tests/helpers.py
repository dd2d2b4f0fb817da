"""Shared strategies and independent oracles.

The oracles here deliberately use raw numpy (np.kron, np.outer, eigvalsh)
and explicit enumeration so they share no code path with the library
functions they check.
"""

import itertools
import math

import numpy as np
from hypothesis import strategies as st

from spinmix import Axis, FixedComposition, IidMixture, PureState


def unit_axes():
    return (
        st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
        .filter(lambda v: 0.01 < v[0] ** 2 + v[1] ** 2 + v[2] ** 2)
        .map(lambda v: Axis.from_vector(*v))
    )


def _build_state(v) -> PureState:
    a0 = complex(v[0], v[1])
    a1 = complex(v[2], v[3])
    norm = math.sqrt(abs(a0) ** 2 + abs(a1) ** 2)
    return PureState(a0 / norm, a1 / norm)


def pure_states():
    return (
        st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
        .filter(lambda v: v[0] ** 2 + v[1] ** 2 + v[2] ** 2 + v[3] ** 2 > 0.05)
        .map(_build_state)
    )


def signs():
    return st.sampled_from([+1, -1])


def particle_vectors(spec: FixedComposition) -> list[np.ndarray]:
    """The explicit particle list of a fixed composition, as state vectors."""
    out = []
    for state, count in spec.components:
        out.extend([state.vector] * count)
    return out


def brute_force_reduced(particles: list[np.ndarray], k: int) -> np.ndarray:
    """Average of projector tensor products over every ordered k-selection of
    distinct particles from the list."""
    acc = np.zeros((2**k, 2**k), dtype=complex)
    count = 0
    for selection in itertools.permutations(range(len(particles)), k):
        term = np.array([[1.0 + 0.0j]])
        for i in selection:
            v = particles[i]
            term = np.kron(term, np.outer(v, v.conj()))
        acc += term
        count += 1
    return acc / count


def iid_sequence_sum(spec: IidMixture, k: int) -> np.ndarray:
    """Direct sum over all type sequences with product weights (i.i.d. oracle)."""
    vectors = [s.vector for s, _ in spec.components]
    probs = [p for _, p in spec.components]
    acc = np.zeros((2**k, 2**k), dtype=complex)
    for seq in itertools.product(range(len(vectors)), repeat=k):
        weight = 1.0
        term = np.array([[1.0 + 0.0j]])
        for i in seq:
            weight *= probs[i]
            term = np.kron(term, np.outer(vectors[i], vectors[i].conj()))
        acc += weight * term
    return acc


def swap_slots(matrix: np.ndarray, k: int, i: int, j: int) -> np.ndarray:
    """Conjugate a k-particle operator by the swap of tensor slots i and j."""
    t = matrix.reshape((2,) * (2 * k))
    axes = list(range(2 * k))
    axes[i], axes[j] = axes[j], axes[i]
    axes[k + i], axes[k + j] = axes[k + j], axes[k + i]
    return t.transpose(axes).reshape(2**k, 2**k)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (m + m.conj().T)


def random_density(rng: np.random.Generator, dim: int, rank: int = 3) -> np.ndarray:
    """Random mixture of a few random pure projectors: Hermitian, unit trace, PSD."""
    weights = rng.random(rank)
    weights /= weights.sum()
    acc = np.zeros((dim, dim), dtype=complex)
    for w in weights:
        v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        v /= np.linalg.norm(v)
        acc += w * np.outer(v, v.conj())
    return acc


def composed_rotation(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Unitary built from composed 2x2 complex plane rotations."""
    u = np.eye(dim, dtype=complex)
    for _ in range(3 * dim):
        p, q = rng.choice(dim, size=2, replace=False)
        theta = rng.uniform(0.0, 2.0 * np.pi)
        phi = rng.uniform(0.0, 2.0 * np.pi)
        g = np.eye(dim, dtype=complex)
        g[p, p] = np.cos(theta)
        g[q, q] = np.cos(theta)
        g[p, q] = -np.sin(theta) * np.exp(1j * phi)
        g[q, p] = np.sin(theta) * np.exp(-1j * phi)
        u = u @ g
    return u
