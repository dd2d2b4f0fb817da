"""Ensemble specifications and their exact k-particle reduced density matrices.

Two preparation disciplines are distinguished:

* :class:`FixedComposition` — a multiset of pure states with exact per-type
  counts.  Selecting particles from it is sampling without replacement, so
  an ordered type sequence carries a falling-factorial weight and the
  composition of any prepared batch is deterministic (a delta distribution).

* :class:`IidMixture` — every member is drawn independently from a fixed
  distribution over pure states.  Selections are i.i.d., the k-particle
  reduced state is an exact tensor power of the one-particle state, and the
  composition of a batch fluctuates binomially.

The half-and-half constructors along the x and z axes build the two
fixed ensembles whose one-particle states coincide (both are ½I) while
their pair and higher reduced states do not, and the i.i.d. counterpart
that realizes the unpolarized state as a proper statistical mixture.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .linalg import ATOL_ALGEBRA, PARTICLE_CAP, DensityMatrix, kron
from .spin import Axis, PureState, Z_AXIS, parse_axis, spinor, state_projector

__all__ = [
    "CountPmf",
    "EnsembleSpec",
    "FixedComposition",
    "IidMixture",
    "TypeSequenceWeight",
    "balanced_fixed",
    "balanced_mixture",
    "binomial_pmf",
    "composition_distribution",
    "delta_pmf",
    "ensemble_literal",
    "make_urn",
    "ordered_type_weight",
    "pair_density",
    "pair_density_cross_expansion",
    "pair_frequencies",
    "parse_ensemble",
    "preset_ensemble",
    "reduced_density_matrix",
    "total_variation",
    "urn_composition",
]


def _check_distinct(states: tuple[PureState, ...]) -> None:
    keys = [s.phase_key() for s in states]
    for i in range(len(keys)):
        for j in range(i + 1, len(keys)):
            if (
                abs(keys[i][0] - keys[j][0]) <= ATOL_ALGEBRA
                and abs(keys[i][1] - keys[j][1]) <= ATOL_ALGEBRA
            ):
                raise ValueError(f"components {i} and {j} are the same state up to phase")


@dataclass(frozen=True)
class FixedComposition:
    """Multiset of pure states with exact nonnegative counts summing to n >= 1."""

    components: tuple[tuple[PureState, int], ...]

    def __post_init__(self) -> None:
        comps = tuple((state, int(count)) for state, count in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("at least one component required")
        for state, count in comps:
            if count < 0:
                raise ValueError(f"negative count {count}")
        if sum(c for _, c in comps) < 1:
            raise ValueError("counts must sum to at least 1")
        _check_distinct(tuple(s for s, _ in comps))

    @property
    def n(self) -> int:
        return sum(c for _, c in self.components)


@dataclass(frozen=True)
class IidMixture:
    """Distribution over pure states, drawn independently n times."""

    components: tuple[tuple[PureState, float], ...]
    n: int

    def __post_init__(self) -> None:
        comps = tuple((state, float(p)) for state, p in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("at least one component required")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        total = 0.0
        for state, p in comps:
            if p < 0.0:
                raise ValueError(f"negative probability {p}")
            total += p
        if abs(total - 1.0) > ATOL_ALGEBRA:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        _check_distinct(tuple(s for s, _ in comps))


EnsembleSpec = FixedComposition | IidMixture


def balanced_fixed(n: int, axis: Axis) -> FixedComposition:
    """Exactly n/2 particles polarized up and n/2 down along `axis`; n even."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 2, got {n}")
    half = n // 2
    return FixedComposition(((spinor(axis, +1), half), (spinor(axis, -1), half)))


def balanced_mixture(n: int, axis: Axis) -> IidMixture:
    """n independent draws, up or down along `axis` with probability ½ each."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return IidMixture(((spinor(axis, +1), 0.5), (spinor(axis, -1), 0.5)), n)


def preset_ensemble(name: str, n: int, axis: Axis = Z_AXIS) -> EnsembleSpec:
    """Named presets: "A" = half/half along x, "B" = half/half along z,
    "S" = balanced i.i.d. mixture along `axis`."""
    key = name.strip().upper()
    if key == "A":
        return balanced_fixed(n, Axis(1.0, 0.0, 0.0))
    if key == "B":
        return balanced_fixed(n, Z_AXIS)
    if key == "S":
        return balanced_mixture(n, axis)
    raise ValueError(f"unknown preset {name!r}: expected A, B or S")


def make_urn(n: int, n_black: int | None = None) -> EnsembleSpec:
    """Classical urn of black/white balls, encoded as the orthogonal states z± .

    With `n_black` given, the urn holds exactly that many black balls (fixed
    mixing).  Without it, every ball is black or white with probability ½
    (random mixing).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    black = spinor(Z_AXIS, +1)
    white = spinor(Z_AXIS, -1)
    if n_black is None:
        return IidMixture(((black, 0.5), (white, 0.5)), n)
    if not 0 <= n_black <= n:
        raise ValueError(f"n_black {n_black} outside 0..{n}")
    return FixedComposition(((black, n_black), (white, n - n_black)))


# --------------------------------------------------------------------------
# Count distributions
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CountPmf:
    """Probability mass function on {0, ..., n}."""

    n: int
    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = np.array(self.probabilities, dtype=float)
        if p.shape != (self.n + 1,):
            raise ValueError(f"expected {self.n + 1} probabilities, got shape {p.shape}")
        if p.min() < 0.0:
            raise ValueError(f"negative probability {p.min()!r}")
        total = float(p.sum())
        if abs(total - 1.0) > ATOL_ALGEBRA:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)


def delta_pmf(n: int, at: int) -> CountPmf:
    """All mass on a single count."""
    if not 0 <= at <= n:
        raise ValueError(f"count {at} outside 0..{n}")
    p = np.zeros(n + 1)
    p[at] = 1.0
    return CountPmf(n, p)


def binomial_pmf(n: int, p: float) -> CountPmf:
    """Binomial(n, p); the p = ½ values C(n, m)·2**(-n) come out exact."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    probs = np.array([comb(n, m) * p**m * (1.0 - p) ** (n - m) for m in range(n + 1)])
    return CountPmf(n, probs)


def total_variation(p: CountPmf, q: CountPmf) -> float:
    """½ Σ |p(m) - q(m)|; the pmfs must share a support size."""
    if p.n != q.n:
        raise ValueError(f"support mismatch: {p.n} vs {q.n}")
    return 0.5 * float(np.abs(p.probabilities - q.probabilities).sum())


def composition_distribution(spec: EnsembleSpec, component_index: int) -> CountPmf:
    """Distribution of how many of the n prepared particles carry the given type.

    Deterministic counts give a delta; independent draws give a binomial in
    the component's probability.
    """
    m = len(spec.components)
    if not 0 <= component_index < m:
        raise ValueError(f"component_index {component_index} outside 0..{m - 1}")
    if isinstance(spec, FixedComposition):
        return delta_pmf(spec.n, spec.components[component_index][1])
    return binomial_pmf(spec.n, spec.components[component_index][1])


def urn_composition(spec: EnsembleSpec) -> CountPmf:
    """Distribution of the black-ball count (component 0) of an urn spec."""
    return composition_distribution(spec, 0)


# --------------------------------------------------------------------------
# Ordered selections and reduced density matrices
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeSequenceWeight:
    """Probability that an ordered selection shows this exact type sequence."""

    sequence: tuple[int, ...]
    weight: float


def ordered_type_weight(spec: EnsembleSpec, sequence) -> TypeSequenceWeight:
    """Weight of drawing the given component types, in order.

    Fixed composition: product of remaining-count ratios (sampling without
    replacement).  I.i.d. mixture: plain product of component probabilities.
    """
    seq = tuple(int(i) for i in sequence)
    m = len(spec.components)
    for idx in seq:
        if not 0 <= idx < m:
            raise ValueError(f"component index {idx} outside 0..{m - 1}")
    if isinstance(spec, FixedComposition):
        if len(seq) > spec.n:
            raise ValueError(f"cannot select {len(seq)} of {spec.n} without replacement")
        remaining = [c for _, c in spec.components]
        total = spec.n
        w = 1.0
        for idx in seq:
            w *= remaining[idx] / total
            if w == 0.0:
                break
            remaining[idx] -= 1
            total -= 1
        return TypeSequenceWeight(seq, w)
    w = 1.0
    for idx in seq:
        w *= spec.components[idx][1]
    return TypeSequenceWeight(seq, w)


def reduced_density_matrix(
    spec: EnsembleSpec,
    k: int,
    *,
    cap: int = PARTICLE_CAP,
    atol: float = ATOL_ALGEBRA,
) -> DensityMatrix:
    """Exact state of k particles selected from the ensemble.

    Sum over ordered type sequences of the sequence weight times the tensor
    product of component projectors.  For an i.i.d. mixture this collapses
    to the k-fold Kronecker power of the one-particle state.  For a fixed
    composition the sum is evaluated recursively over suffixes, memoized on
    the remaining counts, which visits far fewer states than the m**k raw
    sequences.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > cap:
        raise ValueError(f"k = {k} exceeds the particle cap {cap}")
    projectors = [state_projector(s) for s, _ in spec.components]

    if isinstance(spec, IidMixture):
        rho1 = np.zeros((2, 2), dtype=complex)
        for proj, (_, p) in zip(projectors, spec.components):
            rho1 += p * proj
        out = rho1
        for _ in range(k - 1):
            out = np.kron(out, rho1)
        return DensityMatrix(out, k, atol)

    if k > spec.n:
        raise ValueError(f"cannot select k = {k} of n = {spec.n} without replacement")
    memo: dict[tuple[tuple[int, ...], int], np.ndarray] = {}

    def suffix_state(counts: tuple[int, ...], depth: int) -> np.ndarray:
        if depth == 0:
            return np.array([[1.0 + 0.0j]])
        key = (counts, depth)
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = sum(counts)
        dim = 2**depth
        acc = np.zeros((dim, dim), dtype=complex)
        for i, c in enumerate(counts):
            if c == 0:
                continue
            rest = counts[:i] + (c - 1,) + counts[i + 1 :]
            acc += (c / total) * np.kron(projectors[i], suffix_state(rest, depth - 1))
        memo[key] = acc
        return acc

    counts = tuple(c for _, c in spec.components)
    return DensityMatrix(suffix_state(counts, k), k, atol)


# --------------------------------------------------------------------------
# Closed pair-state forms for the half-and-half composition
# --------------------------------------------------------------------------


def pair_frequencies(n: int) -> tuple[float, float]:
    """Ordered-pair weights (parallel, antiparallel) when drawing two particles
    without replacement from a half/half composition of n."""
    if n < 2 or n % 2 != 0:
        raise ValueError(f"n must be even and >= 2, got {n}")
    parallel = (0.5 * n * (0.5 * n - 1.0)) / (n * (n - 1.0))
    antiparallel = (n * n / 4.0) / (n * (n - 1.0))
    return parallel, antiparallel


def pair_density(n: int, axis: Axis) -> DensityMatrix:
    """Closed-form two-particle state of balanced_fixed(n, axis)."""
    par, anti = pair_frequencies(n)
    up = state_projector(spinor(axis, +1))
    dn = state_projector(spinor(axis, -1))
    m = par * (kron(up, up) + kron(dn, dn)) + anti * (kron(up, dn) + kron(dn, up))
    return DensityMatrix(m, 2)


def pair_density_cross_expansion(n: int, expansion_axis: Axis) -> DensityMatrix:
    """The same pair state assembled in the product basis of an unbiased axis.

    Equal weight (par + anti)/2 on the four pair projectors of
    `expansion_axis`, plus (par - anti)/2 on the four spin-flip cross terms
    |v_{-s,-s'}⟩⟨v_{s,s'}|.  For expansion along x this reproduces
    pair_density(n, Z_AXIS) entrywise: the flip operator along x equals the
    z Pauli matrix under the spinor phase convention.
    """
    par, anti = pair_frequencies(n)
    diag_w = 0.5 * (par + anti)
    cross_w = 0.5 * (par - anti)
    plus = spinor(expansion_axis, +1).vector
    minus = spinor(expansion_axis, -1).vector
    vec = {+1: plus, -1: minus}
    m = np.zeros((4, 4), dtype=complex)
    for s in (+1, -1):
        for t in (+1, -1):
            ket = np.kron(vec[s], vec[t])
            flipped = np.kron(vec[-s], vec[-t])
            m += diag_w * np.outer(ket, ket.conj())
            m += cross_w * np.outer(flipped, ket.conj())
    return DensityMatrix(m, 2)


# --------------------------------------------------------------------------
# Text literals
# --------------------------------------------------------------------------


def _parse_entry(entry: str) -> tuple[PureState, str]:
    head, star, value = entry.rpartition("*")
    if not star:
        raise ValueError(f"bad ensemble entry {entry!r}: expected <axis><sign>*<value>")
    head = head.strip()
    if not head or head[-1] not in "+-":
        raise ValueError(f"bad ensemble entry {entry!r}: missing +/- sign")
    sign = +1 if head[-1] == "+" else -1
    axis_text = head[:-1].strip()
    if axis_text.startswith("(") and axis_text.endswith(")"):
        axis_text = axis_text[1:-1]
    axis = parse_axis(axis_text)
    return spinor(axis, sign), value.strip()


def parse_ensemble(text: str, n: int | None = None) -> EnsembleSpec:
    """Build a spec from a literal.

    Presets: "A" (half/half along x), "B" (half/half along z), "S" or
    "S:<axis>" (balanced i.i.d. mixture, default axis z); all need `n`.

    Explicit: "fixed:<entries>" or "iid:<entries>" with "/"-separated
    entries "<axis><sign>*<value>", axis one of x, y, z or "(ux,uy,uz)",
    e.g. "fixed:x+*2/x-*2" or "iid:z+*0.5/z-*0.5".  Fixed literals may omit
    `n` (it is the sum of counts, and must match when given); i.i.d.
    literals require it.
    """
    t = text.strip()
    head, colon, tail = t.partition(":")
    key = head.strip().upper()
    if key in ("A", "B", "S"):
        if n is None:
            raise ValueError(f"preset {key} needs n")
        axis = parse_axis(tail) if colon else Z_AXIS
        if key != "S" and colon:
            raise ValueError(f"preset {key} does not take an axis qualifier")
        return preset_ensemble(key, n, axis)
    kind = head.strip().lower()
    if kind not in ("fixed", "iid"):
        raise ValueError(f"cannot parse ensemble {text!r}: expected A, B, S, fixed:... or iid:...")
    if not colon or not tail.strip():
        raise ValueError(f"ensemble literal {text!r} has no entries")
    entries = [e for e in tail.split("/") if e.strip()]
    parsed = [_parse_entry(e) for e in entries]
    if kind == "fixed":
        comps = []
        for state, value in parsed:
            try:
                count = int(value)
            except ValueError:
                raise ValueError(f"fixed entry count {value!r} is not an integer") from None
            comps.append((state, count))
        spec = FixedComposition(tuple(comps))
        if n is not None and n != spec.n:
            raise ValueError(f"n = {n} does not match the literal's total count {spec.n}")
        return spec
    if n is None:
        raise ValueError("iid literals need n (the number of draws)")
    comps = []
    for state, value in parsed:
        try:
            prob = float(value)
        except ValueError:
            raise ValueError(f"iid entry probability {value!r} is not a number") from None
        comps.append((state, prob))
    return IidMixture(tuple(comps), n)


def _entry_label(state: PureState) -> str:
    bx, by, bz = state.bloch()
    for name, ax in (("x", (1, 0, 0)), ("y", (0, 1, 0)), ("z", (0, 0, 1))):
        if abs(bx - ax[0]) < 1e-9 and abs(by - ax[1]) < 1e-9 and abs(bz - ax[2]) < 1e-9:
            return f"{name}+"
        if abs(bx + ax[0]) < 1e-9 and abs(by + ax[1]) < 1e-9 and abs(bz + ax[2]) < 1e-9:
            return f"{name}-"
    axis = Axis.from_vector(bx, by, bz)
    return f"({axis.ux!r},{axis.uy!r},{axis.uz!r})+"


def ensemble_literal(spec: EnsembleSpec) -> str:
    """Canonical literal for a spec; parse_ensemble inverts it up to float noise."""
    if isinstance(spec, FixedComposition):
        entries = "/".join(f"{_entry_label(s)}*{c}" for s, c in spec.components)
        return f"fixed:{entries}"
    entries = "/".join(f"{_entry_label(s)}*{p!r}" for s, p in spec.components)
    return f"iid:{entries}"
