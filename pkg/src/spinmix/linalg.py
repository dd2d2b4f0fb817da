"""Dense complex matrix algebra for k-particle spin spaces (dimension 2**k).

Everything here is a pure function of its inputs; matrices handed to
callers are never mutated and `DensityMatrix` freezes its payload.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass

import numpy as np

# Absolute tolerance for algebraic identities (hermiticity, trace, entrywise equality).
ATOL_ALGEBRA = 1e-12
# Tolerance for eigenvalue-mediated quantities (spectra, trace distances).
ATOL_EIGEN = 1e-10
# Jacobi sweeps stop once the off-diagonal Frobenius norm falls below this.
JACOBI_OFF_TOL = 1e-13
# Largest supported particle number; 2**12 = 4096-dimensional matrices.
PARTICLE_CAP = 12

_MAX_JACOBI_SWEEPS = 100


def _as_square_complex(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two square complex matrices."""
    return np.kron(_as_square_complex(a, "a"), _as_square_complex(b, "b"))


def kron_power(a: np.ndarray, k: int) -> np.ndarray:
    """k-fold Kronecker power a ⊗ a ⊗ ... ⊗ a, k >= 1."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    out = _as_square_complex(a, "a")
    for _ in range(k - 1):
        out = np.kron(out, a)
    return out


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entrywise deviation |M - M†|."""
    m = np.asarray(m)
    return float(np.abs(m - m.conj().T).max())


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated k-particle density matrix in the computational (z) basis.

    Construction enforces the cheap invariants (shape 2**k, hermiticity and
    unit trace within `atol`).  Positive semidefiniteness needs a spectrum,
    so it is exposed through :meth:`min_eigenvalue` and asserted in the test
    suite rather than on every construction.
    """

    matrix: np.ndarray
    particle_count: int
    atol: InitVar[float] = ATOL_ALGEBRA

    def __post_init__(self, atol: float) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        k = self.particle_count
        if not 1 <= k <= PARTICLE_CAP:
            raise ValueError(f"particle_count {k} outside 1..{PARTICLE_CAP}")
        if m.shape[0] != 2**k:
            raise ValueError(f"dim {m.shape[0]} does not match 2**{k}")
        defect = hermiticity_defect(m)
        if defect > atol:
            raise ValueError(f"not Hermitian: max |M - M†| = {defect:.3e} > {atol:.1e}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > atol:
            raise ValueError(f"trace {tr} differs from 1 by more than {atol:.1e}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])


def partial_trace_last(m: DensityMatrix) -> DensityMatrix:
    """Trace out the last 2-dimensional tensor factor."""
    if m.particle_count < 2:
        raise ValueError("partial_trace_last needs at least 2 particles")
    half = m.dim // 2
    t = m.matrix.reshape(half, 2, half, 2)
    return DensityMatrix(np.trace(t, axis1=1, axis2=3), m.particle_count - 1)


def _jacobi_diagonal(s: np.ndarray, off_tol: float) -> np.ndarray:
    """Diagonal of a real symmetric matrix after cyclic Jacobi sweeps.

    Rotates (p, q) pairs in row order until the off-diagonal Frobenius norm
    drops below `off_tol`.  `s` is destroyed.  O(n^3) per sweep; fine for
    the 2**k spaces handled here, not meant for general use.
    """
    n = s.shape[0]
    if n == 1:
        return s.diagonal().copy()
    # Elements below this can be skipped without pushing the off-norm above off_tol.
    skip = off_tol / (2.0 * n)
    for _ in range(_MAX_JACOBI_SWEEPS):
        off = math.sqrt(2.0 * float(np.sum(np.triu(s, 1) ** 2)))
        if off <= off_tol:
            return s.diagonal().copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = s[p, q]
                if abs(apq) <= skip:
                    continue
                theta = 0.5 * math.atan2(2.0 * apq, s[q, q] - s[p, p])
                c = math.cos(theta)
                sn = math.sin(theta)
                cp = s[:, p].copy()
                cq = s[:, q].copy()
                s[:, p] = c * cp - sn * cq
                s[:, q] = sn * cp + c * cq
                rp = s[p, :].copy()
                rq = s[q, :].copy()
                s[p, :] = c * rp - sn * rq
                s[q, :] = sn * rp + c * rq
                s[p, q] = 0.0
                s[q, p] = 0.0
    raise RuntimeError("Jacobi sweeps did not converge")


def hermitian_eigenvalues(
    m: np.ndarray,
    *,
    herm_atol: float = ATOL_ALGEBRA,
    off_tol: float = JACOBI_OFF_TOL,
) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Uses cyclic Jacobi on the real symmetric embedding [[A, -B], [B, A]] of
    H = A + iB, whose spectrum is that of H with every eigenvalue doubled;
    one copy of each pair is returned.  Rejects input whose hermiticity
    defect exceeds `herm_atol`.
    """
    m = _as_square_complex(m)
    defect = hermiticity_defect(m)
    if defect > herm_atol:
        raise ValueError(f"not Hermitian: max |M - M†| = {defect:.3e} > {herm_atol:.1e}")
    a = m.real
    b = m.imag
    s = np.block([[a, -b], [b, a]])
    s = 0.5 * (s + s.T)  # kill the sub-tolerance asymmetry before rotating
    diag = _jacobi_diagonal(s, off_tol)
    diag.sort()
    return diag[::2].copy()


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the sum of absolute eigenvalues of a - b."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    eigs = hermitian_eigenvalues(a.matrix - b.matrix)
    return min(1.0, 0.5 * float(np.abs(eigs).sum()))
