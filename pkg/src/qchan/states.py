"""Qubit state representations: Bloch vectors and 2x2 density operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidStateError

SIGMA_1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
PAULIS = (SIGMA_1, SIGMA_2, SIGMA_3)

SIGMA_1.flags.writeable = False
SIGMA_2.flags.writeable = False
SIGMA_3.flags.writeable = False
IDENTITY.flags.writeable = False

NORM_TOL = 1e-12
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
# Positivity is checked with the closed-form 2x2 eigenvalue formula at a
# slightly looser tolerance, so states coming out of long numerical pipelines
# are not rejected for harmless roundoff.
POSITIVITY_TOL = 1e-10


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector s with rho = (I + s.sigma)/2; |s| <= 1."""

    s1: float
    s2: float
    s3: float

    def __post_init__(self):
        comps = (self.s1, self.s2, self.s3)
        if not all(np.isfinite(c) for c in comps):
            raise InvalidStateError(f"Bloch components must be finite, got {comps}")
        if self.norm > 1.0 + NORM_TOL:
            raise InvalidStateError(f"Bloch vector norm {self.norm} exceeds 1")

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.s1**2 + self.s2**2 + self.s3**2))

    def as_array(self) -> np.ndarray:
        return np.array([self.s1, self.s2, self.s3], dtype=float)

    @classmethod
    def from_array(cls, values) -> "BlochVector":
        v = np.asarray(values, dtype=float)
        if v.shape != (3,):
            raise InvalidStateError(f"expected 3 components, got shape {v.shape}")
        return cls(float(v[0]), float(v[1]), float(v[2]))


def eigenvalues_2x2(matrix: np.ndarray) -> tuple[float, float]:
    """Eigenvalues of a 2x2 Hermitian matrix from the closed-form formula."""
    a = matrix[0, 0].real
    d = matrix[1, 1].real
    half_diff = 0.5 * (a - d)
    radius = np.hypot(half_diff, abs(matrix[0, 1]))
    mean = 0.5 * (a + d)
    return mean - radius, mean + radius


@dataclass(frozen=True, eq=False)
class QubitState:
    """A 2x2 density operator (Hermitian, unit trace, positive semidefinite)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise InvalidStateError(f"density matrix must be 2x2, got {m.shape}")
        if not np.all(np.isfinite(m.view(float))):
            raise InvalidStateError("density matrix has non-finite entries")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise InvalidStateError("density matrix is not Hermitian")
        if abs(m.trace() - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"density matrix trace {m.trace()} is not 1")
        low, _ = eigenvalues_2x2(m)
        if low < -POSITIVITY_TOL:
            raise InvalidStateError(f"density matrix has negative eigenvalue {low}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def bloch(self) -> BlochVector:
        return bloch_from_state(self)

    def min_eigenvalue(self) -> float:
        return eigenvalues_2x2(self.matrix)[0]


def state_from_bloch(s: BlochVector) -> QubitState:
    """Build rho = (I + s.sigma)/2 from a Bloch vector."""
    m = 0.5 * (IDENTITY + s.s1 * SIGMA_1 + s.s2 * SIGMA_2 + s.s3 * SIGMA_3)
    return QubitState(m)


def bloch_from_state(rho: QubitState) -> BlochVector:
    """Recover the Bloch vector via s_i = tr(rho sigma_i)."""
    m = rho.matrix
    s1 = (m[0, 1] + m[1, 0]).real
    s2 = (1j * (m[0, 1] - m[1, 0])).real
    s3 = (m[0, 0] - m[1, 1]).real
    return BlochVector(s1, s2, s3)
