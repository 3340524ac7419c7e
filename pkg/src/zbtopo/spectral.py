"""Dense Hermitian spectral decompositions for small matrices (dim 2..8).

Eigenvalues come back ascending with a fixed eigenvector phase convention
(largest-magnitude component made real and positive) so repeated runs emit
byte-identical numbers.  Levels closer than ``DEGENERACY_TOL`` are merged
into a single rank-g projector, which keeps downstream band algebra from
dividing by a vanishing gap at exactly degenerate points.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

__all__ = ["SpectralDecomposition", "hermitian_eig", "evolve"]

HERMITICITY_TOL = 1e-9
DEGENERACY_TOL = 1e-8
MAX_DIM = 8


def _fix_phase(column):
    pivot = column[int(np.argmax(np.abs(column)))]
    mag = abs(pivot)
    if mag == 0.0:
        return column
    return column * (mag / pivot)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigen-data of one Hermitian matrix.

    ``energies``/``states`` hold the raw ascending eigensystem; ``levels``
    and ``projectors`` hold the degeneracy-merged version (projector i has
    rank ``group_sizes[i]``).  ``group_velocities`` is a (levels, 3) array
    filled by callers that hold the momentum gradient of the matrix.
    """

    energies: np.ndarray
    states: np.ndarray
    levels: np.ndarray
    projectors: np.ndarray
    group_sizes: tuple[int, ...]
    group_velocities: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.energies.shape[0]

    def reconstruct(self) -> np.ndarray:
        return np.einsum("g,gij->ij", self.levels, self.projectors)

    def with_velocities(self, velocities) -> "SpectralDecomposition":
        return replace(self, group_velocities=np.asarray(velocities, dtype=float))


def hermitian_eig(matrix) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix into merged levels and projectors.

    Raises ``ValueError`` if the input is further than ``HERMITICITY_TOL``
    from Hermitian (the defect norm is included in the message) or if the
    dimension is outside 2..8.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if not 2 <= n <= MAX_DIM:
        raise ValueError(f"dimension {n} outside the supported range 2..{MAX_DIM}")
    defect = float(np.max(np.abs(a - a.conj().T)))
    if defect > HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian: max|A - A^dag| = {defect:.3e}")

    w, v = np.linalg.eigh(0.5 * (a + a.conj().T))
    for col in range(n):
        v[:, col] = _fix_phase(v[:, col])

    split_at = np.nonzero(np.diff(w) > DEGENERACY_TOL)[0] + 1
    groups = np.split(np.arange(n), split_at)
    levels = np.array([w[g].mean() for g in groups])
    projectors = np.stack([v[:, g] @ v[:, g].conj().T for g in groups])
    return SpectralDecomposition(
        energies=w,
        states=v,
        levels=levels,
        projectors=projectors,
        group_sizes=tuple(len(g) for g in groups),
    )


def evolve(matrix, state, t: float) -> np.ndarray:
    """Apply exp(-i H t) to a normalized state via the spectral decomposition."""
    psi = np.asarray(state, dtype=complex)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state is not normalized: |psi| = {norm:.12g}")
    dec = hermitian_eig(matrix)
    phases = np.exp(-1j * dec.levels * t)
    return np.einsum("g,gij,j->i", phases, dec.projectors, psi)
