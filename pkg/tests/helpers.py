"""Shared state constructors for the test suite."""

import numpy as np

from entqfi import density_matrix, haar_unitary

INV_SQRT2 = 1.0 / np.sqrt(2.0)

# Bell basis order used by bell_diagonal: phi+, phi-, psi+, psi-.
BELL_VECTORS = {
    "phi+": np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) * INV_SQRT2,
    "phi-": np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) * INV_SQRT2,
    "psi+": np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) * INV_SQRT2,
    "psi-": np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) * INV_SQRT2,
}


def ket(label: str) -> np.ndarray:
    """Computational basis vector from a two-bit label like "00"."""
    index = int(label, 2)
    psi = np.zeros(4, dtype=complex)
    psi[index] = 1.0
    return psi


def pure(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def bell_state(kind: str = "phi+") -> np.ndarray:
    return pure(BELL_VECTORS[kind])


def bell_diagonal(weights) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    assert w.shape == (4,) and abs(w.sum() - 1.0) < 1e-12 and w.min() >= 0.0
    rho = sum(
        wi * pure(BELL_VECTORS[kind])
        for wi, kind in zip(w, ("phi+", "phi-", "psi+", "psi-"))
    )
    return density_matrix(rho)


def werner(p: float) -> np.ndarray:
    return density_matrix(p * bell_state("phi+") + (1.0 - p) * np.eye(4) / 4.0)


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    """Haar-random two-qubit state vector."""
    return haar_unitary(rng, 4)[:, 0]
