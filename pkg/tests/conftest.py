"""Shared randomized-input helpers and fixtures for the test suite."""

import numpy as np
import pytest

from ugame import GameConfig, optimize_numeric


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix with phase fix."""
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r))).conj()


def random_pure(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state amplitudes."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_density(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random pure state mixed with the maximally mixed state."""
    v = random_pure(d, rng)
    weight = rng.uniform(0.0, 1.0)
    return weight * np.outer(v, v.conj()) + (1.0 - weight) * np.eye(d) / d


def random_hermitian(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (z + z.conj().T) / 2.0


def random_subnormalized_pair(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Two sub-normalized qubit states with priors summing to one."""
    prior = rng.uniform(0.2, 0.8)
    return prior * random_density(2, rng), (1.0 - prior) * random_density(2, rng)


@pytest.fixture(scope="session")
def seesaw_d3_gamma1():
    """One moderately sized see-saw run at (d=3, gamma=1), shared across tests."""
    return optimize_numeric(GameConfig(d=3, gamma=1.0), restarts=16, seed=7)
