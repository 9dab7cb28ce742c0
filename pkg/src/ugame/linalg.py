"""Dense complex linear algebra for small matrices and quantum-information primitives.

All operators are plain ``numpy`` arrays of ``complex`` dtype.  A "density
matrix" here is a Hermitian, positive-semidefinite, unit-trace array that has
passed :func:`validate_density`; a "probability distribution" is a 1-D float
array that has passed :func:`validate_distribution`.  Everything is sized for
register dimensions of a tabletop experiment (d <= 8) and uses fixed dense
eigensolvers for reproducibility.
"""

from __future__ import annotations

import numpy as np

# Dimension cap: the games played here use d = 2 and 3, meshes go up to 8 modes.
MAX_DIM = 8

# Tolerance tiers: structural validation, numerical round-trips, float dust.
STRUCT_TOL = 1e-10
NUMERIC_TOL = 1e-9
CLAMP_TOL = 1e-12

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting non-finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains NaN or Inf entries")
    return arr


def is_hermitian(m: np.ndarray, tol: float = STRUCT_TOL) -> bool:
    """Max entry-wise deviation from m == m^dagger is within tol."""
    return bool(np.abs(m - m.conj().T).max() <= tol)


def hermitian_eigensystem(m, tol: float = STRUCT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian matrix.

    Satisfies ``||m - V diag(w) V^dagger||_max <= 1e-9``.
    """
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix is not square: {arr.shape}")
    if arr.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {arr.shape[0]} exceeds supported cap {MAX_DIM}")
    if not is_hermitian(arr, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(arr)
    return w, v


def validate_density(m, tol: float = STRUCT_TOL) -> np.ndarray:
    """Check density-matrix invariants and return a cleaned copy.

    Requires Hermiticity within 1e-12 (entry-wise), unit trace within 1e-10
    and eigenvalues >= -1e-10 at default tolerances.  Eigenvalues in
    ``[-tol, 0]`` are clamped to zero and a trace drift of at most ``tol``
    is renormalized away; anything worse raises with the violated invariant
    named.
    """
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"density matrix is not square: {arr.shape}")
    herm_dev = np.abs(arr - arr.conj().T).max()
    if herm_dev > max(1e-12, tol):
        raise ValueError(f"not Hermitian: max deviation {herm_dev:.3e}")
    trace = arr.trace()
    if abs(trace - 1.0) > tol:
        raise ValueError(f"trace is not 1: trace {trace.real:.6g}")
    arr = (arr + arr.conj().T) / 2
    w, v = np.linalg.eigh(arr)
    if w.min() < -tol:
        raise ValueError(f"not positive semidefinite: min eigenvalue {w.min():.3e}")
    if w.min() < 0:
        w = np.clip(w, 0.0, None)
        arr = (v * w) @ v.conj().T
    arr = arr / arr.trace().real
    return arr


def validate_subnormalized(m, tol: float = STRUCT_TOL) -> np.ndarray:
    """Like :func:`validate_density` but allows trace in [0, 1] (sub-normalized state)."""
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix is not square: {arr.shape}")
    herm_dev = np.abs(arr - arr.conj().T).max()
    if herm_dev > max(1e-12, tol):
        raise ValueError(f"not Hermitian: max deviation {herm_dev:.3e}")
    trace = arr.trace().real
    if trace < -tol or trace > 1.0 + tol:
        raise ValueError(f"trace {trace:.6g} outside [0, 1]")
    arr = (arr + arr.conj().T) / 2
    w = np.linalg.eigvalsh(arr)
    if w.min() < -tol:
        raise ValueError(f"not positive semidefinite: min eigenvalue {w.min():.3e}")
    return arr


def psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Principal square root of a Hermitian PSD matrix (small negative dust clamped)."""
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def fidelity(rho, sigma, tol: float = STRUCT_TOL) -> float:
    """Uhlmann fidelity F = Tr sqrt(sqrt(rho) sigma sqrt(rho)) between two states."""
    r = as_complex_matrix(rho)
    s = as_complex_matrix(sigma)
    if r.shape != s.shape:
        raise ValueError(f"dimension mismatch: {r.shape} vs {s.shape}")
    r = validate_density(r, tol)
    s = validate_density(s, tol)
    sq = psd_sqrt(r)
    inner = sq @ s @ sq
    w = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return float(np.sqrt(w).sum())


def clamp_probabilities(p: np.ndarray, tol: float = CLAMP_TOL) -> np.ndarray:
    """Snap float dust in [-tol, 1+tol] into [0, 1]; anything beyond raises."""
    arr = np.asarray(p, dtype=float)
    if arr.min() < -tol:
        raise ValueError(f"negative probability {arr.min():.3e}")
    if arr.max() > 1.0 + tol:
        raise ValueError(f"probability above one: {arr.max():.6g}")
    return np.clip(arr, 0.0, 1.0)


def validate_distribution(p, tol: float = 1e-9) -> np.ndarray:
    """Validate an outcome distribution: entries in [0,1] after dust clamping, sum 1."""
    arr = clamp_probabilities(p)
    total = arr.sum()
    if abs(total - 1.0) > tol:
        raise ValueError(f"probabilities sum to {total:.6g}, not 1")
    return arr


def shannon_entropy(p) -> float:
    """Shannon entropy in bits, with the convention 0 log 0 = 0."""
    arr = clamp_probabilities(p)
    nz = arr[arr > 0]
    return float(-(nz * np.log2(nz)).sum())
