"""Minimal-error discrimination of sub-normalized qubit states.

The two-state optimum is the classic projective measurement onto the
positive/negative eigenspaces of the weighted state difference.  Three-state
ensembles are handled by the two-bucket strategy actually used in the
experiment: one outcome is never guessed (its element is the zero matrix) and
the remaining pair is discriminated optimally.  A dense Bloch-sphere grid
scan serves as an independent oracle for both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import Measurement
from .linalg import NUMERIC_TOL, validate_subnormalized


@dataclass(frozen=True)
class DiscriminationProblem:
    """Sub-normalized states whose traces are the outcome priors (summing to 1)."""

    states: tuple

    def __post_init__(self):
        states = tuple(validate_subnormalized(s) for s in self.states)
        if not states:
            raise ValueError("discrimination problem needs at least one state")
        dim = states[0].shape[0]
        if any(s.shape != (dim, dim) for s in states):
            raise ValueError("states have mismatched dimensions")
        total = sum(s.trace().real for s in states)
        if abs(total - 1.0) > NUMERIC_TOL:
            raise ValueError(f"priors sum to {total:.6g}, not 1")
        object.__setattr__(self, "states", states)

    @property
    def dim(self) -> int:
        return self.states[0].shape[0]


def _discriminate_pair(rho0: np.ndarray, rho1: np.ndarray) -> tuple[float, np.ndarray]:
    """Optimal success probability and projector for guessing between two
    sub-normalized states: p = (t0 + t1)/2 + ||rho0 - rho1||_1 / 2.

    Returns (p, P) with P the projector answered as outcome 0; the
    zero-eigenvalue subspace of the difference is assigned to outcome 0.
    """
    diff = rho0 - rho1
    w, v = np.linalg.eigh(diff)
    keep = w >= 0.0
    p = rho1.trace().real + w[w > 0].sum()
    cols = v[:, keep]
    proj = cols @ cols.conj().T
    return float(p), proj


def helstrom(problem: DiscriminationProblem) -> tuple[float, Measurement]:
    """Optimal two-state discrimination: p = 1/2 + ||rho0 - rho1||_1 / 2.

    The returned measurement is projective onto the positive/negative
    eigenspaces of the state difference and achieves p when evaluated
    against the same pair.
    """
    if len(problem.states) != 2:
        raise ValueError(f"expected exactly 2 states, got {len(problem.states)}")
    p, proj = _discriminate_pair(*problem.states)
    dim = problem.dim
    m = Measurement(elements=(proj, np.eye(dim) - proj))
    return p, m


def best_projective_two_bucket(
    problem: DiscriminationProblem,
    zero_outcome: int | None = None,
) -> tuple[float, Measurement]:
    """Best strategy that never guesses one outcome of a three-state problem.

    The element for ``zero_outcome`` is the zero matrix; the other two
    outcomes get the optimal projector pair for their states.  With
    ``zero_outcome=None`` all three choices are tried and the best is
    returned (ties broken toward the smaller zero outcome).
    """
    if len(problem.states) != 3:
        raise ValueError(f"expected exactly 3 states, got {len(problem.states)}")
    if zero_outcome is None:
        results = [best_projective_two_bucket(problem, z) for z in range(3)]
        return max(results, key=lambda r: r[0])
    if zero_outcome not in (0, 1, 2):
        raise ValueError(f"zero outcome must be 0, 1 or 2, got {zero_outcome}")
    a, b = (x for x in range(3) if x != zero_outcome)
    p, proj = _discriminate_pair(problem.states[a], problem.states[b])
    dim = problem.dim
    elements = [None, None, None]
    elements[zero_outcome] = np.zeros((dim, dim), dtype=complex)
    elements[a] = proj
    elements[b] = np.eye(dim) - proj
    return p, Measurement(elements=tuple(elements))


def _bloch_coordinates(m: np.ndarray) -> tuple[np.ndarray, float]:
    """Trace-scaled Bloch vector (Tr m sigma_i) and trace of a Hermitian 2x2 matrix."""
    r = np.array([
        2.0 * m[0, 1].real,
        -2.0 * m[0, 1].imag,
        (m[0, 0] - m[1, 1]).real,
    ])
    return r, m.trace().real


def brute_force_projective(problem: DiscriminationProblem, grid_steps: int) -> float:
    """Exhaustive scan over projective qubit measurements as a discrimination oracle.

    Projector axes run over a polar/azimuthal grid (``grid_steps`` polar
    values on [0, pi], ``2 grid_steps - 1`` azimuthal values on [0, 2 pi)),
    each measurement outcome is assigned to its best state, and the maximum
    success probability is returned.  Always a lower bound on the true
    projective optimum; within O(1/grid_steps) of :func:`helstrom` for two
    states.
    """
    if problem.dim != 2:
        raise ValueError(f"oracle only handles 2-dimensional registers, got dim {problem.dim}")
    if len(problem.states) not in (2, 3):
        raise ValueError(f"expected 2 or 3 states, got {len(problem.states)}")
    if grid_steps < 2:
        raise ValueError(f"grid_steps must be >= 2, got {grid_steps}")
    thetas = np.linspace(0.0, np.pi, grid_steps)
    phis = np.linspace(0.0, 2.0 * np.pi, 2 * grid_steps - 1, endpoint=False)
    sin_t = np.sin(thetas)[:, None]
    axis = np.stack([
        sin_t * np.cos(phis)[None, :],
        sin_t * np.sin(phis)[None, :],
        np.cos(thetas)[:, None] * np.ones_like(phis)[None, :],
    ])
    best_plus = None
    best_minus = None
    for state in problem.states:
        r, t = _bloch_coordinates(state)
        overlap = np.tensordot(r, axis, axes=1)
        val_plus = 0.5 * (t + overlap)
        val_minus = 0.5 * (t - overlap)
        best_plus = val_plus if best_plus is None else np.maximum(best_plus, val_plus)
        best_minus = val_minus if best_minus is None else np.maximum(best_minus, val_minus)
    return float((best_plus + best_minus).max())
