"""Maximization of the guessing probability over probe states and measurements.

The d=2 game has a closed form; higher dimensions use an alternating see-saw:
the measurement half-step is solved exactly by two-state discrimination, the
probe half-step by a derivative-free Nelder-Mead search over the pure-state
parameters (d-1 polar angles plus d-1 relative phases; purity suffices since
the objective is linear in the probe for a fixed measurement).  Restarts are
independent and deterministic for a fixed seed.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import refdata
from .discrimination import DiscriminationProblem, best_projective_two_bucket, helstrom
from .game import (
    GameConfig,
    Measurement,
    fourier_matrix,
    guessing_probability,
    post_measurement_ensemble,
    register_state,
)

SEESAW_TOL = 1e-10
SEESAW_MAX_ITER = 500
DEFAULT_RESTARTS = 64

THREADS_ENV = "UGAME_THREADS"


@dataclass(frozen=True)
class OptimizationResult:
    """Best strategy found: pure probe amplitudes, register measurement, value."""

    best_state: np.ndarray
    best_measurement: Measurement
    p_guess: float
    restarts_used: int
    seed: int
    history: tuple = ()


def optimal_probe_d2() -> np.ndarray:
    """The probe amplitudes optimal for every coherence value in the d=2 game.

    Normalization of |0> + |->, i.e. approximately (0.92388, -0.38268).
    """
    psi = np.array([1.0 + 1.0 / np.sqrt(2.0), -1.0 / np.sqrt(2.0)], dtype=complex)
    return psi / np.linalg.norm(psi)


def best_known_probe_d3() -> np.ndarray:
    """Best known probe amplitudes for the d=3 game at high register coherence."""
    psi = refdata.PROBE_D3_BEST.astype(complex)
    return psi / np.linalg.norm(psi)


def evaluate_strategy(config: GameConfig, rho_B, m: Measurement) -> float:
    """Guessing probability of a fixed probe state and register measurement."""
    ensemble = post_measurement_ensemble(config, rho_B)
    return guessing_probability(ensemble, m)


def optimize_d2(gamma: float) -> OptimizationResult:
    """Closed-form optimum of the d=2 game: fixed probe plus its discrimination measurement."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    psi = optimal_probe_d2()
    config = GameConfig(d=2, gamma=gamma)
    ensemble = post_measurement_ensemble(config, np.outer(psi, psi.conj()))
    p, m = helstrom(DiscriminationProblem(states=ensemble.states))
    return OptimizationResult(
        best_state=psi,
        best_measurement=m,
        p_guess=p,
        restarts_used=0,
        seed=0,
        history=(p,),
    )


def _params_to_state(params: np.ndarray, d: int) -> np.ndarray:
    """Hyperspherical parameters (d-1 polar angles, d-1 phases) to unit amplitudes."""
    angles = params[: d - 1]
    phases = params[d - 1:]
    amps = np.zeros(d, dtype=complex)
    radius = 1.0
    for k in range(d - 1):
        amps[k] = radius * np.cos(angles[k])
        radius *= np.sin(angles[k])
    amps[d - 1] = radius
    amps[1:] *= np.exp(1j * phases)
    return amps


def _best_measurement(states: tuple, d: int) -> tuple[float, Measurement]:
    problem = DiscriminationProblem(states=states)
    if d == 2:
        return helstrom(problem)
    return best_projective_two_bucket(problem)


def _objective_matrix(m: Measurement, reg: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Hermitian W with Tr(rho_B W) equal to the guessing probability for fixed measurement."""
    d = f.shape[0]
    fd = f.conj().T
    w = np.zeros((d, d), dtype=complex)
    for x, mx in enumerate(m.elements):
        proj = np.zeros((d, d), dtype=complex)
        proj[x, x] = 1.0
        w += (reg[0, 0] * mx[0, 0] * proj
              + reg[0, 1] * mx[1, 0] * (fd @ proj)
              + reg[1, 0] * mx[0, 1] * (proj @ f)
              + reg[1, 1] * mx[1, 1] * (fd @ proj @ f))
    return w


def _seesaw_restart(
    config: GameConfig,
    x0: np.ndarray,
    reg: np.ndarray,
    f: np.ndarray,
) -> tuple[float, np.ndarray, Measurement, tuple]:
    d = config.d
    x = x0
    psi = _params_to_state(x, d)
    ensemble = post_measurement_ensemble(config, np.outer(psi, psi.conj()))
    p_current, m = _best_measurement(ensemble.states, d)
    history = [p_current]
    for _ in range(SEESAW_MAX_ITER):
        w = _objective_matrix(m, reg, f)

        def negative_value(params):
            s = _params_to_state(params, d)
            return -np.real(np.vdot(s, w @ s))

        result = minimize(
            negative_value, x, method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 600},
        )
        x = result.x
        psi = _params_to_state(x, d)
        ensemble = post_measurement_ensemble(config, np.outer(psi, psi.conj()))
        p_new, m = _best_measurement(ensemble.states, d)
        history.append(p_new)
        if p_new - p_current < SEESAW_TOL:
            p_current = max(p_current, p_new)
            break
        p_current = p_new
    return p_current, psi, m, tuple(history)


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def optimize_numeric(
    config: GameConfig,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
) -> OptimizationResult:
    """See-saw maximization of the guessing probability for d in {2, 3}.

    Runs ``restarts`` independent searches from starting points drawn
    uniformly over the parameter box (angles in [0, pi/2], phases in
    [0, 2 pi)), each alternating an exact measurement half-step with a
    Nelder-Mead probe half-step until the improvement drops below 1e-10.
    The result is the lexicographic maximum of (p_guess, restart index),
    so it is deterministic for a fixed seed regardless of how restarts
    are scheduled.  ``UGAME_THREADS`` caps the worker count.
    """
    if config.d not in (2, 3):
        raise ValueError(f"numeric optimizer supports d in {{2, 3}}, got {config.d}")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    d = config.d
    reg = register_state(config.gamma)
    f = fourier_matrix(d)
    rng = np.random.default_rng(seed)
    starts = [
        np.concatenate([
            rng.uniform(0.0, np.pi / 2.0, d - 1),
            rng.uniform(0.0, 2.0 * np.pi, d - 1),
        ])
        for _ in range(restarts)
    ]

    def run(x0):
        return _seesaw_restart(config, x0, reg, f)

    workers = min(_worker_count(), restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, starts))
    else:
        outcomes = [run(x0) for x0 in starts]

    best_index = max(range(restarts), key=lambda i: (outcomes[i][0], i))
    p, psi, m, history = outcomes[best_index]
    return OptimizationResult(
        best_state=psi,
        best_measurement=m,
        p_guess=p,
        restarts_used=restarts,
        seed=seed,
        history=history,
    )
