"""Core mathematics of the two-observable guessing game.

Bob prepares a d-dimensional probe, Alice measures it either in the standard
basis or in the Fourier basis, with the choice controlled by a 2-dimensional
register of coherence ``gamma``.  After Alice's outcome x, the register is
left in a sub-normalized 2x2 state; Bob's guessing probability is the success
probability of discriminating those states.

Conventions: the Fourier matrix uses w = exp(+2i pi / d), and register value
1 (the lower interferometer layer) triggers the Fourier transformation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    NUMERIC_TOL,
    STRUCT_TOL,
    as_complex_matrix,
    clamp_probabilities,
    shannon_entropy,
    validate_density,
    validate_subnormalized,
)


@dataclass(frozen=True)
class GameConfig:
    """One member of the game family: probe dimension d and register coherence gamma."""

    d: int
    gamma: float

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"game dimension must be >= 2, got {self.d}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma}")


@dataclass(frozen=True)
class Measurement:
    """POVM: positive elements of a common dimension summing to the identity."""

    elements: tuple
    kind: str = field(default="")

    def __post_init__(self):
        elems = tuple(as_complex_matrix(m) for m in self.elements)
        if not elems:
            raise ValueError("measurement needs at least one element")
        dim = elems[0].shape[0]
        total = np.zeros((dim, dim), dtype=complex)
        for m in elems:
            if m.shape != (dim, dim):
                raise ValueError(f"element shape {m.shape} does not match ({dim}, {dim})")
            if np.abs(m - m.conj().T).max() > STRUCT_TOL:
                raise ValueError("measurement element is not Hermitian")
            if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -STRUCT_TOL:
                raise ValueError("measurement element is not positive semidefinite")
            total += m
        if np.abs(total - np.eye(dim)).max() > NUMERIC_TOL:
            raise ValueError("measurement elements do not sum to the identity")
        object.__setattr__(self, "elements", elems)
        if not self.kind:
            projective = all(np.abs(m @ m - m).max() <= NUMERIC_TOL for m in elems)
            object.__setattr__(self, "kind", "projective" if projective else "general")

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class PostMeasurementEnsemble:
    """Sub-normalized register states, one per outcome, with probabilities their traces."""

    states: tuple
    outcome_probs: np.ndarray = field(init=False)

    def __post_init__(self):
        states = tuple(validate_subnormalized(s) for s in self.states)
        probs = clamp_probabilities(np.array([s.trace().real for s in states]))
        if abs(probs.sum() - 1.0) > NUMERIC_TOL:
            raise ValueError(f"outcome probabilities sum to {probs.sum():.6g}, not 1")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "outcome_probs", probs)

    def __len__(self) -> int:
        return len(self.states)


def fourier_matrix(d: int) -> np.ndarray:
    """d-dimensional Fourier matrix U_jk = w^{jk} / sqrt(d) with w = exp(2i pi / d)."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    w = np.exp(2j * np.pi / d)
    return w ** (j * k) / np.sqrt(d)


def register_state(gamma: float) -> np.ndarray:
    """Register state with diagonal 1/2 and real off-diagonal coherence gamma/2."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    return 0.5 * np.array([[1.0, gamma], [gamma, 1.0]], dtype=complex)


def post_measurement_ensemble(
    config: GameConfig,
    rho_B,
    register=None,
) -> PostMeasurementEnsemble:
    """Sub-normalized register states after Alice's measurement, for each outcome x.

    The state for outcome x is

        [[r00 <x|rho_B|x>,   r01 <x|rho_B F^dag|x>],
         [r10 <x|F rho_B|x>, r11 <x|F rho_B F^dag|x>]]

    with F the Fourier matrix of the game dimension and r the 2x2 register
    state (defaults to ``register_state(config.gamma)``).
    """
    rho = validate_density(rho_B)
    if rho.shape[0] != config.d:
        raise ValueError(f"probe has dimension {rho.shape[0]}, game expects {config.d}")
    reg = register_state(config.gamma) if register is None else validate_density(register)
    if reg.shape != (2, 2):
        raise ValueError(f"register must be 2x2, got {reg.shape}")
    f = fourier_matrix(config.d)
    f_rho = f @ rho
    rho_fd = rho @ f.conj().T
    f_rho_fd = f_rho @ f.conj().T
    states = []
    for x in range(config.d):
        states.append(np.array([
            [reg[0, 0] * rho[x, x], reg[0, 1] * rho_fd[x, x]],
            [reg[1, 0] * f_rho[x, x], reg[1, 1] * f_rho_fd[x, x]],
        ]))
    return PostMeasurementEnsemble(states=tuple(states))


def guessing_probability(ensemble: PostMeasurementEnsemble, m: Measurement) -> float:
    """P = sum_x Tr(M_x rho~_x): probability that Bob's guess matches Alice's outcome."""
    if m.dim != 2:
        raise ValueError(f"register measurement must be 2-dimensional, got {m.dim}")
    if len(m) != len(ensemble):
        raise ValueError(
            f"measurement has {len(m)} elements for {len(ensemble)} outcomes"
        )
    p = sum(np.trace(mx @ rx).real for mx, rx in zip(m.elements, ensemble.states))
    return float(clamp_probabilities(np.array([p]), tol=NUMERIC_TOL)[0])


def pguess_max_d2(gamma: float) -> float:
    """Optimal guessing probability of the d=2 game: (1 + sqrt(2 + 2 gamma^2)/2) / 2."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    return 0.5 * (1.0 + np.sqrt(2.0 + 2.0 * gamma * gamma) / 2.0)


def _check_unitary(u: np.ndarray, name: str, tol: float = STRUCT_TOL) -> np.ndarray:
    arr = as_complex_matrix(u)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} is not square: {arr.shape}")
    if np.abs(arr.conj().T @ arr - np.eye(arr.shape[0])).max() > tol:
        raise ValueError(f"{name} is not unitary within tolerance")
    return arr


def maassen_uffink_bound(basis_s, basis_t) -> float:
    """Entropic lower bound log2(1/c) with c the maximum squared basis overlap."""
    s = _check_unitary(basis_s, "basis_s")
    t = _check_unitary(basis_t, "basis_t")
    if s.shape != t.shape:
        raise ValueError(f"basis dimensions differ: {s.shape} vs {t.shape}")
    c = float(np.abs(s.conj().T @ t).max() ** 2)
    return float(np.log2(1.0 / c))


def entropic_sum(rho_B, basis_s, basis_t) -> float:
    """H(S) + H(T) in bits for Born-rule outcome distributions in the two bases."""
    rho = validate_density(rho_B)
    s = _check_unitary(basis_s, "basis_s")
    t = _check_unitary(basis_t, "basis_t")
    p_s = clamp_probabilities(np.einsum("ij,jk,ki->i", s.conj().T, rho, s).real)
    p_t = clamp_probabilities(np.einsum("ij,jk,ki->i", t.conj().T, rho, t).real)
    return shannon_entropy(p_s) + shannon_entropy(p_t)


def gap_ratio(p_best_known: float, p_exp: float) -> tuple[float, float]:
    """Uncertainty gap to the best known strategy and its share of total uncertainty.

    Returns (p_best_known - p_exp, (p_best_known - p_exp) / (1 - p_exp)).
    """
    if not 0.0 <= p_exp <= p_best_known <= 1.0:
        raise ValueError(
            f"need 0 <= p_exp <= p_best_known <= 1, got ({p_best_known}, {p_exp})"
        )
    if p_exp >= 1.0:
        raise ValueError("p_exp must be < 1 for the ratio to be defined")
    p_gap = p_best_known - p_exp
    return p_gap, p_gap / (1.0 - p_exp)
