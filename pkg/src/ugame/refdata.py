"""Published reference settings and results for the guessing-game experiments.

Waveplate angles are in degrees.  ``P_MAX_D2`` is the analytic optimum per
coherence value, ``P_EXP_*`` are measured guessing probabilities with their
one-sigma uncertainties, both quoted to four decimals.  These numbers are
comparison targets, not model inputs, except for ``REGISTER_STATE_EXP`` (the
tomographically reconstructed register state) and ``PROBE_D3_BEST`` (the best
known d=3 probe amplitudes), which also seed the noise-model pipelines.
"""

from __future__ import annotations

import numpy as np

from .game import Measurement

# d=2 game: register coherence settings and results, one column per run.
GAMMAS_D2 = (0.9918, 0.9221, 0.8493, 0.7509, 0.6458, 0.5466,
             0.4396, 0.3369, 0.2138, 0.1662, 0.0686)
# Quartz-plate thicknesses that produced each coherence value, in units of the
# 808 nm wavelength.  Opaque hardware metadata; the mapping to gamma is not
# modelled here.
QP_THICKNESS_D2 = ("0", "58l", "97l", "125l", "154l", "183l",
                   "209l", "237l", "266l", "290l", "305l")
QWP_D2 = (-22.4, -21.3, -20.2, -18.5, -16.4, -14.3, -11.9, -9.3, -6.0, -4.7, -2.0)
HWP_D2 = (33.8, 34.3, 34.9, 35.8, 36.8, 37.8, 39.1, 40.3, 42.0, 42.6, 44.0)
P_MAX_D2 = (0.9980, 0.9809, 0.9639, 0.9421, 0.9209, 0.9029,
            0.8862, 0.8731, 0.8615, 0.8584, 0.8544)
P_EXP_D2 = (0.9953, 0.9776, 0.9550, 0.9301, 0.9079, 0.8891,
            0.8844, 0.8702, 0.8618, 0.8610, 0.8531)
P_EXP_D2_ERR = (0.0003, 0.0007, 0.001, 0.0012, 0.0015, 0.0016,
                0.0016, 0.0017, 0.0016, 0.0017, 0.0017)

# d=3 game strategies: probe-preparation angles (H1, H2), measurement angles
# (Q1, H12), predicted and measured guessing probabilities.
THETA1_D3 = (22.6, 24.6, 26.6, 28.6, 30.6, 26.6, 26.6, 26.6)
THETA2_D3 = (5.9, 5.9, 5.9, 5.9, 5.9, 1.9, 9.9, 17.9)
QWP_D3 = (55.0, 50.4, 45.0, -50.6, -56.0, -47.0, 46.2, 46.1)
HWP_D3 = (12.0, 9.0, 6.0, 36.3, 33.4, 38.0, 6.5, 6.5)
P_THEORY_D3 = (0.9669, 0.9731, 0.9753, 0.9731, 0.9664, 0.9701, 0.9702, 0.9326)
P_EXP_D3 = (0.9521, 0.9466, 0.9611, 0.9628, 0.9455, 0.9419, 0.9282, 0.9281)
P_EXP_D3_ERR = (0.0011, 0.0011, 0.001, 0.0009, 0.0011, 0.0012, 0.0012, 0.0013)

# Highest coherence reached in the experiment, and the headline d=3 numbers.
GAMMA_EXP = 0.9918
P_BEST_KNOWN_D3_GAMMA1 = 0.9793
P_EXP_D3_BEST = 0.9611

# Tomographically reconstructed register state at the highest coherence.
REGISTER_STATE_EXP = np.array([
    [0.5124, 0.4955 - 0.0157j],
    [0.4955 + 0.0157j, 0.4876],
])

# Best known d=3 probe amplitudes at the highest coherence (unnormalized as
# quoted; normalize before use).
PROBE_D3_BEST = np.array([0.0938 + 0.5786j, 0.0109 - 0.1218j, 0.8009])

# Optimal register measurement for the d=2 game at gamma = 0.9918.
MEAS_D2_M0 = np.array([[0.8550, 0.3521], [0.3521, 0.1450]], dtype=complex)
MEAS_D2_M1 = np.array([[0.1450, -0.3521], [-0.3521, 0.8550]], dtype=complex)

# Optimal two-bucket register measurement for the best known d=3 strategy.
MEAS_D3_M0 = np.array([[0.5003, 0.2027 + 0.4571j], [0.2027 - 0.4571j, 0.4997]])
MEAS_D3_M2 = np.array([[0.4997, -0.2027 - 0.4571j], [-0.2027 + 0.4571j, 0.5003]])

def _nearest_projector(m: np.ndarray) -> np.ndarray:
    """Rank-1 projector onto the dominant eigenvector of a near-projector matrix.

    The published matrices are rounded to four decimals, which leaves them
    very slightly non-positive; this restores an exact projector within
    ~1e-4 of the quoted entries.
    """
    h = (np.asarray(m, dtype=complex) + np.asarray(m, dtype=complex).conj().T) / 2
    _, v = np.linalg.eigh(h)
    top = v[:, -1]
    return np.outer(top, top.conj())


def measurement_d2_optimal() -> Measurement:
    """The optimal d=2 register measurement at gamma = 0.9918, as an exact POVM."""
    p = _nearest_projector(MEAS_D2_M0)
    return Measurement(elements=(p, np.eye(2, dtype=complex) - p), kind="projective")


def measurement_d3_best() -> Measurement:
    """The best known d=3 register measurement {M0, 0, M2}, as an exact POVM."""
    p = _nearest_projector(MEAS_D3_M0)
    return Measurement(
        elements=(p, np.zeros((2, 2), dtype=complex), np.eye(2, dtype=complex) - p),
        kind="projective",
    )


# Predicted d=2 output-port probabilities (P00, P01, P10, P11) at v = 0.99.
PORT_PROBS_D2_PREDICTED = (0.5064, 0.0024, 0.0023, 0.4889)
P_GUESS_D2_PREDICTED = 0.9953

# Predicted guessing probability of the d=3 noise model at v = 0.98.
P_GUESS_D3_PREDICTED = 0.9554

# Fourier-gate quality test: P[i, j] = probability of detecting output mode i
# for probe state j.  Model prediction at v = 0.98, then measured values.
FOURIER_TEST_PREDICTED = np.array([
    [0.9742, 0.0170, 0.0089],
    [0.0170, 0.9742, 0.0089],
    [0.0089, 0.0089, 0.9823],
])
FOURIER_TEST_MEASURED = np.array([
    [0.9722, 0.0176, 0.0103],
    [0.0183, 0.9742, 0.0075],
    [0.0095, 0.0055, 0.9851],
])
FOURIER_TEST_MEAN_DIAGONAL_MEASURED = 0.9771
