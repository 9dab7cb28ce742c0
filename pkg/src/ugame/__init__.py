"""Simulator and optimizer for two-observable quantum guessing games.

The package models a game in which one party prepares a d-dimensional probe,
the other measures it in the standard or the Fourier basis as dictated by a
2-dimensional register of tunable coherence, and the preparer then guesses
the outcome from the register state.  It computes optimal guessing
probabilities, compiles the Fourier gate into a beam-splitter mesh with
waveplate settings, and predicts detection statistics under interferometric
noise.
"""

from .game import (
    GameConfig,
    Measurement,
    PostMeasurementEnsemble,
    entropic_sum,
    fourier_matrix,
    gap_ratio,
    guessing_probability,
    maassen_uffink_bound,
    pguess_max_d2,
    post_measurement_ensemble,
    register_state,
)
from .discrimination import (
    DiscriminationProblem,
    best_projective_two_bucket,
    brute_force_projective,
    helstrom,
)
from .linalg import (
    fidelity,
    hermitian_eigensystem,
    shannon_entropy,
    validate_density,
)
from .mesh import (
    BeamSplitterOp,
    MeshPlan,
    WaveplateSetting,
    clements_decompose,
    fourier_probe_state,
    hwp_angle_for,
    mesh_reconstruct,
    prep_state_d2,
    prep_state_d3,
    waveplates_to_measurement,
)
from .noise import (
    KrausChannel,
    NoiseModel,
    apply_channel,
    controlled_visibility_channel,
    layer_dephasing,
    visibility_channel,
)
from .optimize import (
    OptimizationResult,
    best_known_probe_d3,
    evaluate_strategy,
    optimal_probe_d2,
    optimize_d2,
    optimize_numeric,
)
from .pipeline import (
    DetectionTable,
    PauliExpectations,
    estimate_gamma,
    reconstruct_from_pauli,
    simulate_d2,
    simulate_d3,
    simulate_fourier_test,
    sweep_curve_d2,
)

__version__ = "0.1.0"
