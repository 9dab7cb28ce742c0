"""Beam-splitter mesh compilation of unitaries and waveplate-level settings.

A d-mode unitary is decomposed into d(d-1)/2 variable beam splitters on
adjacent mode pairs plus output phases.  Each beam splitter acts on modes
(m, n) as

    [[e^{i phi} cos(theta), -sin(theta)],
     [e^{i phi} sin(theta),  cos(theta)]]

with theta in [0, pi/2] and phi in [0, 2 pi); signs are absorbed into phi and
all residual phases are pushed into the output diagonal.  Layers are stored
in application order (first element hits the input first): the right-nulled
"T" layers come first, then the folded left layers tagged "A", then the
diagonal.  In hardware one such beam splitter is two horizontal beam
displacers around a half-wave plate rotated to (45 - theta * 90 / pi)
degrees, with phi trimmed on the first displacer.

Angles are degrees at every function boundary that models a physical
waveplate, radians inside the mesh math.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .game import Measurement, fourier_matrix
from .linalg import MAX_DIM, STRUCT_TOL, as_complex_matrix

# Calibrated path phases of the three-mode preparation stage (radians).
PREP_D3_PHASE_0 = 1.41
PREP_D3_PHASE_1 = 1.66

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class BeamSplitterOp:
    """One variable beam splitter on adjacent modes (m, n) = (m, m+1)."""

    mode_m: int
    mode_n: int
    theta: float
    phi: float
    orientation: str = "T"

    def __post_init__(self):
        if self.mode_n != self.mode_m + 1 or self.mode_m < 0:
            raise ValueError(
                f"beam splitter must act on adjacent modes, got ({self.mode_m}, {self.mode_n})"
            )
        if not -1e-12 <= self.theta <= np.pi / 2 + 1e-12:
            raise ValueError(f"theta {self.theta} outside [0, pi/2]")
        if not -1e-12 <= self.phi < _TWO_PI + 1e-12:
            raise ValueError(f"phi {self.phi} outside [0, 2 pi)")
        if self.orientation not in ("T", "A"):
            raise ValueError(f"orientation must be 'T' or 'A', got {self.orientation!r}")

    def matrix(self, dim: int) -> np.ndarray:
        """Embedding into dim modes: identity outside the (m, n) block."""
        if self.mode_n >= dim:
            raise ValueError(f"mode {self.mode_n} out of range for dimension {dim}")
        out = np.eye(dim, dtype=complex)
        c, s = np.cos(self.theta), np.sin(self.theta)
        e = np.exp(1j * self.phi)
        out[self.mode_m, self.mode_m] = e * c
        out[self.mode_m, self.mode_n] = -s
        out[self.mode_n, self.mode_m] = e * s
        out[self.mode_n, self.mode_n] = c
        return out


@dataclass(frozen=True)
class MeshPlan:
    """Compiled mesh: beam-splitter layers in application order plus output phases."""

    dim: int
    layers: tuple
    output_phases: np.ndarray

    def __post_init__(self):
        phases = np.asarray(self.output_phases, dtype=float)
        if phases.shape != (self.dim,):
            raise ValueError(
                f"expected {self.dim} output phases, got shape {phases.shape}"
            )
        object.__setattr__(self, "layers", tuple(self.layers))
        object.__setattr__(self, "output_phases", phases)

    def waveplate_settings(self) -> list["WaveplateSetting"]:
        """Half-wave plate angle realizing each layer's mixing angle, in layer order."""
        return [
            WaveplateSetting(label=f"H{k + 1}", angle_deg=hwp_angle_for(layer.theta))
            for k, layer in enumerate(self.layers)
        ]

    def to_json(self) -> str:
        """Serialize to the interchange schema (angles at 12 significant digits)."""
        def sig(x: float) -> float:
            return float(f"{x:.12g}")

        doc = {
            "d": self.dim,
            "layers": [
                {
                    "m": layer.mode_m,
                    "n": layer.mode_n,
                    "theta_rad": sig(layer.theta),
                    "phi_rad": sig(layer.phi),
                    "orientation": layer.orientation,
                }
                for layer in self.layers
            ],
            "output_phases_rad": [sig(p) for p in self.output_phases],
            "waveplates": [
                {"label": wp.label, "deg": sig(wp.angle_deg)}
                for wp in self.waveplate_settings()
            ],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "MeshPlan":
        doc = json.loads(text)
        layers = tuple(
            BeamSplitterOp(
                mode_m=entry["m"],
                mode_n=entry["n"],
                theta=entry["theta_rad"],
                phi=entry["phi_rad"],
                orientation=entry.get("orientation", "T"),
            )
            for entry in doc["layers"]
        )
        return cls(dim=doc["d"], layers=layers, output_phases=doc["output_phases_rad"])


@dataclass(frozen=True)
class WaveplateSetting:
    """A labelled waveplate rotation in degrees, within (-90, 90]."""

    label: str
    angle_deg: float

    def __post_init__(self):
        if not -90.0 < self.angle_deg <= 90.0:
            raise ValueError(f"waveplate angle {self.angle_deg} outside (-90, 90]")


def _wrap_phase(phi: float) -> float:
    """Reduce to [0, 2 pi), snapping values within float dust of 2 pi to 0."""
    out = phi % _TWO_PI
    if _TWO_PI - out < 1e-12:
        out = 0.0
    return out


def clements_decompose(u, tol: float = STRUCT_TOL) -> MeshPlan:
    """Compile a unitary into a rectangular mesh of variable beam splitters.

    Elements below the diagonal are nulled alternately by right-multiplied
    inverse layers (kept as "T" layers) and left-multiplied layers (folded
    through the residual diagonal into "A" layers), leaving the output
    phases on a single diagonal at the end.  The plan reconstructs the input
    within 1e-9 and always contains d(d-1)/2 layers.
    """
    mat = as_complex_matrix(u)
    d = mat.shape[0]
    if mat.shape[0] != mat.shape[1]:
        raise ValueError(f"matrix is not square: {mat.shape}")
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} exceeds supported cap {MAX_DIM}")
    if np.abs(mat.conj().T @ mat - np.eye(d)).max() > tol:
        raise ValueError("matrix is not unitary within tolerance")

    v = mat.copy()
    right: list[tuple[int, float, float]] = []  # (m, theta, phi), applied as V T^{-1}
    left: list[tuple[int, float, float]] = []   # applied as T V

    def null_angles(num: complex, den: complex) -> tuple[float, float]:
        if abs(num) <= tol:
            return 0.0, 0.0
        if abs(den) <= tol:
            return np.pi / 2.0, 0.0
        return float(np.arctan2(abs(num), abs(den))), float(np.angle(num) - np.angle(den))

    for i in range(1, d):
        if i % 2 == 1:
            for j in range(i):
                row, m = d - 1 - j, i - 1 - j
                theta, phi = null_angles(v[row, m], v[row, m + 1])
                v = v @ BeamSplitterOp(m, m + 1, theta, _wrap_phase(phi)).matrix(d).conj().T
                right.append((m, theta, _wrap_phase(phi)))
        else:
            for j in range(1, i + 1):
                row, col = d + j - i - 1, j - 1
                theta, phi = null_angles(-v[row, col], v[row - 1, col])
                v = BeamSplitterOp(row - 1, row, theta, _wrap_phase(phi)).matrix(d) @ v
                left.append((row - 1, theta, _wrap_phase(phi)))

    delta = np.angle(np.diag(v))

    # Fold each left layer through the diagonal: T^{-1}(m, theta, phi) D equals
    # D' A(m, theta, phi') with phi' = delta_m - delta_n + pi and the m-th
    # output phase replaced by delta_n - phi + pi.
    a_layers: list[BeamSplitterOp] = []
    for m, theta, phi in reversed(left):
        phi_new = _wrap_phase(delta[m] - delta[m + 1] + np.pi)
        delta[m] = delta[m + 1] - phi + np.pi
        a_layers.append(BeamSplitterOp(m, m + 1, theta, phi_new, orientation="A"))

    layers = tuple(
        BeamSplitterOp(m, m + 1, theta, phi, orientation="T") for m, theta, phi in right
    ) + tuple(a_layers)
    phases = np.array([_wrap_phase(p) for p in delta])
    return MeshPlan(dim=d, layers=layers, output_phases=phases)


def mesh_reconstruct(plan: MeshPlan) -> np.ndarray:
    """Multiply out a plan: layers in application order, then the output diagonal."""
    u = np.eye(plan.dim, dtype=complex)
    for layer in plan.layers:
        u = layer.matrix(plan.dim) @ u
    return np.diag(np.exp(1j * plan.output_phases)) @ u


def hwp_angle_for(theta: float) -> float:
    """Half-wave plate rotation in degrees realizing mixing angle theta (radians)."""
    if not -1e-12 <= theta <= np.pi / 2 + 1e-12:
        raise ValueError(f"theta {theta} outside [0, pi/2]")
    return 45.0 - np.degrees(theta) / 2.0


def prep_state_d2(theta1: float) -> np.ndarray:
    """Two-mode probe prepared by the first half-wave plate at theta1 degrees.

    Amplitudes (cos 2 theta1, -sin 2 theta1); 11.3 degrees gives the probe
    optimal for every register coherence.
    """
    if not -90.0 < theta1 <= 90.0:
        raise ValueError(f"theta1 {theta1} outside (-90, 90]")
    t = np.radians(theta1)
    return np.array([np.cos(2 * t), -np.sin(2 * t)], dtype=complex)


def prep_state_d3(
    theta1: float,
    theta2: float,
    phase0: float = PREP_D3_PHASE_0,
    phase1: float = PREP_D3_PHASE_1,
) -> np.ndarray:
    """Three-mode probe prepared by half-wave plates at theta1, theta2 degrees.

    Amplitudes (e^{i phase0} cos 2t1 cos 2t2, -e^{i phase1} cos 2t1 sin 2t2,
    sin 2t1); the fixed phases are displacer calibration constants.
    """
    for name, angle in (("theta1", theta1), ("theta2", theta2)):
        if not -90.0 < angle <= 90.0:
            raise ValueError(f"{name} {angle} outside (-90, 90]")
    t1, t2 = np.radians(theta1), np.radians(theta2)
    return np.array([
        np.exp(1j * phase0) * np.cos(2 * t1) * np.cos(2 * t2),
        -np.exp(1j * phase1) * np.cos(2 * t1) * np.sin(2 * t2),
        np.sin(2 * t1),
    ])


def waveplates_to_measurement(theta_q: float, theta_h: float) -> Measurement:
    """Projective register measurement set by the analysis quarter- and half-wave plates.

    With alpha the quarter-wave plate angle and beta = alpha - 2 theta_h
    (degrees), the projector kets are

        |M0> = (sin a cos b + i cos a sin b)|0> + (cos a cos b - i sin a sin b)|1>
        |M1> = (i cos a cos b - sin a sin b)|0> - (cos a sin b + i sin a cos b)|1>
    """
    alpha = np.radians(theta_q)
    beta = np.radians(theta_q - 2.0 * theta_h)
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    ket0 = np.array([sa * cb + 1j * ca * sb, ca * cb - 1j * sa * sb])
    ket1 = np.array([1j * ca * cb - sa * sb, -(ca * sb + 1j * sa * cb)])
    return Measurement(
        elements=(np.outer(ket0, ket0.conj()), np.outer(ket1, ket1.conj())),
        kind="projective",
    )


def fourier_probe_state(j: int, d: int) -> np.ndarray:
    """Fourier-basis probe with amplitudes w^{-jk} / sqrt(d); the mesh maps it to mode j."""
    if not 0 <= j < d:
        raise ValueError(f"probe index {j} out of range for dimension {d}")
    w = np.exp(2j * np.pi / d)
    return w ** (-j * np.arange(d)) / np.sqrt(d)


def fourier_mesh_plan(d: int = 3) -> MeshPlan:
    """Compiled mesh of the d-mode Fourier transformation."""
    return clements_decompose(fourier_matrix(d))
