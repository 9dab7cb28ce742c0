"""Kraus-operator noise channels for the interferometric implementation.

Imperfect interference of a mode pair is modelled as leakage into an
inaccessible fictitious mode, which reduces to three Kraus operators that
rescale the pair's mutual coherence by the visibility v and coherences with
spectator modes by sqrt(v).  The register-controlled variant applies that
channel only on the lower (Fourier) layer.  A separate two-layer dephasing
rescales the register's off-diagonals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import STRUCT_TOL, as_complex_matrix, validate_density

SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Keys naming the three crossings of the d=3 mesh in application order:
# first (0,1) interferometer, the (1,2) interferometer, second (0,1).
INTERFEROMETER_KEYS = ("C01a", "T12", "C01b")


@dataclass(frozen=True)
class KrausChannel:
    """Trace-preserving channel given by operators {K_i}: rho -> sum K_i rho K_i^dag."""

    dim: int
    operators: tuple

    def __post_init__(self):
        ops = tuple(as_complex_matrix(k) for k in self.operators)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for k in ops:
            if k.shape != (self.dim, self.dim):
                raise ValueError(f"operator shape {k.shape} does not match dim {self.dim}")
            total += k.conj().T @ k
        if np.abs(total - np.eye(self.dim)).max() > STRUCT_TOL:
            raise ValueError("Kraus operators are not trace preserving")
        object.__setattr__(self, "operators", ops)


@dataclass(frozen=True)
class NoiseModel:
    """Noise parameters of one experimental run.

    ``visibility_v`` is the common interferometer visibility, overridable per
    crossing through ``per_interferometer`` (keys ``C01a``/``T12``/``C01b``);
    ``layer_visibility`` is the dephasing between the two register layers and
    defaults to ``visibility_v`` (the two share one measured value unless
    overridden); ``register_state`` is the actually prepared register state.
    """

    visibility_v: float = 1.0
    layer_visibility: float = field(default=None)
    register_state: np.ndarray = field(default=None)
    per_interferometer: dict = field(default=None)

    def __post_init__(self):
        if self.layer_visibility is None:
            object.__setattr__(self, "layer_visibility", self.visibility_v)
        for name, value in (("visibility_v", self.visibility_v),
                            ("layer_visibility", self.layer_visibility)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        reg = np.eye(2, dtype=complex) / 2 if self.register_state is None \
            else validate_density(self.register_state)
        if reg.shape != (2, 2):
            raise ValueError(f"register state must be 2x2, got {reg.shape}")
        object.__setattr__(self, "register_state", reg)
        overrides = dict(self.per_interferometer or {})
        for key, value in overrides.items():
            if key not in INTERFEROMETER_KEYS:
                raise ValueError(f"unknown interferometer key {key!r}")
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"visibility for {key} must lie in [0, 1], got {value}")
        object.__setattr__(self, "per_interferometer", overrides)

    def crossing_visibility(self, key: str) -> float:
        return self.per_interferometer.get(key, self.visibility_v)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "NoiseModel":
        """Schema: {"v":…, "layer_v":…, "per_interferometer":{…}?, "rho_R_exp":[[[re,im],…]…]?}."""
        register = None
        if doc.get("rho_R_exp") is not None:
            register = np.array([[complex(re, im) for re, im in row]
                                 for row in doc["rho_R_exp"]])
        return cls(
            visibility_v=doc.get("v", 1.0),
            layer_visibility=doc.get("layer_v", doc.get("v", 1.0)),
            register_state=register,
            per_interferometer=doc.get("per_interferometer"),
        )


def layer_dephasing(rho, v: float) -> np.ndarray:
    """Two-layer dephasing rho -> (1+v)/2 rho + (1-v)/2 Z rho Z on a 2x2 state."""
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {v}")
    arr = as_complex_matrix(rho)
    if arr.shape != (2, 2):
        raise ValueError(f"layer dephasing acts on 2x2 states, got {arr.shape}")
    return 0.5 * (1.0 + v) * arr + 0.5 * (1.0 - v) * (SIGMA_Z @ arr @ SIGMA_Z)


def _check_pair(m: int, n: int, d: int) -> None:
    if not 0 <= m < n < d:
        raise ValueError(f"need 0 <= m < n < d, got (m, n, d) = ({m}, {n}, {d})")


def coherent_visibility_factor(m: int, n: int, v: float, d: int) -> np.ndarray:
    """The no-leakage Kraus operator: sqrt(v) on modes m and n, 1 elsewhere."""
    _check_pair(m, n, d)
    k0 = np.eye(d, dtype=complex)
    k0[m, m] = k0[n, n] = np.sqrt(v)
    return k0


def visibility_channel(m: int, n: int, v: float, d: int) -> KrausChannel:
    """Imperfect-interference channel for the (m, n) crossing at visibility v.

    Kraus operators {sqrt(v)(|m><m| + |n><n|) + sum_{k not in {m,n}} |k><k|,
    sqrt(1-v)|m><m|, sqrt(1-v)|n><n|}: the (m, n) coherence is rescaled by v,
    coherences with spectator modes by sqrt(v).
    """
    _check_pair(m, n, d)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"visibility must lie in [0, 1], got {v}")
    k0 = coherent_visibility_factor(m, n, v, d)
    k1 = np.zeros((d, d), dtype=complex)
    k1[m, m] = np.sqrt(1.0 - v)
    k2 = np.zeros((d, d), dtype=complex)
    k2[n, n] = np.sqrt(1.0 - v)
    return KrausChannel(dim=d, operators=(k0, k1, k2))


def controlled_visibility_channel(m: int, n: int, v: float, d: int) -> KrausChannel:
    """Visibility channel applied only when the register is in |1>, on the joint space.

    Operates on the 2d-dimensional register-probe space with the register
    index slow, so the operators are block diagonal: N_0 = |0><0| (x) I +
    |1><1| (x) K_0, N_i = |1><1| (x) K_i for i > 0.
    """
    base = visibility_channel(m, n, v, d)
    upper = np.zeros((2, 2), dtype=complex)
    upper[0, 0] = 1.0
    lower = np.zeros((2, 2), dtype=complex)
    lower[1, 1] = 1.0
    n0 = np.kron(upper, np.eye(d, dtype=complex)) + np.kron(lower, base.operators[0])
    rest = tuple(np.kron(lower, k) for k in base.operators[1:])
    return KrausChannel(dim=2 * d, operators=(n0,) + rest)


def apply_channel(rho, ch: KrausChannel) -> np.ndarray:
    """Apply rho -> sum K_i rho K_i^dag; trace is preserved and positivity kept."""
    arr = as_complex_matrix(rho)
    if arr.shape != (ch.dim, ch.dim):
        raise ValueError(f"state shape {arr.shape} does not match channel dim {ch.dim}")
    out = np.zeros_like(arr)
    for k in ch.operators:
        out += k @ arr @ k.conj().T
    return out
