"""Gaussian channels and state constructors.

Beamsplitter sign convention, fixed for the whole package:

    x'_i = sqrt(t) x_i + sqrt(1-t) x_j
    x'_j = sqrt(1-t) x_i - sqrt(t) x_j

(and identically for p), where t is the power transmittance toward the first
listed mode.  t=1 is treated as the exact identity: full transmission means
the second port never interacts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (CovMatrix, SymplecticTransform, apply_symplectic,
                   symplectic_form, tensor, validate_physical, williamson,
                   PHYSICALITY_TOL, _as_matrix)
from .errors import InvalidInputError, NonPhysicalStateError

DB_SQUEEZING_FACTOR = 10.0  # variance factor is 10**(dB/10)


def db_to_variance(db: float) -> float:
    """Variance factor for a squeezing level in dB (-3 dB -> 0.501)."""
    return float(10.0 ** (db / DB_SQUEEZING_FACTOR))


@dataclass(frozen=True)
class InputSpec:
    """Input mode of the splitting scheme: coherent or squeezed, then modulated.

    v_x and v_p are the gamma-unit variances *after* modulation; for squeezed
    kind the quantum part is the pure squeezed state diag(s, 1/s) with
    s = 10**(squeezing_db/10), the rest is classical noise.
    """

    kind: str
    squeezing_db: float
    v_x: float
    v_p: float

    def __post_init__(self):
        if self.kind not in ("coherent", "squeezed"):
            raise InvalidInputError(f"kind must be coherent|squeezed, got {self.kind!r}")
        if self.kind == "coherent" and self.squeezing_db != 0:
            raise InvalidInputError("coherent input must have squeezing_db = 0")
        if self.squeezing_db > 0:
            raise InvalidInputError("squeezing_db must be <= 0")
        sx, sp = self.quantum_variances()
        if self.v_x < sx - 1e-12:
            raise InvalidInputError(f"v_x={self.v_x} below squeezed x-variance {sx:.4g}")
        if self.v_p < sp - 1e-12:
            raise InvalidInputError(f"v_p={self.v_p} below anti-squeezed p-variance {sp:.4g}")

    def quantum_variances(self) -> tuple[float, float]:
        s = db_to_variance(self.squeezing_db)
        return s, 1.0 / s

    def modulation_variances(self) -> tuple[float, float]:
        """Classical (w_x, w_p) on top of the pure squeezed part."""
        sx, sp = self.quantum_variances()
        return max(self.v_x - sx, 0.0), max(self.v_p - sp, 0.0)


@dataclass(frozen=True)
class ChannelXY:
    """Single-mode Gaussian channel acting as gamma -> X gamma X^T + Y."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.X, dtype=float)
        y = np.asarray(self.Y, dtype=float)
        if x.shape != (2, 2) or y.shape != (2, 2):
            raise InvalidInputError("X and Y must be 2x2")
        if np.abs(y - y.T).max() > 1e-12:
            raise InvalidInputError("Y must be symmetric")
        for name, arr in (("X", x), ("Y", y)):
            arr = arr.copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    def cp_min_eig(self) -> float:
        """Min eig of Y + i Omega - i X Omega X^T; >= 0 means completely positive."""
        om = symplectic_form(1)
        h = self.Y + 1j * om - 1j * self.X @ om @ self.X.T
        return float(np.linalg.eigvalsh(h).min())

    def apply(self, cm, mode: int) -> CovMatrix:
        g = _as_matrix(cm).copy()
        n = g.shape[0] // 2
        if not 0 <= mode < n:
            raise InvalidInputError(f"mode {mode} out of range")
        x_full = np.eye(2 * n)
        x_full[2 * mode:2 * mode + 2, 2 * mode:2 * mode + 2] = self.X
        y_full = np.zeros((2 * n, 2 * n))
        y_full[2 * mode:2 * mode + 2, 2 * mode:2 * mode + 2] = self.Y
        return CovMatrix(x_full @ g @ x_full.T + y_full)


def loss_channel(t: float) -> ChannelXY:
    """Pure-loss channel with power transmittance t (vacuum environment)."""
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"transmittance must be in [0, 1], got {t}")
    return ChannelXY(X=np.sqrt(t) * np.eye(2), Y=(1.0 - t) * np.eye(2))


def beamsplitter(t: float, n_modes: int = 2, modes: tuple = (0, 1)) -> SymplecticTransform:
    """Beamsplitter with power transmittance t on the given mode pair."""
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError(f"transmittance must be in [0, 1], got {t}")
    i, j = modes
    if i == j or not (0 <= i < n_modes and 0 <= j < n_modes):
        raise InvalidInputError(f"bad mode pair {modes} for {n_modes} modes")
    s = np.eye(2 * n_modes)
    if t == 1.0:
        return SymplecticTransform(s)
    tt, rr = np.sqrt(t), np.sqrt(1.0 - t)
    for q in range(2):
        s[2 * i + q, 2 * i + q] = tt
        s[2 * i + q, 2 * j + q] = rr
        s[2 * j + q, 2 * i + q] = rr
        s[2 * j + q, 2 * j + q] = -tt
    return SymplecticTransform(s)


def squeezer(s: float, n_modes: int = 1, mode: int = 0) -> SymplecticTransform:
    """Local squeezer diag(sqrt(s), 1/sqrt(s)) on one mode."""
    if s <= 0:
        raise InvalidInputError("squeezing parameter must be positive")
    m = np.eye(2 * n_modes)
    m[2 * mode, 2 * mode] = np.sqrt(s)
    m[2 * mode + 1, 2 * mode + 1] = 1.0 / np.sqrt(s)
    return SymplecticTransform(m)


def rotation(theta: float, n_modes: int = 1, mode: int = 0) -> SymplecticTransform:
    """Local phase rotation on one mode."""
    c, sn = np.cos(theta), np.sin(theta)
    m = np.eye(2 * n_modes)
    m[2 * mode:2 * mode + 2, 2 * mode:2 * mode + 2] = [[c, -sn], [sn, c]]
    return SymplecticTransform(m)


def attenuate(cm, mode: int, t: float, keep_environment: bool = False) -> CovMatrix:
    """Attenuation with power transmittance t via a vacuum ancilla.

    With keep_environment the ancilla is appended as a new last mode and the
    beamsplitter applied (global purity preserved); without, the ancilla is
    traced out, equivalently gamma -> t gamma + (1-t) I on the mode.
    """
    g = _as_matrix(cm)
    n = g.shape[0] // 2
    if not 0 <= mode < n:
        raise InvalidInputError(f"mode {mode} out of range")
    if keep_environment:
        extended = tensor(g, np.eye(2))
        bs = beamsplitter(t, n + 1, (mode, n))
        return apply_symplectic(extended, bs)
    return loss_channel(t).apply(g, mode)


def modulate(cm, mode: int, w_x: float, w_p: float) -> CovMatrix:
    """Add classical Gaussian displacement noise diag(w_x, w_p) to one mode."""
    if w_x < 0 or w_p < 0:
        raise InvalidInputError("noise variances must be nonnegative")
    g = _as_matrix(cm).copy()
    g[2 * mode, 2 * mode] += w_x
    g[2 * mode + 1, 2 * mode + 1] += w_p
    return CovMatrix(g)


def cmr_noise(cm, a: float, t: float) -> CovMatrix:
    """Detector common-mode-rejection noise on a two-mode CM.

    Adds diag(a, a, t*a, t*a): constant on the first mode, scaled by the
    attenuation transmittance t on the second.
    """
    if a < 0:
        raise InvalidInputError("CMR variance must be nonnegative")
    if not 0.0 <= t <= 1.0:
        raise InvalidInputError("transmittance must be in [0, 1]")
    g = _as_matrix(cm)
    if g.shape != (4, 4):
        raise InvalidInputError("CMR model is defined for two-mode matrices")
    return CovMatrix(g + np.diag([a, a, t * a, t * a]))


def purify_single_mode(cm) -> CovMatrix:
    """Two-mode pure CM whose first-mode reduction equals the given single-mode CM.

    Williamson-decompose gamma_1 = S (nu I) S^T, purify the thermal core as a
    two-mode squeezed vacuum with m = nu, and apply S on the system mode.
    """
    g1 = _as_matrix(cm)
    if g1.shape != (2, 2):
        raise InvalidInputError("purify_single_mode takes a single-mode CM")
    if validate_physical(g1) < -PHYSICALITY_TOL:
        raise NonPhysicalStateError("cannot purify a nonphysical CM")
    s, nus = williamson(g1)
    return apply_symplectic(tmsv_cm(nus[0]), tensor_transform(s, 1))


def tmsv_cm(m: float) -> CovMatrix:
    """Two-mode squeezed vacuum with diagonal blocks m*I and cross sqrt(m^2-1)*sigma_z."""
    if m < 1.0 - 1e-12:
        raise InvalidInputError("TMSV parameter must be >= 1")
    c = np.sqrt(max(m * m - 1.0, 0.0))
    sz = np.diag([1.0, -1.0])
    g = np.block([[m * np.eye(2), c * sz], [c * sz, m * np.eye(2)]])
    return CovMatrix(g)


def tmsv_from_squeezing(r: float) -> CovMatrix:
    """TMSV parameterized by the squeezing parameter r (m = cosh 2r)."""
    return tmsv_cm(float(np.cosh(2 * r)))


def tensor_transform(s: SymplecticTransform, extra_modes: int) -> SymplecticTransform:
    """Extend a symplectic with the identity on extra trailing modes."""
    base = s.entries
    out = np.eye(base.shape[0] + 2 * extra_modes)
    out[:base.shape[0], :base.shape[0]] = base
    return SymplecticTransform(out)


__all__ = [
    "InputSpec", "ChannelXY", "db_to_variance", "loss_channel", "beamsplitter",
    "squeezer", "rotation", "attenuate", "modulate", "cmr_noise",
    "purify_single_mode", "tmsv_cm", "tmsv_from_squeezing", "tensor_transform",
]
