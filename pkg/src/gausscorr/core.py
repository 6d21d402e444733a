"""Multimode covariance matrices and symplectic linear algebra.

Conventions, fixed once for the whole package:

* quadrature ordering is (x1, p1, x2, p2, ...);
* covariance matrices are kept in gamma-units where the vacuum mode is the
  2x2 identity, i.e. gamma_ij = <xi_i xi_j + xi_j xi_i> - 2<xi_i><xi_j>.
  Raw quadrature covariances are gamma/2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur, sqrtm

from .errors import InvalidInputError, NonPhysicalStateError

SYMMETRY_RTOL = 1e-12
PHYSICALITY_TOL = 1e-9
SPECTRUM_CLAMP_TOL = 1e-6


def _as_matrix(cm):
    return cm.entries if isinstance(cm, CovMatrix) else np.asarray(cm, dtype=float)


@dataclass(frozen=True)
class CovMatrix:
    """Real symmetric 2n x 2n covariance matrix in gamma-units.

    Symmetry is validated to relative tolerance 1e-12 and the stored array is
    exactly symmetrized and made read-only.  Physicality is *not* enforced
    here (measured matrices may violate it slightly); use
    :func:`validate_physical`.
    """

    entries: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.entries, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] % 2 or g.shape[0] == 0:
            raise InvalidInputError(f"covariance matrix must be 2n x 2n, got {g.shape}")
        scale = max(1.0, np.abs(g).max())
        if np.abs(g - g.T).max() > SYMMETRY_RTOL * scale:
            raise InvalidInputError("covariance matrix is not symmetric within 1e-12")
        if np.any(np.diag(g) <= 0):
            raise InvalidInputError("covariance matrix has non-positive diagonal entries")
        g = (g + g.T) / 2
        g.flags.writeable = False
        object.__setattr__(self, "entries", g)

    @property
    def n_modes(self) -> int:
        return self.entries.shape[0] // 2

    def block(self, i: int, j: int) -> np.ndarray:
        """2x2 block coupling modes i and j."""
        return self.entries[2 * i:2 * i + 2, 2 * j:2 * j + 2].copy()

    @staticmethod
    def vacuum(n_modes: int) -> "CovMatrix":
        return CovMatrix(np.eye(2 * n_modes))


@dataclass(frozen=True)
class SymplecticForm:
    """Block-diagonal form Omega = direct sum of [[0, 1], [-1, 0]]."""

    n_modes: int
    entries: np.ndarray = field(init=False)

    def __post_init__(self):
        if self.n_modes < 1:
            raise InvalidInputError("n_modes must be positive")
        w = np.array([[0.0, 1.0], [-1.0, 0.0]])
        out = np.kron(np.eye(self.n_modes), w)
        out.flags.writeable = False
        object.__setattr__(self, "entries", out)


def symplectic_form(n_modes: int) -> np.ndarray:
    return SymplecticForm(n_modes).entries


@dataclass(frozen=True)
class SymplecticTransform:
    """Real 2n x 2n matrix S with S Omega S^T = Omega (checked to 1e-10)."""

    entries: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.entries, dtype=float)
        if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
            raise InvalidInputError(f"symplectic matrix must be 2n x 2n, got {s.shape}")
        om = symplectic_form(s.shape[0] // 2)
        if np.abs(s @ om @ s.T - om).max() > 1e-10:
            raise InvalidInputError("matrix is not symplectic within 1e-10")
        s = s.copy()
        s.flags.writeable = False
        object.__setattr__(self, "entries", s)

    @property
    def n_modes(self) -> int:
        return self.entries.shape[0] // 2


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Symplectic eigenvalues, sorted ascending, clamped up to 1 at rounding level."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class StandardForm:
    """Two-mode standard form diag(a, a, b, b) with off-diagonal (c_plus, c_minus).

    ``local_ops`` holds the pair (S_A, S_B) of single-mode symplectics such
    that (S_A + S_B applied locally) gamma (.)^T reproduces the standard form.
    Canonical ordering: c_plus >= |c_minus|.
    """

    a: float
    b: float
    c_plus: float
    c_minus: float
    local_ops: tuple

    def matrix(self) -> np.ndarray:
        g = np.diag([self.a, self.a, self.b, self.b])
        g[0, 2] = g[2, 0] = self.c_plus
        g[1, 3] = g[3, 1] = self.c_minus
        return g


def validate_physical(cm) -> float:
    """Minimum eigenvalue of the Hermitian matrix gamma + i Omega.

    The caller treats values >= -1e-9 as physical.  Raises for non-symmetric
    input (via CovMatrix construction).
    """
    g = CovMatrix(_as_matrix(cm)).entries
    om = symplectic_form(g.shape[0] // 2)
    return float(np.linalg.eigvalsh(g + 1j * om).min())


def symplectic_spectrum(cm, clamp_tol: float = SPECTRUM_CLAMP_TOL) -> SymplecticSpectrum:
    """Symplectic eigenvalues as |eig(i Omega gamma)|, paired and sorted.

    Values in [1 - clamp_tol, 1) are clamped to 1 (pure states sit exactly on
    the boundary); anything lower raises NonPhysicalStateError.
    """
    g = _as_matrix(cm)
    n = g.shape[0] // 2
    ev = np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ g))
    ev.sort()
    values = 0.5 * (ev[0::2] + ev[1::2])  # average degenerate pairs
    if values.min() < 1.0 - clamp_tol:
        raise NonPhysicalStateError(
            f"minimum symplectic value {values.min():.6g} < 1 - {clamp_tol:g}")
    return SymplecticSpectrum(np.maximum(values, 1.0))


def two_mode_symplectic_values(cm) -> tuple[float, float]:
    """Closed-form (nu_minus, nu_plus) for a two-mode CM, no clamping."""
    g = _as_matrix(cm)
    if g.shape != (4, 4):
        raise InvalidInputError("two-mode closed form needs a 4x4 matrix")
    delta = seralian(g)
    det_g = np.linalg.det(g)
    root = np.sqrt(max(delta * delta - 4 * det_g, 0.0))
    nu_minus = np.sqrt(max((delta - root) / 2, 0.0))
    nu_plus = np.sqrt((delta + root) / 2)
    return float(nu_minus), float(nu_plus)


def seralian(cm) -> float:
    """Sum of the determinants of the four 2x2 subblocks of a two-mode CM."""
    g = _as_matrix(cm)
    if g.shape != (4, 4):
        raise InvalidInputError("seralian is defined for two-mode matrices only")
    return float(np.linalg.det(g[:2, :2]) + np.linalg.det(g[2:, 2:])
                 + 2 * np.linalg.det(g[:2, 2:]))


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _proper_svd(m: np.ndarray):
    """m = u diag(d) vt with u, vt proper rotations; d[1] may be negative."""
    u, sv, vt = np.linalg.svd(m)
    d = sv.copy()
    if np.linalg.det(u) < 0:
        u = u @ np.diag([1.0, -1.0])
        d[1] = -d[1]
    if np.linalg.det(vt) < 0:
        vt = np.diag([1.0, -1.0]) @ vt
        d[1] = -d[1]
    return u, d, vt


def standard_form(cm) -> StandardForm:
    """Reduce a physical two-mode CM to standard form by local symplectics.

    Each local block is Williamson-diagonalized to a multiple of the
    identity, the cross block is then diagonalized with local rotations, and
    the signs/order are fixed to the canonical convention c_plus >= |c_minus|.
    """
    g = _as_matrix(cm)
    if g.shape != (4, 4):
        raise InvalidInputError("standard form is defined for two-mode matrices")
    if validate_physical(g) < -PHYSICALITY_TOL:
        raise NonPhysicalStateError("standard form requires a physical CM")

    alpha, beta, delta = g[:2, :2], g[2:, 2:], g[:2, 2:]
    a = float(np.sqrt(np.linalg.det(alpha)))
    b = float(np.sqrt(np.linalg.det(beta)))
    # symmetric det-1 congruence bringing each block to a multiple of identity
    sa = np.linalg.inv(sqrtm(alpha / a).real)
    sb = np.linalg.inv(sqrtm(beta / b).real)

    u, d, vt = _proper_svd(sa @ delta @ sb.T)
    ra, rb = u.T, vt  # rotations with ra (sa delta sb^T) rb^T = diag(d)
    c1, c2 = float(d[0]), float(d[1])
    if abs(c2) > abs(c1):
        quarter = _rotation(np.pi / 2)
        ra, rb = quarter @ ra, quarter @ rb
        c1, c2 = c2, c1
    if c1 < 0:
        ra = -ra  # pi rotation on mode A flips both cross entries
        c1, c2 = -c1, -c2

    s_a = SymplecticTransform(ra @ sa)
    s_b = SymplecticTransform(rb @ sb)
    return StandardForm(a=a, b=b, c_plus=c1, c_minus=c2, local_ops=(s_a, s_b))


def partial_transpose(cm, mode: int) -> CovMatrix:
    """Sign-flip the p-quadrature of one mode: L gamma L^T, L = diag(..,-1,..)."""
    g = _as_matrix(cm)
    n = g.shape[0] // 2
    if not 0 <= mode < n:
        raise InvalidInputError(f"mode index {mode} out of range for {n} modes")
    signs = np.ones(2 * n)
    signs[2 * mode + 1] = -1.0
    return CovMatrix(g * np.outer(signs, signs))


def ppt_min_eig(cm) -> float:
    """Simon separability witness: min eig of (gamma^(T_A) + i Omega).

    Nonnegative values certify separability for two-mode (1x1) Gaussian
    states; negative values certify entanglement.
    """
    g = _as_matrix(cm)
    if g.shape != (4, 4):
        raise InvalidInputError("ppt_min_eig is defined for two-mode matrices")
    return validate_physical(partial_transpose(g, 0))


def reduce(cm, modes) -> CovMatrix:
    """Reduced CM of the listed modes (in the listed order)."""
    g = _as_matrix(cm)
    n = g.shape[0] // 2
    modes = list(modes)
    if not modes or any(not 0 <= m < n for m in modes) or len(set(modes)) != len(modes):
        raise InvalidInputError(f"invalid mode selection {modes} for {n} modes")
    idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes]).astype(int)
    return CovMatrix(g[np.ix_(idx, idx)])


def apply_symplectic(cm, s) -> CovMatrix:
    """Congruence S gamma S^T; rejects non-symplectic S beyond 1e-8."""
    g = _as_matrix(cm)
    sm = s.entries if isinstance(s, SymplecticTransform) else np.asarray(s, dtype=float)
    if sm.shape != g.shape:
        raise InvalidInputError(f"shape mismatch: S {sm.shape} vs gamma {g.shape}")
    om = symplectic_form(g.shape[0] // 2)
    if np.abs(sm @ om @ sm.T - om).max() > 1e-8:
        raise InvalidInputError("transform is not symplectic within 1e-8")
    return CovMatrix(sm @ g @ sm.T)


def tensor(cm1, cm2) -> CovMatrix:
    """Direct sum of two CMs (modes of cm2 appended after cm1)."""
    g1, g2 = _as_matrix(cm1), _as_matrix(cm2)
    out = np.zeros((g1.shape[0] + g2.shape[0],) * 2)
    out[:g1.shape[0], :g1.shape[0]] = g1
    out[g1.shape[0]:, g1.shape[0]:] = g2
    return CovMatrix(out)


def williamson(cm):
    """Williamson decomposition gamma = S diag(nu_1, nu_1, ...) S^T.

    Returns (S, nus) with S symplectic and nus the symplectic eigenvalues in
    the order matching the diagonal.  Standard construction through the real
    Schur form of gamma^(1/2) Omega gamma^(1/2).
    """
    g = _as_matrix(cm)
    n = g.shape[0] // 2
    root = sqrtm(g).real
    t, z = schur(root @ symplectic_form(n) @ root)
    nus = np.empty(n)
    for i in range(n):
        b = t[2 * i, 2 * i + 1]
        if b < 0:
            z[:, [2 * i, 2 * i + 1]] = z[:, [2 * i + 1, 2 * i]]
            b = -b
        nus[i] = b
    scale = np.repeat(np.sqrt(nus), 2)
    s = root @ z / scale
    return SymplecticTransform(s), nus


# ---------------------------------------------------------------------------
# random physical states (seeded; used by property tests and the oracle suite)

def random_symplectic(rng, n_modes: int, squeeze_scale: float = 0.6) -> SymplecticTransform:
    """Random symplectic built from rotations, local squeezers and beamsplitters."""
    from .channels import beamsplitter, squeezer  # local import avoids a cycle

    s = np.eye(2 * n_modes)
    for i in range(n_modes):
        sq = np.exp(rng.uniform(-squeeze_scale, squeeze_scale))
        loc = (_rotation(rng.uniform(0, 2 * np.pi))
               @ np.diag([sq, 1.0 / sq])
               @ _rotation(rng.uniform(0, 2 * np.pi)))
        full = np.eye(2 * n_modes)
        full[2 * i:2 * i + 2, 2 * i:2 * i + 2] = loc
        s = full @ s
    for i in range(n_modes):
        for j in range(i + 1, n_modes):
            s = beamsplitter(rng.uniform(0.05, 0.95), n_modes, (i, j)).entries @ s
    for i in range(n_modes):
        sq = squeezer(np.exp(rng.uniform(-squeeze_scale, squeeze_scale)), n_modes, i)
        s = sq.entries @ s
    return SymplecticTransform(s)


def random_physical_cm(rng, n_modes: int = 2, max_thermal: float = 2.5,
                       squeeze_scale: float = 0.6) -> CovMatrix:
    """Random physical CM: S diag(nu_i I) S^T with nu_i >= 1."""
    nus = rng.uniform(1.0, max_thermal, n_modes)
    core = np.diag(np.repeat(nus, 2))
    return apply_symplectic(core, random_symplectic(rng, n_modes, squeeze_scale))


# ---------------------------------------------------------------------------
# file format: JSON object {"n_modes": int, "gamma": [[...]]}

def cm_to_dict(cm) -> dict:
    g = CovMatrix(_as_matrix(cm))
    return {"n_modes": g.n_modes, "gamma": g.entries.tolist()}


def cm_from_dict(obj: dict, allow_nonphysical: bool = False) -> CovMatrix:
    if not isinstance(obj, dict) or set(obj) != {"n_modes", "gamma"}:
        raise InvalidInputError('CM file must be {"n_modes": int, "gamma": [[...]]}')
    try:
        cm = CovMatrix(np.array(obj["gamma"], dtype=float))
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"bad gamma array: {exc}") from None
    if cm.n_modes != obj["n_modes"]:
        raise InvalidInputError(
            f'n_modes={obj["n_modes"]} inconsistent with a {cm.entries.shape} gamma')
    if not allow_nonphysical and validate_physical(cm) < -PHYSICALITY_TOL:
        raise NonPhysicalStateError(
            "CM violates physicality; pass the skip-physicality flag for measured data")
    return cm


def read_cm_file(path, allow_nonphysical: bool = False) -> CovMatrix:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"not valid JSON: {exc}") from None
    return cm_from_dict(obj, allow_nonphysical=allow_nonphysical)


def write_cm_file(path, cm):
    with open(path, "w") as fh:
        json.dump(cm_to_dict(cm), fh, indent=1)
        fh.write("\n")
