"""End-to-end builders for the splitting/attenuation/recovery experiments.

A ScenarioState keeps the quantum covariance matrix and the classical noise
sources separate: each source is a scalar Gaussian random variable of known
variance entering the quadratures through a loading vector.  The effective CM
seen by correlation functionals is quantum_cm + sum_s W_s l_s l_s^T.  Keeping
the modulation explicit is what makes demodulation computable later.

The correlation-flow audit instead needs a *pure* global model in which the
purifying mode E carries everything that is mixed about the input; it is
rebuilt from the recorded input spec by :func:`pure_global_state`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .channels import (InputSpec, attenuate, beamsplitter, cmr_noise,
                       purify_single_mode, tensor_transform)
from .core import (CovMatrix, SymplecticTransform, apply_symplectic, ppt_min_eig,
                   reduce, tensor, _as_matrix)
from .correlations import (KWFlowPoint, classical_correlation, discord, entropy_f,
                           geof)
from .errors import InvalidInputError
from ._parallel import parallel_map

MODULATION_SOURCE = "modulation_x"
PHASE_NOISE_SOURCE = "phase_noise_p"


@dataclass(frozen=True)
class NoiseLoading:
    """One classical noise source: variance W (gamma-units) entering via a vector."""

    source_id: str
    variance: float
    vector: np.ndarray

    def __post_init__(self):
        if self.variance < 0:
            raise InvalidInputError("loading variance must be nonnegative")
        v = np.asarray(self.vector, dtype=float).copy()
        v.flags.writeable = False
        object.__setattr__(self, "vector", v)


@dataclass(frozen=True)
class DuanReport:
    """Product inseparability criterion evaluation."""

    g: float
    signs: tuple
    value: float
    entangled: bool


@dataclass(frozen=True)
class SweepRow:
    t: float
    discord: float
    mutual_info: float
    classical_corr: float
    s_a: float
    e_f_ae: float | None = None


@dataclass(frozen=True)
class ScenarioState:
    """Immutable snapshot: named modes, quantum CM, mean, classical loadings."""

    mode_names: tuple
    quantum_cm: CovMatrix
    mean: np.ndarray
    loadings: tuple = ()
    input_spec: InputSpec | None = None
    bs_t: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.mode_names) != self.quantum_cm.n_modes:
            raise InvalidInputError("mode_names length must match the CM mode count")
        if len(set(self.mode_names)) != len(self.mode_names):
            raise InvalidInputError("mode names must be unique")
        mean = np.asarray(self.mean, dtype=float).copy()
        if mean.shape != (2 * self.quantum_cm.n_modes,):
            raise InvalidInputError("mean vector has wrong length")
        mean.flags.writeable = False
        object.__setattr__(self, "mean", mean)
        for ld in self.loadings:
            if ld.vector.shape != mean.shape:
                raise InvalidInputError(f"loading {ld.source_id} has wrong vector length")

    @property
    def n_modes(self) -> int:
        return self.quantum_cm.n_modes

    def mode_index(self, name: str) -> int:
        try:
            return self.mode_names.index(name)
        except ValueError:
            raise InvalidInputError(f"no mode named {name!r} in {self.mode_names}") from None

    def effective_cm(self, modes=None) -> CovMatrix:
        """quantum_cm + sum W l l^T, optionally reduced to the named modes."""
        g = self.quantum_cm.entries.copy()
        for ld in self.loadings:
            g += ld.variance * np.outer(ld.vector, ld.vector)
        cm = CovMatrix(g)
        if modes is None:
            return cm
        idx = [self.mode_index(m) if isinstance(m, str) else m for m in modes]
        return reduce(cm, idx)

    def loading(self, source_id: str) -> NoiseLoading:
        for ld in self.loadings:
            if ld.source_id == source_id:
                return ld
        raise InvalidInputError(f"state has no noise source {source_id!r}")

    def apply_symplectic(self, s) -> "ScenarioState":
        """Apply S to the quantum CM, the mean, and every loading vector."""
        sm = s.entries if isinstance(s, SymplecticTransform) else np.asarray(s, float)
        new_loadings = tuple(replace(ld, vector=sm @ ld.vector) for ld in self.loadings)
        return replace(self, quantum_cm=apply_symplectic(self.quantum_cm, s),
                       mean=sm @ self.mean, loadings=new_loadings)

    def with_vacuum_mode(self, name: str, x_loading_coeffs=None) -> "ScenarioState":
        """Append a vacuum mode; optional {source_id: coeff} loads its x quadrature."""
        if name in self.mode_names:
            raise InvalidInputError(f"mode {name!r} already present")
        coeffs = dict(x_loading_coeffs or {})
        new_loadings = []
        for ld in self.loadings:
            vec = np.concatenate([ld.vector, [coeffs.pop(ld.source_id, 0.0), 0.0]])
            new_loadings.append(replace(ld, vector=vec))
        if coeffs:
            raise InvalidInputError(f"unknown source ids {sorted(coeffs)}")
        return replace(self, mode_names=self.mode_names + (name,),
                       quantum_cm=tensor(self.quantum_cm, np.eye(2)),
                       mean=np.concatenate([self.mean, [0.0, 0.0]]),
                       loadings=tuple(new_loadings))

    def modulate_mode(self, name: str, w_x: float, w_p: float,
                      source_prefix: str | None = None) -> "ScenarioState":
        """Register classical displacement noise on one mode as new loadings."""
        if w_x < 0 or w_p < 0:
            raise InvalidInputError("noise variances must be nonnegative")
        mode = self.mode_index(name)
        prefix = source_prefix or f"modulation_{name}"
        new = list(self.loadings)
        for offset, w, tag in ((0, w_x, "x"), (1, w_p, "p")):
            if w > 0:
                vec = np.zeros(2 * self.n_modes)
                vec[2 * mode + offset] = 1.0
                new.append(NoiseLoading(f"{prefix}_{tag}", w, vec))
        return replace(self, loadings=tuple(new))

    def attenuate_mode(self, name: str, t: float, keep_environment: bool = True,
                       env_name: str = "V") -> "ScenarioState":
        """Attenuate one mode; with keep_environment the loss port becomes env_name."""
        mode = self.mode_index(name)
        if keep_environment:
            st = self.with_vacuum_mode(env_name)
            bs = beamsplitter(t, st.n_modes, (mode, st.n_modes - 1))
            return st.apply_symplectic(bs)
        scale = np.ones(2 * self.n_modes)
        scale[2 * mode:2 * mode + 2] = np.sqrt(t)
        new_loadings = tuple(replace(ld, vector=scale * ld.vector) for ld in self.loadings)
        return replace(self, quantum_cm=attenuate(self.quantum_cm, mode, t),
                       mean=scale * self.mean, loadings=new_loadings)


# ---------------------------------------------------------------------------
# builders

def build_split_state(spec: InputSpec, bs_t: float) -> ScenarioState:
    """Split a modulated input on a beamsplitter; modes (A, B, E).

    The quantum part is the pure squeezed input split with vacuum (E is a
    vacuum placeholder here; the purifying model lives in
    :func:`pure_global_state`).  The x-modulation and any excess p noise are
    tracked as classical loadings, so the effective (A, B) covariance equals
    the block form (gamma_in + 1)/2, (gamma_in - 1)/2 for a balanced split.
    """
    if not 0.0 <= bs_t <= 1.0:
        raise InvalidInputError("bs_t must be in [0, 1]")
    sx, sp = spec.quantum_variances()
    w_x, w_p = spec.modulation_variances()

    quantum = tensor(tensor(np.diag([sx, sp]), np.eye(2)), np.eye(2))  # (in, B0, E)
    loadings = [NoiseLoading(MODULATION_SOURCE, w_x,
                             np.array([1.0, 0, 0, 0, 0, 0]))]
    if w_p > 0:
        loadings.append(NoiseLoading(PHASE_NOISE_SOURCE, w_p,
                                     np.array([0, 1.0, 0, 0, 0, 0])))
    state = ScenarioState(mode_names=("A", "B", "E"), quantum_cm=quantum,
                          mean=np.zeros(6), loadings=tuple(loadings),
                          input_spec=spec, bs_t=bs_t)
    return state.apply_symplectic(beamsplitter(bs_t, 3, (0, 1)))


def pure_global_state(spec: InputSpec, bs_t: float) -> ScenarioState:
    """Pure three-mode model (A, B, E): E purifies the full mixed input.

    The purification of diag(V_x, V_p) is a locally squeezed two-mode
    squeezed vacuum; the input half is then split with vacuum.  No classical
    loadings: the effective CM is the quantum CM.
    """
    if not 0.0 <= bs_t <= 1.0:
        raise InvalidInputError("bs_t must be in [0, 1]")
    pur = purify_single_mode(np.diag([spec.v_x, spec.v_p]))  # modes (in, E)
    three = tensor(pur, np.eye(2))                           # (in, E, B0)
    perm = np.zeros((6, 6))                                  # -> (in, B0, E)
    for src, dst in enumerate([0, 2, 1]):
        perm[2 * dst:2 * dst + 2, 2 * src:2 * src + 2] = np.eye(2)
    three = apply_symplectic(three, perm.T)
    state = ScenarioState(mode_names=("A", "B", "E"), quantum_cm=three,
                          mean=np.zeros(6), input_spec=spec, bs_t=bs_t)
    return state.apply_symplectic(beamsplitter(bs_t, 3, (0, 1)))


# ---------------------------------------------------------------------------
# sweeps

def attenuation_sweep(state: ScenarioState, t_grid, cmr_a: float = 0.0,
                      include_ef: bool = False, geof_restarts: int = 6,
                      seed: int = 0) -> list:
    """Discord and companions versus attenuation of mode B.

    Per grid point the effective (A, B') CM gains the common-mode-rejection
    noise diag(a, a, t a, t a) before the discord report; the optional
    entanglement-with-environment column is evaluated on the noiseless pure
    model (it relies on global purity).
    """
    t_grid = list(t_grid)
    if any(not 0.0 <= t <= 1.0 for t in t_grid):
        raise InvalidInputError("attenuation grid must lie in [0, 1]")
    twin = None
    if include_ef:
        if state.input_spec is None or state.bs_t is None:
            raise InvalidInputError("state lacks input metadata needed for E_F columns")
        twin = pure_global_state(state.input_spec, state.bs_t)

    def row(t):
        eff = state.attenuate_mode("B", t, keep_environment=False).effective_cm(["A", "B"])
        noisy = cmr_noise(eff, cmr_a, t)
        rep = discord(noisy, measured_mode=1)
        s_a = entropy_f(max(np.sqrt(np.linalg.det(noisy.entries[:2, :2])), 1.0))
        e_f = None
        if include_ef:
            g4 = twin.attenuate_mode("B", t, keep_environment=True, env_name="V")
            g_aev = g4.effective_cm(["A", "E", "V"])
            e_f = geof(g_aev, a_mode=0, restarts=geof_restarts, seed=seed).value
        return SweepRow(t=t, discord=rep.discord, mutual_info=rep.mutual_info,
                        classical_corr=rep.classical_corr, s_a=s_a, e_f_ae=e_f)

    return parallel_map(row, t_grid)


def correlation_flow(state: ScenarioState, t_grid, geof_restarts: int = 6,
                     seed: int = 0) -> list:
    """Marginal-entropy balance along the attenuation grid, on the pure model.

    Per point: S(A) from the A marginal, J from the discord machinery on
    (A, B'), and the A-to-environment entanglement of formation from the
    independent constrained minimization over the 1x2 partition (E plus the
    loss ancilla V).
    """
    if state.input_spec is None or state.bs_t is None:
        raise InvalidInputError("state lacks input metadata needed for the flow")
    twin = pure_global_state(state.input_spec, state.bs_t)

    def point(t):
        g4 = twin.attenuate_mode("B", t, keep_environment=True, env_name="V")
        g_ab = g4.effective_cm(["A", "B"])
        s_a = entropy_f(max(np.sqrt(np.linalg.det(g_ab.entries[:2, :2])), 1.0))
        j = classical_correlation(g_ab, measured_mode=1)
        g_aev = g4.effective_cm(["A", "E", "V"])
        e_f = geof(g_aev, a_mode=0, restarts=geof_restarts, seed=seed).value
        return KWFlowPoint(t=t, s_a=s_a, j_ab=j, e_f_ae=e_f)

    return parallel_map(point, list(t_grid))


# ---------------------------------------------------------------------------
# Duan product criterion and recovery protocols

def duan_value(cm, g: float, signs: tuple = (1, -1)) -> DuanReport:
    """Normalized product criterion value for combinations (g x_A + s x_B, g p_A - s p_B).

    Quadrature variances are gamma-entries / 2; the normalization is
    (g^2 + 1)^2 / 4, so values below 1 certify entanglement.
    """
    if g <= 0:
        raise InvalidInputError("gain must be positive")
    sx, sp = signs
    if sx not in (1, -1) or sp != -sx:
        raise InvalidInputError("signs must be (+1, -1) or (-1, +1)")
    m = _as_matrix(cm)
    if m.shape != (4, 4):
        raise InvalidInputError("Duan criterion needs a two-mode CM")
    vx = np.array([g, 0.0, sx, 0.0])
    vp = np.array([0.0, g, 0.0, -sx])
    value = float((vx @ m @ vx / 2) * (vp @ m @ vp / 2) / ((g * g + 1) ** 2 / 4))
    return DuanReport(g=float(g), signs=(sx, sp), value=value, entangled=value < 1.0)


def duan_optimize(cm) -> DuanReport:
    """Minimize the Duan value over gain (both sign pairs)."""
    m = _as_matrix(cm)
    best = None
    for sx in (1, -1):
        res = minimize_scalar(lambda lg: duan_value(m, np.exp(lg), (sx, -sx)).value,
                              bounds=(-6.0, 6.0), method="bounded",
                              options={"xatol": 1e-12})
        rep = duan_value(m, np.exp(res.x), (sx, -sx))
        if best is None or rep.value < best.value:
            best = rep
    return best


def recover_demodulate(state: ScenarioState, g: float) -> ScenarioState:
    """Subtract the recorded displacement from x_B so (g x_A + x_B) is noise-free.

    The subtracted multiple is g * l[x_A] + l[x_B] of the modulation loading,
    which reduces to (g T + R) for the plain split state; the residual loading
    on x_B is then -g T.
    """
    if g <= 0:
        raise InvalidInputError("gain must be positive")
    ld = state.loading(MODULATION_SOURCE)
    ia, ib = state.mode_index("A"), state.mode_index("B")
    prefactor = g * ld.vector[2 * ia] + ld.vector[2 * ib]
    vec = ld.vector.copy()
    vec[2 * ib] -= prefactor
    new_loadings = tuple(replace(l, vector=vec) if l.source_id == MODULATION_SOURCE else l
                         for l in state.loadings)
    meta = dict(state.meta, demod_gain=float(g), demod_prefactor=float(prefactor))
    return replace(state, loadings=new_loadings, meta=meta)


def demodulation_duan(state: ScenarioState, g: float) -> DuanReport:
    """Duan value of (A, B) after demodulating with the same gain g."""
    out = recover_demodulate(state, g)
    return duan_value(out.effective_cm(["A", "B"]), g)


def optimal_demodulation(state: ScenarioState):
    """Jointly optimize the shared gain of demodulation and the Duan test."""
    res = minimize_scalar(lambda lg: demodulation_duan(state, np.exp(lg)).value,
                          bounds=(-6.0, 6.0), method="bounded",
                          options={"xatol": 1e-12})
    g = float(np.exp(res.x))
    return recover_demodulate(state, g), demodulation_duan(state, g)


def recover_interfere(state: ScenarioState, bs_t_be: float | None = None) -> ScenarioState:
    """Superimpose B with an ancilla mode whose x quadrature encodes -xbar.

    The ancilla is a vacuum mode carrying loading coefficient -1 of the
    modulation source on its x quadrature; interfering it with B partially
    cancels the displacement noise.  When bs_t_be is not given it is chosen
    by 1-D minimization of the optimized Duan value of (A, B).
    """
    state.loading(MODULATION_SOURCE)  # raises if the xbar source is missing
    if "Et" in state.mode_names:
        raise InvalidInputError("state already contains the interference ancilla")

    def mixed(t2):
        st = state.with_vacuum_mode("Et", {MODULATION_SOURCE: -1.0})
        bs = beamsplitter(t2, st.n_modes, (st.mode_index("B"), st.mode_index("Et")))
        return st.apply_symplectic(bs)

    if bs_t_be is None:
        res = minimize_scalar(
            lambda t2: duan_optimize(mixed(t2).effective_cm(["A", "B"])).value,
            bounds=(1e-6, 1.0 - 1e-9), method="bounded", options={"xatol": 1e-9})
        bs_t_be = float(res.x)
    elif not 0.0 <= bs_t_be <= 1.0:
        raise InvalidInputError("bs_t_be must be in [0, 1]")
    out = mixed(bs_t_be)
    return replace(out, meta=dict(out.meta, bs_t_be=float(bs_t_be)))


def recovery_closed_form(r: float, big_t: float, g: float) -> float:
    """Ideal demodulated Duan value for a split squeezed input without excess noise.

    [e^{2r}(gT-R)^2 + (gR+T)^2][e^{-2r}(gT+R)^2 + (gR-T)^2] / (g^2+1)^2
    with R = sqrt(1 - T^2); for a balanced splitter and g = 1 this is e^{-2r}.
    """
    if not 0.0 <= big_t <= 1.0:
        raise InvalidInputError("amplitude transmittance must be in [0, 1]")
    if g <= 0:
        raise InvalidInputError("gain must be positive")
    big_r = np.sqrt(1.0 - big_t * big_t)
    up = np.exp(2 * r) * (g * big_t - big_r) ** 2 + (g * big_r + big_t) ** 2
    down = np.exp(-2 * r) * (g * big_t + big_r) ** 2 + (g * big_r - big_t) ** 2
    return float(up * down / (g * g + 1) ** 2)


def run_recovery(state: ScenarioState, mode: str, gain=None, bs_t_be=None):
    """Execute one recovery protocol; returns (final_state, DuanReport).

    gain None means jointly optimized; for the interference route the Duan
    gain is always optimized after mixing.
    """
    if mode == "demodulate":
        if gain is None:
            return optimal_demodulation(state)
        out = recover_demodulate(state, gain)
        return out, duan_value(out.effective_cm(["A", "B"]), gain)
    if mode == "interfere":
        out = recover_interfere(state, bs_t_be)
        return out, duan_optimize(out.effective_cm(["A", "B"]))
    raise InvalidInputError(f"unknown recovery mode {mode!r}")


def split_state_is_separable(state: ScenarioState) -> bool:
    """PPT witness on the effective (A, B) covariance."""
    return ppt_min_eig(state.effective_cm(["A", "B"])) >= -1e-9


def measurement_optimality_note(spec: InputSpec) -> dict:
    """Advisory certificate for interpreting Gaussian discord as discord.

    For split squeezed inputs (v_p > v_x > 1) this evaluates the full
    decomposition certificate; other inputs (split modulated coherent states
    in particular) are outside the proven family and get certified=False with
    a reason.  Never gates any computation.
    """
    from .optimality import certify
    if spec.kind == "squeezed" and spec.v_p > spec.v_x > 1.0:
        return certify(spec.v_x, spec.v_p).to_dict()
    return {"certified": False, "reason": "outside proven family"}


# ---------------------------------------------------------------------------
# scenario configuration (shared by the CLI and the experiment scripts)

@dataclass(frozen=True)
class RecoveryConfig:
    mode: str
    gain: float | None = None       # None -> optimized
    bs_t_be: float | None = None    # None -> optimized

    def __post_init__(self):
        if self.mode not in ("demodulate", "interfere"):
            raise InvalidInputError("recovery mode must be demodulate|interfere")


@dataclass(frozen=True)
class ScenarioConfig:
    input_spec: InputSpec
    bs_t: float
    attenuation_grid: tuple
    cmr_a: float = 0.0
    kw_columns: bool = False
    recovery: RecoveryConfig | None = None

    @staticmethod
    def from_dict(obj: dict) -> "ScenarioConfig":
        if not isinstance(obj, dict):
            raise InvalidInputError("config must be a JSON object")
        allowed = {"input", "bs_t", "attenuation_grid", "cmr_a", "kw_columns", "recovery"}
        unknown = set(obj) - allowed
        if unknown:
            raise InvalidInputError(f"unknown config keys: {sorted(unknown)}")
        try:
            inp = obj["input"]
            bs_t = float(obj["bs_t"])
        except KeyError as exc:
            raise InvalidInputError(f"missing config key: {exc}") from None
        in_allowed = {"kind", "squeezing_db", "v_x", "v_p"}
        if not isinstance(inp, dict) or set(inp) - in_allowed:
            raise InvalidInputError(f"input block allows keys {sorted(in_allowed)}")
        spec = InputSpec(kind=inp.get("kind", "coherent"),
                         squeezing_db=float(inp.get("squeezing_db", 0.0)),
                         v_x=float(inp["v_x"]), v_p=float(inp["v_p"]))
        grid = tuple(float(t) for t in obj.get("attenuation_grid", ()))
        rec = None
        if obj.get("recovery") is not None:
            r = obj["recovery"]
            r_allowed = {"mode", "gain", "bs_t_be"}
            if not isinstance(r, dict) or set(r) - r_allowed:
                raise InvalidInputError(f"recovery block allows keys {sorted(r_allowed)}")
            gain = r.get("gain")
            bst = r.get("bs_t_be")
            rec = RecoveryConfig(
                mode=r.get("mode", "demodulate"),
                gain=None if gain in (None, "optimized") else float(gain),
                bs_t_be=None if bst in (None, "optimized") else float(bst))
        return ScenarioConfig(input_spec=spec, bs_t=bs_t, attenuation_grid=grid,
                              cmr_a=float(obj.get("cmr_a", 0.0)),
                              kw_columns=bool(obj.get("kw_columns", False)),
                              recovery=rec)


__all__ = [
    "MODULATION_SOURCE", "PHASE_NOISE_SOURCE", "NoiseLoading", "DuanReport",
    "SweepRow", "ScenarioState", "build_split_state", "pure_global_state",
    "attenuation_sweep", "correlation_flow", "duan_value", "duan_optimize",
    "recover_demodulate", "demodulation_duan", "optimal_demodulation",
    "recover_interfere", "recovery_closed_form", "run_recovery",
    "split_state_is_separable", "measurement_optimality_note",
    "RecoveryConfig", "ScenarioConfig",
]
