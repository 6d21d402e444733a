import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gausscorr.channels import tmsv_cm, tmsv_from_squeezing
from gausscorr.core import (apply_symplectic, random_physical_cm, random_symplectic,
                            reduce, tensor)
from gausscorr.correlations import (MeasurementSeed, classical_correlation,
                                    conditional_cm, discord, discord_oracle,
                                    entropy_f, kw_audit, mutual_information,
                                    von_neumann_entropy)
from gausscorr.errors import InvalidInputError, NonPhysicalStateError


def test_entropy_f_values():
    assert entropy_f(1.0) == 0.0
    assert entropy_f(3.0) == pytest.approx(2 * np.log(2.0), rel=1e-12)
    assert entropy_f(1.0 - 5e-7) == 0.0  # clamped


def test_entropy_f_monotone():
    xs = np.linspace(1.0, 50.0, 200)
    vals = [entropy_f(x) for x in xs]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_entropy_f_rejects_below_clamp():
    with pytest.raises(InvalidInputError):
        entropy_f(0.99)


def test_von_neumann_entropy_cases():
    assert von_neumann_entropy(np.eye(4)) == 0.0
    assert von_neumann_entropy(np.diag([3.0, 3.0])) == pytest.approx(entropy_f(3.0))
    assert von_neumann_entropy(tmsv_from_squeezing(0.6)) == pytest.approx(0.0, abs=1e-8)


def test_conditional_cm_product_state():
    g = np.diag([2.0, 0.7, 3.0, 3.0])
    eps = conditional_cm(g, 1, MeasurementSeed(theta=0.3, s=2.0))
    assert np.allclose(eps.entries, np.diag([2.0, 0.7]))


def test_conditional_cm_tmsv_heterodyne():
    m = 2.5
    eps = conditional_cm(tmsv_cm(m), 1, np.eye(2))
    assert np.allclose(eps.entries, np.eye(2), atol=1e-12)
    assert np.linalg.det(eps.entries) < m * m  # measurement reduces uncertainty


def test_conditional_cm_singular_seed():
    g = tmsv_cm(2.0).entries
    with pytest.raises(Exception):
        conditional_cm(g, 1, -g[2:, 2:])


def test_discord_product_state_zero():
    g = np.diag([2.0, 2.0, 3.0, 3.0])
    rep = discord(g)
    assert rep.discord == pytest.approx(0.0, abs=1e-10)
    assert rep.mutual_info == pytest.approx(0.0, abs=1e-10)


def test_discord_measured_cm(measured_cm):
    rep = discord(measured_cm, measured_mode=1)
    assert rep.discord == pytest.approx(0.49, abs=0.01)
    assert rep.branch == "heterodyne-case"
    assert not rep.clamped
    assert rep.discord == pytest.approx(rep.mutual_info - rep.classical_corr, abs=1e-12)


def test_discord_frozen_value(measured_cm):
    # value pinned from this implementation; guards against regressions
    assert discord(measured_cm).discord == pytest.approx(0.4918751, abs=1e-6)


def test_discord_requires_physicality_without_flag():
    bad = np.diag([0.5, 0.5, 1.0, 1.0])
    with pytest.raises(NonPhysicalStateError):
        discord(bad)
    rep = discord(bad, allow_measured=True)
    assert rep.clamped


def test_discord_split_modulated_coherent_matches_oracle():
    gin = np.diag([7.1, 1.0])
    g = 0.5 * np.block([[gin + np.eye(2), gin - np.eye(2)],
                        [gin - np.eye(2), gin + np.eye(2)]])
    closed = discord(g).discord
    oracle = discord_oracle(g)
    assert abs(closed - oracle) <= 1e-5


def test_discord_oracle_product_state():
    g = np.diag([2.0, 2.0, 3.0, 3.0])
    assert abs(discord_oracle(g) - discord(g).discord) <= 1e-10


def test_discord_oracle_squeezed_thermal_heterodyne():
    # locally squeezed TMSV: heterodyne branch, verified against the oracle
    sq = np.eye(4)
    sq[0, 0], sq[1, 1] = 1.2, 1 / 1.2
    g = apply_symplectic(tmsv_cm(2.0), sq)
    rep = discord(g)
    assert rep.branch == "heterodyne-case"
    assert abs(discord_oracle(g) - rep.discord) <= 1e-5


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_discord_closed_vs_oracle_random(seed):
    rng = np.random.default_rng(seed)
    cm = random_physical_cm(rng, 2)
    assert abs(discord(cm).discord - discord_oracle(cm)) <= 1e-4


def test_mutual_information_cases(measured_cm):
    g = np.diag([2.0, 2.0, 3.0, 3.0])
    assert mutual_information(g) == pytest.approx(0.0, abs=1e-10)
    assert classical_correlation(g) == pytest.approx(0.0, abs=1e-10)
    rep = discord(measured_cm)
    assert rep.mutual_info - rep.classical_corr == pytest.approx(0.49, abs=0.01)


def test_mutual_information_symmetric_under_swap():
    m = 2.0
    g = tmsv_cm(m).entries
    swap = np.zeros((4, 4))
    swap[np.ix_([0, 1], [2, 3])] = np.eye(2)
    swap[np.ix_([2, 3], [0, 1])] = np.eye(2)
    assert mutual_information(g) == pytest.approx(
        mutual_information(swap @ g @ swap.T), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_discord_and_classical_nonnegative(seed):
    rng = np.random.default_rng(seed)
    cm = random_physical_cm(rng, 2)
    rep = discord(cm)
    assert rep.discord >= -1e-9
    assert rep.classical_corr >= -1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_discord_local_symplectic_invariance(seed):
    rng = np.random.default_rng(seed)
    cm = random_physical_cm(rng, 2)
    local = np.zeros((4, 4))
    local[:2, :2] = random_symplectic(rng, 1).entries
    local[2:, 2:] = random_symplectic(rng, 1).entries
    moved = apply_symplectic(cm, local)
    assert discord(moved).discord == pytest.approx(discord(cm).discord, abs=1e-8)


def test_measurement_seed_det_one():
    seed = MeasurementSeed(theta=0.7, s=3.0)
    assert np.linalg.det(seed.covariance()) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(InvalidInputError):
        MeasurementSeed(theta=0.0, s=-1.0)


def test_kw_audit_trivial():
    assert kw_audit(0.0, 0.0, 0.0) == 0.0
    assert kw_audit(1.5, 1.0, 0.5) == pytest.approx(0.0)


def test_discord_measured_mode_direction(measured_cm):
    # measuring the two modes gives different values for an asymmetric state
    d_b = discord(measured_cm, measured_mode=1).discord
    d_a = discord(measured_cm, measured_mode=0).discord
    assert abs(d_a - d_b) > 1e-3


def test_branch_tie_continuity():
    # product states sit exactly on the branch boundary (both sides agree)
    g = tensor(np.diag([2.0, 2.0]), np.diag([3.0, 3.0]))
    rep = discord(g)
    assert rep.inf_det_eps == pytest.approx(4.0, rel=1e-10)  # det alpha
