import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavitybec.errors import InvalidParameterError
from cavitybec.model import (
    ModelParams,
    build_M,
    build_M_alpha,
    build_M_alpha_prime,
    critical_pump,
    effective_frequency,
    from_microscopic,
    mean_field_energy,
)

WORK = ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=11.0, n_cutoff=10)


def unit(dim, i):
    e = np.zeros(dim)
    e[i] = 1.0
    return e


# ---- parameters -------------------------------------------------------------

def test_from_microscopic_all_off():
    p = from_microscopic(Delta_C=0.0, U0=0.0, eta_t=0.0, N_c=1e5, omega_R=1.0, n_cutoff=10)
    assert (p.delta_C, p.u, p.y) == (0.0, 0.0, 0.0)


def test_from_microscopic_working_point():
    # delta_C = Delta_C - N_c U0 / 2, u = N_c U0 / 4, y = sqrt(2 N_c) eta_t
    p = from_microscopic(Delta_C=-140.0, U0=-8e-4, eta_t=0.01, N_c=1e5, omega_R=1.0)
    assert p.delta_C == pytest.approx(-100.0, rel=1e-14)
    assert p.u == pytest.approx(-20.0, rel=1e-14)
    assert p.y == pytest.approx(math.sqrt(2e5) * 0.01, rel=1e-14)
    assert p.n_cutoff == 10


@given(eta=st.floats(0, 1e3), N=st.floats(1, 1e9))
def test_from_microscopic_pump_nonnegative(eta, N):
    assert from_microscopic(-1.0, 0.0, eta, N, 1.0).y >= 0


@pytest.mark.parametrize("kwargs", [
    dict(omega_R=0.0, delta_C=-1, u=0, y=0),
    dict(omega_R=1.0, delta_C=-1, u=0, y=-0.5),
    dict(omega_R=1.0, delta_C=math.nan, u=0, y=0),
    dict(omega_R=1.0, delta_C=-1, u=0, y=0, n_cutoff=0),
    dict(omega_R=1.0, delta_C=-1, u=0, y=0, n_cutoff=2.5),
])
def test_params_rejected(kwargs):
    with pytest.raises(InvalidParameterError):
        ModelParams(**kwargs)


def test_params_immutable_and_replace():
    with pytest.raises(AttributeError):
        WORK.y = 3.0
    q = WORK.replace(y=3.0)
    assert q.y == 3.0 and WORK.y == 11.0 and q.dim == 11


# ---- constant matrices ------------------------------------------------------

def test_build_M0():
    np.testing.assert_array_equal(build_M(0, 3), np.diag([0.0, 1.0, 4.0, 9.0]))


def test_build_M1_top_block():
    np.testing.assert_array_equal(build_M(1, 2)[:2, :2], [[0.0, 1.0], [1.0, 0.0]])


def test_build_M1_entries():
    M1 = build_M(1, 4)
    assert M1[1, 2] == M1[3, 4] == pytest.approx(1 / math.sqrt(2))


def test_build_M2_entries():
    M2 = build_M(2, 2)
    assert M2[0, 2] == M2[2, 0] == pytest.approx(math.sqrt(2))
    assert M2[1, 1] == 1.0
    M2 = build_M(2, 5)
    assert M2[1, 3] == M2[2, 4] == M2[3, 5] == 1.0


def test_build_M2_two_mode():
    np.testing.assert_array_equal(build_M(2, 1), [[0.0, 0.0], [0.0, 1.0]])


@pytest.mark.parametrize("n", [1, 2, 3, 5, 10, 40])
def test_matrix_structure(n):
    M0, M1, M2 = (build_M(j, n) for j in range(3))
    for M in (M0, M1, M2):
        assert M.shape == (n + 1, n + 1)
        np.testing.assert_array_equal(M, M.T)
    np.testing.assert_array_equal(M0, np.diag(np.diag(M0)))
    i, j = np.indices(M1.shape)
    assert np.all(M1[np.abs(i - j) != 1] == 0)
    assert np.all(M2[np.abs(i - j) > 2] == 0)
    assert np.all(M2[np.abs(i - j) == 1] == 0)
    diag2 = np.diag(M2).copy()
    assert diag2[1] == 1.0
    diag2[1] = 0.0
    assert np.all(diag2 == 0)


@pytest.mark.parametrize("j,n", [(3, 2), (-1, 2), (0, 0)])
def test_build_M_rejects(j, n):
    with pytest.raises(InvalidParameterError):
        build_M(j, n)


# ---- effective frequency ----------------------------------------------------

def test_effective_frequency_homogeneous():
    assert effective_frequency(WORK, unit(11, 0)) == 100.0


def test_effective_frequency_first_mode():
    assert effective_frequency(WORK, unit(11, 1)) == pytest.approx(80.0)


@given(st.lists(st.floats(-1, 1), min_size=11, max_size=11))
def test_effective_frequency_without_coupling(v):
    v = np.array(v)
    if np.linalg.norm(v) < 1e-3:
        v[0] = 1.0
    v /= np.linalg.norm(v)
    assert effective_frequency(WORK.replace(u=0.0), v) == 100.0


def test_effective_frequency_rejects_non_unit():
    with pytest.raises(InvalidParameterError):
        effective_frequency(WORK, 2 * unit(11, 0))
    with pytest.raises(InvalidParameterError):
        effective_frequency(WORK, unit(5, 0))


# ---- M(alpha) ---------------------------------------------------------------

def test_M_alpha_at_zero():
    np.testing.assert_array_equal(build_M_alpha(WORK, 0.0), build_M(0, 10))


def test_M_alpha_linear_assembly():
    p = ModelParams(omega_R=1.0, delta_C=-1.0, u=0.0, y=1.0, n_cutoff=2)
    np.testing.assert_allclose(build_M_alpha(p, 1.0), build_M(0, 2) + build_M(1, 2),
                               rtol=0, atol=1e-15)


def test_M_alpha_prime_examples():
    np.testing.assert_allclose(build_M_alpha_prime(WORK, 0.0), 11.0 * build_M(1, 10), atol=0)
    p = WORK.replace(u=0.0)
    for a in (-0.7, 0.3, 5.0):
        np.testing.assert_allclose(build_M_alpha_prime(p, a), 11.0 * build_M(1, 10), atol=0)


@pytest.mark.parametrize("alpha", [-0.3, -0.04, 0.0, 0.2])
def test_M_alpha_prime_matches_finite_difference(alpha):
    h = 1e-5
    fd = (build_M_alpha(WORK, alpha + h) - build_M_alpha(WORK, alpha - h)) / (2 * h)
    np.testing.assert_allclose(build_M_alpha_prime(WORK, alpha), fd, atol=1e-8)


def test_M_alpha_is_quadratic_polynomial():
    alphas = np.array([-0.5, 0.1, 0.8])
    samples = np.stack([build_M_alpha(WORK, a) for a in alphas])
    V = np.vander(alphas, 3)
    coeffs = np.linalg.solve(V, samples.reshape(3, -1))
    for a in (-1.3, 0.37, 2.0):
        pred = (np.array([a ** 2, a, 1.0]) @ coeffs).reshape(11, 11)
        np.testing.assert_allclose(pred, build_M_alpha(WORK, a), atol=1e-11)
        M = build_M_alpha(WORK, a)
        np.testing.assert_array_equal(M, M.T)


# ---- energy and threshold ---------------------------------------------------

def test_energy_examples():
    assert mean_field_energy(WORK, 0.0, unit(11, 0), 0.0) == 0.0
    assert mean_field_energy(WORK, 0.0, unit(11, 1), 0.0) == pytest.approx(1.0)


def test_energy_closed_form_two_mode():
    p = WORK.replace(n_cutoff=1)
    c, s, a, mu = math.cos(0.3), math.sin(0.3), -0.05, -0.2
    expected = (100.0 * a ** 2 + s ** 2 + 11.0 * a * 2 * c * s - 20.0 * a ** 2 * s ** 2 - mu)
    assert mean_field_energy(p, a, np.array([c, s]), mu) == pytest.approx(expected, rel=1e-14)


@settings(max_examples=50)
@given(alpha=st.floats(-1, 1), seed=st.integers(0, 2 ** 32 - 1))
def test_energy_parity_even(alpha, seed):
    v = np.random.default_rng(seed).normal(size=11)
    v /= np.linalg.norm(v)
    flipped = v * (-1.0) ** np.arange(11)
    e1 = mean_field_energy(WORK, alpha, v, 0.3)
    e2 = mean_field_energy(WORK, -alpha, flipped, 0.3)
    assert e1 == pytest.approx(e2, rel=1e-12, abs=1e-12)


def test_critical_pump_examples():
    assert critical_pump(WORK) == 10.0
    assert critical_pump(ModelParams(omega_R=4.0, delta_C=-1.0, u=0.0, y=0.0)) == 2.0
    with pytest.raises(InvalidParameterError):
        critical_pump(WORK.replace(delta_C=0.0))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 10, 30])
def test_critical_pump_cutoff_independent(n):
    assert critical_pump(WORK.replace(n_cutoff=n)) == 10.0
