import cmath
import math

import pytest

import schro_renorm as sr


@pytest.fixture(scope="module")
def R():
    return sr.TemporalCovariance.build(sr.make_bump_eta(1.0), 1.0 / 256.0)


@pytest.fixture(scope="module")
def engine(R):
    return sr.FeynmanKacEngine(R, 0.01)


def test_covariance_shape(R):
    assert R.support_radius == pytest.approx(2.0)
    assert R.at_zero == pytest.approx(0.6751168130096996, rel=1e-9)
    assert R(0.3) == R(-0.3)
    assert R(2.5) == 0.0
    assert R.l1_norm > 0.0


def test_constants(R):
    z1 = sr.compute_z1(R)
    assert z1.real == pytest.approx(0.18345463019870858, abs=1e-12)
    assert z1.imag == pytest.approx(-0.035588527606556154, abs=1e-12)
    assert sr.cross_section(sr.make_bump_eta(1.0)) == pytest.approx(2.0 * z1.real, rel=1e-6)
    c0 = sr.mean_growth_correction(R)
    assert c0.real > 0.0 and c0.imag < 0.0


def test_mean_law(engine):
    # quadrature mean vs a short Monte Carlo run
    est = engine.estimate_mean_X(0.5, 0.5, 2000, 1)
    exact = engine.mean_X_quadrature(0.5, 0.5)
    assert abs(est.value.real - exact.real) < 4.0 * est.se_re
    assert abs(est.value.imag - exact.imag) < 4.0 * est.se_im


def test_wave_estimator_against_series(engine):
    t, xi = 0.2, 0.0
    est = engine.fk_wave_estimator(xi, t, 1.0, 2000, 1)
    series = engine.dyson_truncated_mean(xi, t, 2)
    tail = engine.dyson_tail_bound(xi, t, 2)
    assert abs(est.value - series) < 4.0 * est.se_abs() + tail


def test_dyson_guard(engine):
    with pytest.raises(ValueError):
        engine.dyson_truncated_mean(0.0, 3.0, 2)


def test_z2_from_fluctuation_moments(engine):
    A = engine.estimate_A(2000, 1)
    z2 = sr.compute_z2(A)
    assert z2.value == complex(0.5 * (A.a11 - A.a22), A.a12)
    assert z2.se_re > 0.0 and z2.se_im > 0.0
    prof = sr.limit_profile(1.0, 1.0, z2.value, 1.0 + 0.0j)
    assert abs(prof) == pytest.approx(abs(cmath.exp(z2.value * 1.0)), rel=1e-12)


def test_spde_roundtrip():
    p = sr.SpdeParams()
    p.length = 8.0
    p.n_points = 128
    p.dt = 0.05
    p.eps = 1.0
    p.t_final = 0.2

    eta = sr.make_bump_eta(1.0)
    R = sr.TemporalCovariance.build(eta, 1.0 / 256.0)
    assert sr.potential_variance(p, eta) == pytest.approx(
        R.at_zero / math.sqrt(2.0 * math.pi), rel=1e-9
    )

    hat0 = sr.initial_bump_hat(p, 0.0)
    assert hat0.imag == 0.0 and hat0.real > 0.0

    res = sr.ensemble_mean_fourier(p, eta, [0.0], 50, 1)
    (est,) = res.phi_hat
    assert est.n_samples == 50
    assert est.se_abs() > 0.0
    assert abs(est.value) == pytest.approx(abs(hat0), rel=0.05)

    again = sr.ensemble_mean_fourier(p, eta, [0.0], 50, 1)
    assert again.phi_hat[0].value == est.value
