#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "schro/feynman_kac.hpp"
#include "schro/quadrature.hpp"

using namespace schro;

namespace {

const FeynmanKacEngine& engine() {
    static const FeynmanKacEngine e(
        TemporalCovariance::build(make_bump_eta(1.0), 1.0 / 256.0), 0.01);
    return e;
}

BrownianPath flat_path(int64_t j_min, int64_t j_max, double step = 0.01) {
    BrownianPath p;
    p.step = step;
    p.j_min = j_min;
    p.j_max = j_max;
    p.values.assign(std::size_t(j_max - j_min + 1), 0.0);
    return p;
}

}  // namespace

TEST_CASE("engine rejects bad discretizations") {
    const TemporalCovariance R = TemporalCovariance::build(make_bump_eta(1.0), 1.0 / 256.0);
    CHECK_THROWS_AS(FeynmanKacEngine(R, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(FeynmanKacEngine(R, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(FeynmanKacEngine(R, 0.9), std::invalid_argument);  // δ > M/4
}

TEST_CASE("functional on a flat path reduces to a covariance quadrature") {
    // B ≡ 0 makes the kernel constant: X = (ε/2)(2π)^{-1/2} ∬ R(s-u) ds du,
    // and the double integral collapses to 2∫₀^T (T-τ)R(τ)dτ
    const double eps = 0.7, t = eps * eps * 2.0;  // T = 2
    const double T = 2.0;
    const BrownianPath p = flat_path(0, 200);
    const cplx x = engine().compute_X(p, eps, t);
    const double collapsed = integrate_gk_real(
        [&](double tau) { return (T - tau) * engine().covariance()(tau); }, 0.0, T, 1e-12);
    const double expect = 0.5 * eps / std::sqrt(2.0 * std::numbers::pi) * 2.0 * collapsed;
    CHECK(std::abs(x.imag()) < 1e-15);
    CHECK(x.real() == doctest::Approx(expect).epsilon(5e-4));
}

TEST_CASE("functional vanishes at t = 0 and respects coverage") {
    const BrownianPath p = flat_path(0, 10);
    CHECK(engine().compute_X(p, 0.5, 0.0) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(engine().compute_X(p, 1.0, 1.0), std::domain_error);
}

TEST_CASE("banded sum equals the naive double sum") {
    for (double eps : {1.0, 0.7, 0.5}) {
        const double t = 4.0 * eps * eps;
        const BrownianPath p = sample_path(0.0, 4.0, 0.01, 21, make_stream(50, 1));
        const cplx banded = engine().compute_X(p, eps, t);
        const cplx naive = engine().compute_X_naive(p, eps, t);
        CHECK(std::abs(banded - naive) <= 1e-12);
    }
}

TEST_CASE("every sample respects the deterministic bound") {
    for (uint64_t task = 0; task < 20; ++task) {
        const BrownianPath p = sample_path(0.0, 3.0, 0.01, 31, make_stream(51, task));
        const double t = 0.49 * 3.0;  // eps = 0.7
        const cplx x = engine().compute_X(p, 0.7, t);
        CHECK(std::abs(x) <= engine().deterministic_bound(0.7, t) + 1e-12);
    }
    // the bound itself is the L¹-type envelope up to discretization slack
    const double envelope =
        0.5 * (1.0 / 0.7) * 3.0 * 0.49 / std::sqrt(2.0 * std::numbers::pi) *
        engine().covariance().l1_norm();
    CHECK(engine().deterministic_bound(0.7, 0.49 * 3.0) <
          envelope * (1.0 + 10.0 * 0.01) + 10.0 * 0.01);
}

TEST_CASE("wave estimator is exactly one at t = 0") {
    const MCEstimate est = engine().fk_wave_estimator(1.0, 0.0, 0.5, 50, 3);
    CHECK(est.value == cplx(1.0, 0.0));
    CHECK(est.se_re == 0.0);
    CHECK(est.se_im == 0.0);
    CHECK(est.n_samples == 50);
}

TEST_CASE("wave estimator reruns bit-identically") {
    const MCEstimate a = engine().fk_wave_estimator(1.0, 0.3, 1.0, 500, 9);
    const MCEstimate b = engine().fk_wave_estimator(1.0, 0.3, 1.0, 500, 9);
    CHECK(a.value.real() == b.value.real());
    CHECK(a.value.imag() == b.value.imag());
    CHECK(a.se_re == b.se_re);

    setenv("SCHRO_RENORM_THREADS", "8", 1);
    const MCEstimate c = engine().fk_wave_estimator(1.0, 0.3, 1.0, 500, 9);
    unsetenv("SCHRO_RENORM_THREADS");
    CHECK(a.value.real() == c.value.real());
    CHECK(a.value.imag() == c.value.imag());
    CHECK(a.se_im == c.se_im);
}

TEST_CASE("gaussian phase mean against monte carlo") {
    const double u = 1.0;
    const std::size_t n = 1000000;
    std::vector<double> z(n);
    normal_fill(77, make_stream(52, 0), RngBranch::bm_pos, 0, n, z.data());
    cplx acc{0.0, 0.0};
    for (double v : z) acc += std::exp(cplx(0.0, -0.5 * u * v * v));
    acc /= double(n);
    CHECK(std::abs(acc - gaussian_phase_mean(u)) < 0.004);  // ~4σ
    // and the closed form itself
    CHECK(std::abs(gaussian_phase_mean(0.0) - 1.0) < 1e-15);
    CHECK(std::abs(gaussian_phase_mean(1.0) - 1.0 / std::sqrt(cplx(1.0, 1.0))) < 1e-15);
}

TEST_CASE("fluctuation variable vanishes on a flat path") {
    const BrownianPath p = flat_path(-250, 50);
    CHECK(engine().compute_Y0(p) == cplx(0.0, 0.0));
    CHECK(engine().compute_Y_at(p, 0.3) == cplx(0.0, 0.0));
}

TEST_CASE("fluctuation variable needs backward coverage") {
    const BrownianPath p = flat_path(-100, 0);  // covers only [-1, 0], M = 2
    CHECK_THROWS_AS(engine().compute_Y0(p), std::domain_error);
}

TEST_CASE("per-sample fluctuation bound holds") {
    for (uint64_t task = 0; task < 30; ++task) {
        const BrownianPath p = sample_path(-2.0, 0.0, 0.01, 41, make_stream(53, task));
        const cplx y = engine().compute_Y0(p);
        CHECK(std::abs(y) <= engine().compute_Y0_bound(p) * (1.0 + 1e-12));
    }
}

TEST_CASE("fluctuation mean is zero within monte carlo error") {
    const MCEstimate y0 = engine().estimate_mean_Y0(20000, 13);
    CHECK(std::abs(y0.value.real()) < 3.5 * y0.se_re);
    CHECK(std::abs(y0.value.imag()) < 3.5 * y0.se_im);
}

TEST_CASE("fluctuation process is stationary in the base point") {
    // same seeds, different base times: distributions must match; compare
    // second moments at 3.5σ
    const int64_t n = 4000;
    std::vector<double> sq0(n), sq5(n);
    for (int64_t i = 0; i < n; ++i) {
        const BrownianPath p =
            sample_path(-2.0, 0.5, 0.01, 47, make_stream(54, uint64_t(i)));
        sq0[i] = std::norm(engine().compute_Y_at(p, 0.0));
        sq5[i] = std::norm(engine().compute_Y_at(p, 0.5));
    }
    double m0 = 0.0, m5 = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        m0 += sq0[i];
        m5 += sq5[i];
    }
    m0 /= double(n);
    m5 /= double(n);
    double v = 0.0;
    for (int64_t i = 0; i < n; ++i) v += (sq0[i] - m0) * (sq0[i] - m0);
    const double se = std::sqrt(v / double(n - 1) / double(n));
    CHECK(std::abs(m0 - m5) < 3.5 * std::numbers::sqrt2 * se);
    CHECK(m0 > 0.0);
}

TEST_CASE("covariance estimator sanity and scaling") {
    CHECK_THROWS_AS(engine().estimate_A(50, 1), std::invalid_argument);

    const CovMatrixA small = engine().estimate_A(2000, 19);
    const CovMatrixA large = engine().estimate_A(8000, 19);
    CHECK(small.a11 > 0.0);
    CHECK(small.a22 > 0.0);
    CHECK(small.n_samples == 2000);
    // fourfold samples halve the standard errors, within tolerance
    CHECK(small.se11 / large.se11 > 1.6);
    CHECK(small.se11 / large.se11 < 2.5);
    CHECK(small.se22 / large.se22 > 1.6);
    CHECK(small.se22 / large.se22 < 2.5);
    // the two runs estimate the same matrix
    CHECK(std::abs(small.a11 - large.a11) < 4.0 * std::hypot(small.se11, large.se11));
    CHECK(std::abs(small.a12 - large.a12) < 4.0 * std::hypot(small.se12, large.se12));
    CHECK(std::abs(small.a22 - large.a22) < 4.0 * std::hypot(small.se22, large.se22));
}

TEST_CASE("mean of the functional: monte carlo vs quadrature") {
    // long horizon branch (T ≥ M): closed form ε(T z₁ − c₀)
    const MCEstimate mc = engine().estimate_mean_X(1.0, 0.5, 4000, 23);
    const cplx quad = engine().mean_X_quadrature(1.0, 0.5);
    CHECK(std::abs(mc.value - quad) < 3.5 * mc.se_abs());
    const cplx closed =
        0.5 * (4.0 * engine().z1() - engine().c0());
    CHECK(std::abs(quad - closed) < 1e-12);

    // short horizon branch (T < M)
    const MCEstimate mc_short = engine().estimate_mean_X(1.0, 1.0, 4000, 23);
    const cplx quad_short = engine().mean_X_quadrature(1.0, 1.0);
    CHECK(std::abs(mc_short.value - quad_short) < 3.5 * mc_short.se_abs());
    const cplx direct = integrate_gk(
        [&](double tau) {
            return (1.0 - tau) * engine().covariance()(tau) /
                   std::sqrt(2.0 * std::numbers::pi * cplx(1.0, tau));
        },
        0.0, 1.0, 1e-12).value;
    CHECK(std::abs(quad_short - direct) < 1e-10);

    CHECK(engine().mean_X_quadrature(0.0, 0.5) == cplx(0.0, 0.0));
}

TEST_CASE("exponential moment estimator") {
    // λ = 0 short-circuits to exactly one
    const MCEstimate unit = engine().exp_moment_full(0.0, 1.0, 0.5, 500, 29);
    CHECK(unit.value == cplx(1.0, 0.0));
    CHECK(unit.se_re == 0.0);

    // batch equals the single-λ runs sample for sample
    const std::vector<MCEstimate> batch =
        engine().exp_moment_batch({1.0, -2.0}, 1.0, 0.5, 2000, 29);
    const MCEstimate lone = engine().exp_moment_full(1.0, 1.0, 0.5, 2000, 29);
    CHECK(batch[0].value.real() == lone.value.real());
    CHECK(batch[0].se_re == lone.se_re);
    CHECK(engine().exp_moment_estimate(-2.0, 1.0, 0.5, 2000, 29) ==
          batch[1].value.real());

    // centered moments are O(1): both tails stay near one at these scales
    CHECK(batch[0].value.real() > 0.5);
    CHECK(batch[0].value.real() < 2.0);
    CHECK(batch[1].value.real() > 0.5);
    CHECK(batch[1].value.real() < 2.0);
}

TEST_CASE("functional samples carry consistent fields") {
    const double t = 1.0, eps = 0.5;
    const std::vector<FunctionalSample> s =
        engine().sample_functionals(t, eps, 3000, 31, kStreamClt);
    REQUIRE(s.size() == 3000);
    const cplx x_mean = engine().mean_X_quadrature(t, eps);
    double b1 = 0.0, b2 = 0.0;
    for (const FunctionalSample& f : s) {
        CHECK(f.t == t);
        CHECK(f.eps == eps);
        CHECK(std::abs(f.X_centered - (f.X - x_mean)) < 1e-15);
        b1 += f.eps_B_T;
        b2 += f.eps_B_T * f.eps_B_T;
    }
    const double n = double(s.size());
    const double mean = b1 / n, var = b2 / n - mean * mean;
    // εB_{t/ε²} is N(0, t) up to grid snapping
    CHECK(std::abs(mean) < 4.0 * std::sqrt(t / n));
    CHECK(std::abs(var - t) < 4.0 * t * std::sqrt(2.0 / n));
}

TEST_CASE("functional sampling is reproducible across purposes") {
    const std::vector<FunctionalSample> a =
        engine().sample_functionals(0.5, 0.5, 100, 37, kStreamClt);
    const std::vector<FunctionalSample> b =
        engine().sample_functionals(0.5, 0.5, 100, 37, kStreamClt);
    const std::vector<FunctionalSample> c =
        engine().sample_functionals(0.5, 0.5, 100, 37, kStreamTheorem);
    CHECK(a[5].X == b[5].X);
    CHECK(a[5].eps_B_T == b[5].eps_B_T);
    CHECK(a[5].X != c[5].X);  // different purpose → different ensemble
}
