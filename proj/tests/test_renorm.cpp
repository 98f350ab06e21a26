#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "schro/parallel.hpp"
#include "schro/quadrature.hpp"
#include "schro/renorm.hpp"
#include "schro/rng.hpp"

using namespace schro;

namespace {

TemporalCovariance default_R(double h = 1.0 / 256.0) {
    return TemporalCovariance::build(make_bump_eta(1.0), h);
}

}  // namespace

TEST_CASE("z1 against the frozen value and an independent quadrature") {
    const TemporalCovariance R = default_R();
    const cplx z1 = compute_z1(R);
    CHECK(z1.real() == doctest::Approx(0.18345463019870858).epsilon(1e-9));
    CHECK(z1.imag() == doctest::Approx(-0.035588527606556154).epsilon(1e-9));

    // simpson over the same table, with the explicit principal-branch kernel
    const cplx by_simpson = integrate_simpson(
        [&](double u) {
            return R(u) / std::sqrt(2.0 * std::numbers::pi * cplx(1.0, u));
        },
        0.0, R.support_radius(), 1e-12);
    CHECK(std::abs(z1 - by_simpson) < 1e-9);
}

TEST_CASE("z1 sign structure") {
    const cplx z1 = compute_z1(default_R());
    CHECK(z1.real() > 0.0);
    CHECK(z1.imag() < 0.0);
}

TEST_CASE("z1 is insensitive to the covariance grid") {
    const cplx coarse = compute_z1(default_R(1.0 / 256.0));
    const cplx fine = compute_z1(default_R(1.0 / 512.0));
    CHECK(std::abs(coarse - fine) <= 1e-8);
}

TEST_CASE("zero covariance gives zero constants") {
    const TemporalCovariance R = TemporalCovariance::build(MollifierSpec{1.0, 0.0, 512},
                                                           1.0 / 256.0);
    CHECK(compute_z1(R) == cplx(0.0, 0.0));
    CHECK(mean_growth_correction(R) == cplx(0.0, 0.0));
}

TEST_CASE("mean-growth correction constant") {
    const cplx c0 = mean_growth_correction(default_R());
    CHECK(c0.real() == doctest::Approx(0.078759535181035151).epsilon(1e-9));
    CHECK(c0.imag() == doctest::Approx(-0.022582881733892085).epsilon(1e-9));

    const cplx by_simpson = integrate_simpson(
        [&](double u) {
            const TemporalCovariance R = default_R();
            return u * R(u) / std::sqrt(2.0 * std::numbers::pi * cplx(1.0, u));
        },
        0.0, 2.0, 1e-12);
    CHECK(std::abs(c0 - by_simpson) < 1e-8);
}

TEST_CASE("cross-section identity at the default width") {
    const MollifierSpec eta = make_bump_eta(1.0);
    const double cs = cross_section(eta);
    const double two_re_z1 = 2.0 * compute_z1(default_R()).real();
    CHECK(cs > 0.0);
    CHECK(cs == doctest::Approx(two_re_z1).epsilon(1e-7));
}

TEST_CASE("z2 from simple covariance matrices") {
    CovMatrixA id;
    id.a11 = 1.0;
    id.a22 = 1.0;
    CHECK(compute_z2(id).value == cplx(0.0, 0.0));

    CovMatrixA stretched;
    stretched.a11 = 2.0;
    stretched.a22 = 1.0;
    CHECK(compute_z2(stretched).value == cplx(0.5, 0.0));

    CovMatrixA skew;
    skew.a12 = 0.25;
    CHECK(compute_z2(skew).value == cplx(0.0, 0.25));

    CovMatrixA noisy;
    noisy.se11 = 0.1;
    noisy.se22 = 0.2;
    noisy.se12 = 0.3;
    const ErrorBarred z2 = compute_z2(noisy);
    CHECK(z2.se_re == doctest::Approx(0.5 * std::hypot(0.1, 0.2)).epsilon(1e-14));
    CHECK(z2.se_im == doctest::Approx(0.3).epsilon(1e-14));
}

TEST_CASE("z2 error bars match a bootstrap") {
    // synthetic correlated complex samples with known-ish spread
    const int64_t n = 4000;
    std::vector<cplx> y(n);
    std::vector<double> raw(2 * n);
    normal_fill(99, 1, RngBranch::bm_pos, 0, raw.size(), raw.data());
    for (int64_t i = 0; i < n; ++i)
        y[i] = {0.02 * raw[2 * i], 0.01 * (0.6 * raw[2 * i] + 0.8 * raw[2 * i + 1])};

    const auto a_of = [](const std::vector<cplx>& v) {
        CovMatrixA a;
        a.n_samples = int64_t(v.size());
        std::vector<double> p11(v.size()), p12(v.size()), p22(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            p11[i] = v[i].real() * v[i].real();
            p12[i] = v[i].real() * v[i].imag();
            p22[i] = v[i].imag() * v[i].imag();
        }
        const double nn = double(v.size());
        a.a11 = tree_sum(p11.data(), p11.size()) / nn;
        a.a12 = tree_sum(p12.data(), p12.size()) / nn;
        a.a22 = tree_sum(p22.data(), p22.size()) / nn;
        const auto se = [&](std::vector<double>& p, double mean) {
            for (double& x : p) x = (x - mean) * (x - mean);
            return std::sqrt(tree_sum(p.data(), p.size()) / (nn - 1.0) / nn);
        };
        a.se11 = se(p11, a.a11);
        a.se12 = se(p12, a.a12);
        a.se22 = se(p22, a.a22);
        return a;
    };

    const ErrorBarred z2 = compute_z2(a_of(y));

    // bootstrap over resampled index sets
    const int b_rounds = 200;
    std::vector<double> re_b(b_rounds), im_b(b_rounds);
    for (int b = 0; b < b_rounds; ++b) {
        std::vector<cplx> resampled(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            const auto blk = Philox4x32::block({uint32_t(i), uint32_t(b), 0, 0}, {123, 7});
            resampled[i] = y[blk[0] % y.size()];
        }
        const cplx v = compute_z2(a_of(resampled)).value;
        re_b[b] = v.real();
        im_b[b] = v.imag();
    }
    const auto sd = [&](std::vector<double>& v) {
        const double m = tree_sum(v.data(), v.size()) / double(v.size());
        double acc = 0.0;
        for (double x : v) acc += (x - m) * (x - m);
        return std::sqrt(acc / double(v.size() - 1));
    };
    // propagated errors should match the bootstrap spread to a factor ~2
    const double sd_re = sd(re_b), sd_im = sd(im_b);
    CHECK(z2.se_re > 0.4 * sd_re);
    CHECK(z2.se_re < 2.5 * sd_re);
    CHECK(z2.se_im > 0.4 * sd_im);
    CHECK(z2.se_im < 2.5 * sd_im);
}

TEST_CASE("limit profile algebra") {
    const cplx z2{0.03, -0.01};
    const cplx phi{0.4, 0.2};
    const double xi = 1.3;

    CHECK(limit_profile(xi, 0.0, z2, phi) == phi);

    // semigroup in t
    const cplx p1 = limit_profile(xi, 0.7, z2, phi);
    const cplx p2 = limit_profile(xi, 1.4, z2, phi);
    CHECK(std::abs(p2 - p1 * p1 / phi) < 1e-14);

    // modulus is |phi|·e^{Re z2·t}
    CHECK(std::abs(p1) == doctest::Approx(std::abs(phi) * std::exp(0.03 * 0.7)).epsilon(1e-13));

    // at xi = 0 only the z2 factor remains
    CHECK(std::abs(limit_profile(0.0, 2.0, z2, phi) - phi * std::exp(z2 * 2.0)) < 1e-14);
}
