#include "schro/feynman_kac.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "schro/parallel.hpp"
#include "schro/quadrature.hpp"
#include "schro/renorm.hpp"

namespace schro {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // (2π)^{-1/2}
const cplx kISqrtI{-std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};  // i·√i

// Kahan–Neumaier compensated accumulator; complex sums in the banded X loop
// run over ~10⁶ terms of mixed sign, so plain summation would eat digits.
struct KahanC {
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    void add(double x, double y) {
        double t = re + x;
        cre += (std::abs(re) >= std::abs(x)) ? (re - t) + x : (x - t) + re;
        re = t;
        t = im + y;
        cim += (std::abs(im) >= std::abs(y)) ? (im - t) + y : (y - t) + im;
        im = t;
    }
    cplx total() const { return {re + cre, im + cim}; }
};

double node_weight(int64_t j, int64_t n_last) {
    return (j == 0 || j == n_last) ? 0.5 : 1.0;
}

inline void unit_phase(double phase, double& c, double& s) {
#if defined(__GLIBC__)
    ::sincos(phase, &s, &c);
#else
    c = std::cos(phase);
    s = std::sin(phase);
#endif
}

}  // namespace

cplx gaussian_phase_mean(double u) {
    return 1.0 / std::sqrt(cplx(1.0, u));
}

FeynmanKacEngine::FeynmanKacEngine(TemporalCovariance R, double delta)
    : R_(std::move(R)), delta_(delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("time step must be positive");
    const double M = R_.support_radius();
    if (delta > M / 4.0)
        throw std::invalid_argument("time step too coarse for the covariance support");
    n_lags_ = std::size_t(std::ceil(M / delta_ - 1e-12));
    lag_tab_ = R_.lag_table(delta_, 2 * n_lags_ + 1);

    z1_ = compute_z1(R_);
    c0_ = mean_growth_correction(R_);

    // per-node factors for the fluctuation functional: s_l = l·δ,
    // (2π)^{-1/2}(1+is)^{-3/2} and the split phase/decay rate 1/(2(1+s²))
    y_pref_.resize(n_lags_ + 1);
    y_alpha_.resize(n_lags_ + 1);
    for (std::size_t l = 0; l <= n_lags_; ++l) {
        const double s = double(l) * delta_;
        const cplx one_is(1.0, s);
        y_pref_[l] = kInvSqrt2Pi / (one_is * std::sqrt(one_is));
        y_alpha_[l] = 0.5 / (1.0 + s * s);
    }
}

int64_t FeynmanKacEngine::snap_steps(double T) const {
    if (!(T >= 0.0)) throw std::invalid_argument("time horizon must be nonnegative");
    return std::llround(T / delta_);
}

cplx FeynmanKacEngine::compute_X(const BrownianPath& path, double eps, double t) const {
    const int64_t n = snap_steps(t / (eps * eps));
    if (n == 0) return {0.0, 0.0};
    if (path.j_min > 0 || path.j_max < n)
        throw std::domain_error("path does not cover the functional horizon");

    // lag 0: q(0) on the diagonal, all weights squared
    const double wt_sq = double(n) - 0.5;
    KahanC acc;
    acc.add(lag_tab_[0] * wt_sq, 0.0);

    const double* b = path.values.data() - path.j_min;  // b[j] = B at node j
    const int64_t l_max = std::min<int64_t>(n, int64_t(n_lags_));
    for (int64_t lag = 1; lag <= l_max; ++lag) {
        const double r_val = lag_tab_[std::size_t(lag)];
        if (r_val == 0.0) continue;
        // boundary nodes carry weight 1/2; every interior cell has weight 1
        KahanC row;
        double c, s;
        if (lag == n) {
            const double d = b[n] - b[0];
            unit_phase(-0.5 * d * d, c, s);
            row.add(0.25 * c, 0.25 * s);
        } else {
            double d = b[lag] - b[0];
            unit_phase(-0.5 * d * d, c, s);
            row.add(0.5 * c, 0.5 * s);
            d = b[n] - b[n - lag];
            unit_phase(-0.5 * d * d, c, s);
            row.add(0.5 * c, 0.5 * s);
            for (int64_t j = lag + 1; j < n; ++j) {
                const double d2 = b[j] - b[j - lag];
                unit_phase(-0.5 * d2 * d2, c, s);
                row.add(c, s);
            }
        }
        const cplx rs = row.total();
        acc.add(2.0 * r_val * rs.real(), 2.0 * r_val * rs.imag());
    }
    return (0.5 * eps * delta_ * delta_ * kInvSqrt2Pi) * acc.total();
}

cplx FeynmanKacEngine::compute_X_naive(const BrownianPath& path, double eps, double t) const {
    const int64_t n = snap_steps(t / (eps * eps));
    if (n == 0) return {0.0, 0.0};
    if (path.j_min > 0 || path.j_max < n)
        throw std::domain_error("path does not cover the functional horizon");

    KahanC acc;
    for (int64_t j = 0; j <= n; ++j) {
        for (int64_t k = 0; k <= n; ++k) {
            const std::size_t lag = std::size_t(j >= k ? j - k : k - j);
            const double r_val = lag > 2 * n_lags_ ? 0.0 : lag_tab_[lag];
            if (r_val == 0.0) continue;
            const double d = path.at_index(j) - path.at_index(k);
            const double phase = -0.5 * d * d;
            const double w = node_weight(j, n) * node_weight(k, n) * r_val;
            acc.add(w * std::cos(phase), w * std::sin(phase));
        }
    }
    return (0.5 * eps * delta_ * delta_ * kInvSqrt2Pi) * acc.total();
}

double FeynmanKacEngine::deterministic_bound(double eps, double t) const {
    const int64_t n = snap_steps(t / (eps * eps));
    if (n == 0) return 0.0;
    double sum = std::abs(lag_tab_[0]) * (double(n) - 0.5);
    const int64_t l_max = std::min<int64_t>(n, int64_t(n_lags_));
    for (int64_t lag = 1; lag <= l_max; ++lag)
        sum += 2.0 * std::abs(lag_tab_[std::size_t(lag)]) * double(n + 1 - lag);
    return 0.5 * eps * delta_ * delta_ * kInvSqrt2Pi * sum;
}

MCEstimate FeynmanKacEngine::fk_wave_estimator(double xi, double t, double eps,
                                               int64_t n_paths, uint64_t seed) const {
    const int64_t n = snap_steps(t / (eps * eps));
    const std::size_t np = std::size_t(n_paths);
    std::vector<cplx> vals(np);
    parallel_for(np, [&](std::size_t i) {
        const BrownianPath path =
            sample_path(0.0, double(n) * delta_, delta_, seed, make_stream(kStreamFk, i));
        const cplx x = compute_X(path, eps, t);
        vals[i] = std::exp(kISqrtI * (xi * eps * path.at_index(n)) - x);
    });
    return reduce_samples(vals);
}

cplx FeynmanKacEngine::compute_Y0(const BrownianPath& path) const {
    return y_functional(path, 0);
}

cplx FeynmanKacEngine::compute_Y_at(const BrownianPath& path, double r) const {
    return y_functional(path, std::llround(r / delta_));
}

cplx FeynmanKacEngine::y_functional(const BrownianPath& path, int64_t base_node) const {
    const int64_t k_max = int64_t(n_lags_);
    if (path.j_min > base_node - k_max || path.j_max < base_node)
        throw std::domain_error("path does not cover the fluctuation window");

    const double b0 = path.at_index(base_node);
    KahanC acc;
    for (int64_t k = 0; k <= k_max; ++k) {
        const double d = b0 - path.at_index(base_node - k);
        const double wt_k = node_weight(k, k_max);
        KahanC col;
        // R((l+k)δ) vanishes once l+k steps pass the support radius, so the
        // l-range shrinks with k: the double sum is really over a triangle.
        for (int64_t l = 0; l + k <= k_max; ++l) {
            const double r_val = lag_tab_[std::size_t(l + k)];
            if (r_val == 0.0) continue;
            const double decay = y_alpha_[std::size_t(l)] * d * d;
            const cplx cell = (wt_k * node_weight(l, k_max) * r_val * d) * y_pref_[std::size_t(l)] *
                              std::exp(cplx(-decay * (double(l) * delta_), -decay));
            col.add(cell.real(), cell.imag());
        }
        const cplx s = col.total();
        acc.add(s.real(), s.imag());
    }
    // −i · δ² · Σ
    const cplx s = acc.total() * (delta_ * delta_);
    return {s.imag(), -s.real()};
}

double FeynmanKacEngine::compute_Y0_bound(const BrownianPath& path) const {
    const int64_t k_max = int64_t(n_lags_);
    if (path.j_min > -k_max || path.j_max < 0)
        throw std::domain_error("path does not cover the fluctuation window");
    double sum = 0.0;
    for (int64_t k = 0; k <= k_max; ++k) {
        const double d = std::abs(path.at_index(0) - path.at_index(-k));
        const double wt_k = node_weight(k, k_max);
        for (int64_t l = 0; l + k <= k_max; ++l) {
            const double r_val = lag_tab_[std::size_t(l + k)];
            if (r_val == 0.0) continue;
            sum += wt_k * node_weight(l, k_max) * std::abs(r_val) * d *
                   std::abs(y_pref_[std::size_t(l)]) *
                   std::exp(-y_alpha_[std::size_t(l)] * d * d * (double(l) * delta_));
        }
    }
    return sum * delta_ * delta_;
}

CovMatrixA FeynmanKacEngine::estimate_A(int64_t n_samples, uint64_t seed) const {
    if (n_samples < 100) throw std::invalid_argument("need at least 100 samples for A");
    const double window = double(n_lags_) * delta_;
    const std::size_t np = std::size_t(n_samples);
    std::vector<cplx> ys(np);
    parallel_for(np, [&](std::size_t i) {
        const BrownianPath path =
            sample_path(-window, 0.0, delta_, seed, make_stream(kStreamA, i));
        ys[i] = y_functional(path, 0);
    });

    const std::size_t n = ys.size();
    std::vector<double> m11(n), m12(n), m22(n);
    for (std::size_t i = 0; i < n; ++i) {
        m11[i] = ys[i].real() * ys[i].real();
        m12[i] = ys[i].real() * ys[i].imag();
        m22[i] = ys[i].imag() * ys[i].imag();
    }
    CovMatrixA a;
    a.n_samples = n_samples;
    a.a11 = tree_sum(m11.data(), n) / double(n);
    a.a12 = tree_sum(m12.data(), n) / double(n);
    a.a22 = tree_sum(m22.data(), n) / double(n);
    auto stderr_of = [&](std::vector<double>& m, double mean) {
        for (std::size_t i = 0; i < n; ++i) {
            const double d = m[i] - mean;
            m[i] = d * d;
        }
        return std::sqrt(tree_sum(m.data(), n) / double(n - 1) / double(n));
    };
    a.se11 = stderr_of(m11, a.a11);
    a.se12 = stderr_of(m12, a.a12);
    a.se22 = stderr_of(m22, a.a22);
    return a;
}

MCEstimate FeynmanKacEngine::estimate_mean_Y0(int64_t n_samples, uint64_t seed) const {
    const double window = double(n_lags_) * delta_;
    const std::size_t np = std::size_t(n_samples);
    std::vector<cplx> ys(np);
    parallel_for(np, [&](std::size_t i) {
        const BrownianPath path =
            sample_path(-window, 0.0, delta_, seed, make_stream(kStreamA, i));
        ys[i] = y_functional(path, 0);
    });
    return reduce_samples(ys);
}

MCEstimate FeynmanKacEngine::estimate_mean_X(double t, double eps, int64_t n_paths,
                                             uint64_t seed) const {
    const int64_t n = snap_steps(t / (eps * eps));
    const std::size_t np = std::size_t(n_paths);
    std::vector<cplx> xs(np);
    parallel_for(np, [&](std::size_t i) {
        const BrownianPath path =
            sample_path(0.0, double(n) * delta_, delta_, seed, make_stream(kStreamMeanX, i));
        xs[i] = compute_X(path, eps, t);
    });
    return reduce_samples(xs);
}

cplx FeynmanKacEngine::mean_X_quadrature(double t, double eps) const {
    const int64_t n = snap_steps(t / (eps * eps));
    if (n == 0) return {0.0, 0.0};
    const double T = double(n) * delta_;
    const double M = R_.support_radius();
    if (T >= M) return eps * (z1_ * T - c0_);
    // short horizon: E[X] = ε ∫₀^T (T−τ) R(τ) (2π(1+iτ))^{-1/2} dτ
    const auto h = [&](double tau) -> cplx {
        return (T - tau) * R_(tau) * kInvSqrt2Pi / std::sqrt(cplx(1.0, tau));
    };
    return eps * integrate_gk(h, 0.0, T, 1e-12).value;
}

double FeynmanKacEngine::exp_moment_estimate(double lambda, double t, double eps,
                                             int64_t n_paths, uint64_t seed) const {
    return exp_moment_full(lambda, t, eps, n_paths, seed).value.real();
}

MCEstimate FeynmanKacEngine::exp_moment_full(double lambda, double t, double eps,
                                             int64_t n_paths, uint64_t seed) const {
    return exp_moment_batch({lambda}, t, eps, n_paths, seed).front();
}

std::vector<MCEstimate> FeynmanKacEngine::exp_moment_batch(const std::vector<double>& lambdas,
                                                           double t, double eps,
                                                           int64_t n_paths,
                                                           uint64_t seed) const {
    std::vector<MCEstimate> out(lambdas.size());
    bool all_zero = true;
    for (double l : lambdas) all_zero = all_zero && l == 0.0;
    if (all_zero) {
        for (auto& e : out) e = {cplx(1.0, 0.0), 0.0, 0.0, n_paths};
        return out;
    }

    const int64_t n = snap_steps(t / (eps * eps));
    const double horizon = double(n) * delta_;

    // pilot pass pins the centering constant so the exponent stays O(1)
    std::vector<double> pilot(kExpMomentPilotPaths, 0.0);
    parallel_for(pilot.size(), [&](std::size_t i) {
        const BrownianPath path =
            sample_path(0.0, horizon, delta_, seed, make_stream(kStreamExpPilot, i));
        pilot[i] = compute_X(path, eps, t).real();
    });
    const double center = tree_sum(pilot.data(), pilot.size()) / double(pilot.size());

    std::vector<double> x_re(std::size_t(n_paths), 0.0);
    parallel_for(x_re.size(), [&](std::size_t i) {
        const BrownianPath path =
            sample_path(0.0, horizon, delta_, seed, make_stream(kStreamExpMain, i));
        x_re[i] = compute_X(path, eps, t).real() - center;
    });

    std::vector<cplx> vals(x_re.size());
    for (std::size_t q = 0; q < lambdas.size(); ++q) {
        if (lambdas[q] == 0.0) {
            out[q] = {cplx(1.0, 0.0), 0.0, 0.0, n_paths};
            continue;
        }
        for (std::size_t i = 0; i < vals.size(); ++i)
            vals[i] = std::exp(lambdas[q] * x_re[i]);
        out[q] = reduce_samples(vals);
    }
    return out;
}

std::vector<FunctionalSample> FeynmanKacEngine::sample_functionals(double t, double eps,
                                                                   int64_t n, uint64_t seed,
                                                                   uint16_t purpose) const {
    const int64_t n_steps = snap_steps(t / (eps * eps));
    const cplx x_mean = mean_X_quadrature(t, eps);
    const std::size_t np = std::size_t(n);
    std::vector<FunctionalSample> out(np);
    parallel_for(out.size(), [&](std::size_t i) {
        const BrownianPath path = sample_path(0.0, double(n_steps) * delta_, delta_, seed,
                                              make_stream(purpose, i));
        const cplx x = compute_X(path, eps, t);
        out[i] = FunctionalSample{eps * path.at_index(n_steps), x, x - x_mean, t, eps};
    });
    return out;
}

// ---------------------------------------------------------------------------
// Wick/Dyson series at ε = 1: deterministic small-time oracle.

namespace {

// one-pair term, numeric in both the time gap and the momentum transfer
cplx dyson_one_pair(const TemporalCovariance& R, double xi, double t) {
    const double tau_max = std::min(t, R.support_radius());
    if (tau_max <= 0.0) return {0.0, 0.0};
    const double p_lim = 9.0 + std::abs(xi);
    const auto outer = [&](double tau) -> cplx {
        const cplx inner = integrate_gk(
            [&](double p) -> cplx {
                const double dp = xi - p;
                const double phase = -0.5 * (xi * xi * (t - tau) + dp * dp * tau);
                return std::exp(-0.5 * p * p) * cplx(std::cos(phase), std::sin(phase));
            },
            -p_lim, p_lim, 1e-12).value;
        return (t - tau) * R(tau) * inner;
    };
    return -integrate_gk(outer, 0.0, tau_max, 1e-10).value / (2.0 * std::numbers::pi);
}

struct PairingTerm {
    double rr;        // product of covariance values
    double m1, m2;    // pair internal times
    double ov;        // overlap of the two pair intervals
};

// two-pair term over gap variables g = (g1,g2,g3), g ≥ 0, Σg ≤ t;
// the three pairings of four interaction times
cplx dyson_two_pairs(const TemporalCovariance& R, double xi, double t) {
    static const GaussLegendre rule(32);
    std::vector<double> x1, w1, x2, w2, x3, w3;
    const double xi2 = xi * xi;

    KahanC acc;
    rule.map_to(0.0, t, x1, w1);
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const double g1 = x1[i];
        rule.map_to(0.0, t - g1, x2, w2);
        for (std::size_t j = 0; j < x2.size(); ++j) {
            const double g2 = x2[j];
            rule.map_to(0.0, t - g1 - g2, x3, w3);
            for (std::size_t k = 0; k < x3.size(); ++k) {
                const double g3 = x3[k];
                const double vol = (t - g1 - g2 - g3) * w1[i] * w2[j] * w3[k];
                const PairingTerm terms[3] = {
                    {R(g1) * R(g3), g1, g3, 0.0},
                    {R(g1 + g2) * R(g2 + g3), g1 + g2, g2 + g3, g2},
                    {R(g1 + g2 + g3) * R(g2), g1 + g2 + g3, g2, g2},
                };
                cplx cell{0.0, 0.0};
                for (const auto& pt : terms) {
                    if (pt.rr == 0.0) continue;
                    const cplx im1(1.0, pt.m1), im2(1.0, pt.m2);
                    const cplx det = im1 * im2 + pt.ov * pt.ov;
                    // (I + iM)x = b with M = [[m1,ov],[ov,m2]], b = (m1,m2)
                    const cplx bx = pt.m1 * (im2 * pt.m1 - cplx(0.0, pt.ov) * pt.m2) / det +
                                    pt.m2 * (im1 * pt.m2 - cplx(0.0, pt.ov) * pt.m1) / det;
                    cell += pt.rr / std::sqrt(det) * std::exp(-0.5 * xi2 * bx);
                }
                cell *= vol;
                acc.add(cell.real(), cell.imag());
            }
        }
    }
    const cplx phase = std::exp(cplx(0.0, -0.5 * xi2 * t));
    return acc.total() * phase / (2.0 * std::numbers::pi);
}

}  // namespace

double FeynmanKacEngine::dyson_tail_bound(double xi, double t, int after_pairs) const {
    const double kappa =
        kInvSqrt2Pi * std::min(t * R_.l1_norm(), t * t * R_.at_zero());
    const double half = 0.5 * kappa;
    double lead = 1.0;  // (κ/2)^{m+1}/(m+1)!
    for (int j = 1; j <= after_pairs + 1; ++j) lead *= half / double(j);
    return std::exp(0.25 * xi * xi * t) * lead * std::exp(half);
}

cplx FeynmanKacEngine::dyson_truncated_mean(double xi, double t, int max_pairs,
                                            double tail_tol) const {
    if (max_pairs < 0 || max_pairs > 2)
        throw std::invalid_argument("series implemented through two pairs only");
    const double tail = dyson_tail_bound(xi, t, max_pairs);
    if (!(tail <= tail_tol))
        throw std::range_error("series tail bound exceeds tolerance; reduce the horizon");
    cplx sum = std::exp(cplx(0.0, -0.5 * xi * xi * t));
    if (max_pairs >= 1) sum += dyson_one_pair(R_, xi, t);
    if (max_pairs >= 2) sum += dyson_two_pairs(R_, xi, t);
    return sum;
}

}  // namespace schro
