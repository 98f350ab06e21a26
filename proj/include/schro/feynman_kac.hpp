#pragma once

#include <cstdint>
#include <vector>

#include "schro/brownian.hpp"
#include "schro/covariance.hpp"
#include "schro/mc_types.hpp"

namespace schro {

// Stream purpose codes (top 16 bits of a stream id); distinct codes give
// statistically independent path ensembles under one seed.
enum StreamPurpose : uint16_t {
    kStreamFk = 1,        // fk_wave_estimator
    kStreamMeanX = 2,     // estimate_mean_X
    kStreamA = 3,         // estimate_A / Y moments
    kStreamClt = 4,       // CLT functional samples
    kStreamTheorem = 5,   // theorem-ladder functional samples (shared across ε)
    kStreamExpPilot = 6,  // exponential-moment pilot centering
    kStreamExpMain = 7,   // exponential-moment main run
    kStreamPde = 8,       // potential realizations
    kStreamFkLemma = 9,   // fk-vs-series comparison runs
};

// E[e^{-i|B_u|²/2}] = (1+iu)^{-1/2}, principal branch.
cplx gaussian_phase_mean(double u);

// Monte Carlo core for the complex Brownian functional
//   X_t^ε = (ε/2) ∬_{[0,t/ε²]²} R_η(s-u) q(√i(B_s-B_u)) ds du,
// the wave estimator E_B[e^{i√i ξ εB - X}], the stationary fluctuation
// process Y_r with covariance matrix A, and a truncated Wick/Dyson series
// oracle for small times at ε = 1.
class FeynmanKacEngine {
  public:
    FeynmanKacEngine(TemporalCovariance R, double delta);

    double delta() const { return delta_; }
    const TemporalCovariance& covariance() const { return R_; }
    cplx z1() const { return z1_; }
    cplx c0() const { return c0_; }

    // Band-limited node-centered Riemann sum; cost O((t/ε²)·M/δ²).
    cplx compute_X(const BrownianPath& path, double eps, double t) const;
    // Quadratic-cost reference; kept only as a test oracle.
    cplx compute_X_naive(const BrownianPath& path, double eps, double t) const;
    // |X| ≤ this for every sample (modulus bound + compact support).
    double deterministic_bound(double eps, double t) const;

    // E_B[exp(i√i·ξ·εB_{t/ε²} − X_t^ε)], direct averaging.
    MCEstimate fk_wave_estimator(double xi, double t, double eps, int64_t n_paths,
                                 uint64_t seed) const;

    // Σ_{n≤max_pairs} F_{2,n} at ε=1 by deterministic quadrature, plus a
    // crude series tail bound; throws range_error if the bound exceeds
    // tail_tol (advice: shrink t).
    cplx dyson_truncated_mean(double xi, double t, int max_pairs,
                              double tail_tol = 1e-3) const;
    double dyson_tail_bound(double xi, double t, int after_pairs) const;

    // Stationary fluctuation variable at base point r (path must cover
    // [r-M, r]); Y₀ is the r=0 case over a two-sided path.
    cplx compute_Y0(const BrownianPath& path) const;
    cplx compute_Y_at(const BrownianPath& path, double r) const;
    // triangle-inequality bound computed with the same Riemann sum
    double compute_Y0_bound(const BrownianPath& path) const;

    CovMatrixA estimate_A(int64_t n_samples, uint64_t seed) const;
    MCEstimate estimate_mean_Y0(int64_t n_samples, uint64_t seed) const;

    MCEstimate estimate_mean_X(double t, double eps, int64_t n_paths, uint64_t seed) const;

    // Quadrature value of E_B[X_t^ε] (exact in the continuum limit of the
    // time grid): ε(T·z₁ − c₀) for T = t/ε² ≥ M, the short-horizon integral
    // otherwise.
    cplx mean_X_quadrature(double t, double eps) const;

    // E_B[e^{λ·Re(X − E̅X)}] with E̅X from a 10⁴-path pilot run.
    double exp_moment_estimate(double lambda, double t, double eps, int64_t n_paths,
                               uint64_t seed) const;
    MCEstimate exp_moment_full(double lambda, double t, double eps, int64_t n_paths,
                               uint64_t seed) const;
    // same estimator for several λ over one shared sample set
    std::vector<MCEstimate> exp_moment_batch(const std::vector<double>& lambdas, double t,
                                             double eps, int64_t n_paths, uint64_t seed) const;

    // One (εB_T, X) draw per path; purpose selects the stream subspace so
    // callers control independence (same purpose+seed ⇒ common random
    // numbers across the ε ladder).
    std::vector<FunctionalSample> sample_functionals(double t, double eps, int64_t n,
                                                     uint64_t seed, uint16_t purpose) const;

  private:
    TemporalCovariance R_;
    double delta_;
    std::size_t n_lags_;             // lags 0..n_lags_, R(n_lags_·δ) at the support edge
    std::vector<double> lag_tab_;    // R(L·δ), L = 0..2·n_lags_ (doubled range for Y)
    std::vector<cplx> y_pref_;       // per-s-node (2π)^{-1/2}(1+is)^{-3/2}·weight
    std::vector<double> y_alpha_;    // per-s-node 1/(2(1+s²))
    cplx z1_{0.0, 0.0}, c0_{0.0, 0.0};

    int64_t snap_steps(double T) const;
    cplx y_functional(const BrownianPath& path, int64_t base_node) const;
};

inline constexpr int64_t kExpMomentPilotPaths = 10000;

}  // namespace schro
