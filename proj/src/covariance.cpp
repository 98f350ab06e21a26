#include "schro/covariance.hpp"

#include <cmath>
#include <stdexcept>

namespace schro {

TemporalCovariance TemporalCovariance::build(const MollifierSpec& eta, double grid_step) {
    const double a = eta.half_width;
    if (!(grid_step > 0.0) || grid_step > a / 16.0)
        throw std::invalid_argument("TemporalCovariance::build: grid_step must be in (0, half_width/16]");
    TemporalCovariance R;
    R.M_ = 2.0 * a;
    // round the step down so the grid lands exactly on the support edge
    const std::size_t n_cells = static_cast<std::size_t>(std::ceil(R.M_ / grid_step - 1e-12));
    R.h_ = R.M_ / double(n_cells);
    const std::size_t n = n_cells + 1;
    R.val_.resize(n);
    R.d1_.resize(n);
    R.d2_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::min(k * R.h_, R.M_);
        const double lo = -a, hi = a - t;  // overlap of supp η(·) and supp η(t+·)
        if (hi <= lo) {
            R.val_[k] = R.d1_[k] = R.d2_[k] = 0.0;
            continue;
        }
        R.val_[k] = integrate_gk_real([&](double s) { return eta.eta(t + s) * eta.eta(s); }, lo, hi, 1e-13);
        R.d1_[k] = integrate_gk_real([&](double s) { return eta.eta_d1(t + s) * eta.eta(s); }, lo, hi, 1e-13);
        R.d2_[k] = integrate_gk_real([&](double s) { return eta.eta_d2(t + s) * eta.eta(s); }, lo, hi, 1e-13);
    }
    // bump ⇒ R_η ≥ 0, so ∫|R_η| = ∫R_η; keep the abs for signed η extensions
    R.l1_ = 2.0 * integrate_gk_real([&R](double t) { return std::abs(R(t)); }, 0.0, R.M_, 1e-11);
    return R;
}

double TemporalCovariance::operator()(double t) const {
    double x = std::abs(t);
    if (x >= M_) return 0.0;
    const double u = x / h_;
    std::size_t k = static_cast<std::size_t>(u);
    if (k >= val_.size() - 1) k = val_.size() - 2;
    const double s = u - double(k);
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    // two-point quintic Hermite basis
    const double H0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    const double H1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    const double H2 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    const double H3 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    const double H4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    const double H5 = 0.5 * (s3 - 2.0 * s4 + s5);
    return H0 * val_[k] + H3 * val_[k + 1] +
           h_ * (H1 * d1_[k] + H4 * d1_[k + 1]) +
           h_ * h_ * (H2 * d2_[k] + H5 * d2_[k + 1]);
}

std::vector<double> TemporalCovariance::lag_table(double delta, std::size_t n, std::size_t first) const {
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = (*this)((first + j) * delta);
    return out;
}

}  // namespace schro
