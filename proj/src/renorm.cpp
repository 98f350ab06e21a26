#include "schro/renorm.hpp"

#include <cmath>

namespace schro {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * M_PI);

cplx kernel_weight(double u) {
    // (2π(1+iu))^{-1/2}, principal branch (Re(1+iu) = 1 > 0)
    return kInvSqrt2Pi / std::sqrt(cplx(1.0, u));
}

}  // namespace

cplx compute_z1(const TemporalCovariance& R, double abs_tol) {
    const double M = R.support_radius();
    auto f = [&R](double u) -> cplx { return R(u) * kernel_weight(u); };
    return integrate_gk(f, 0.0, M, abs_tol).value;
}

cplx mean_growth_correction(const TemporalCovariance& R, double abs_tol) {
    const double M = R.support_radius();
    auto f = [&R](double u) -> cplx { return u * R(u) * kernel_weight(u); };
    return integrate_gk(f, 0.0, M, abs_tol).value;
}

double cross_section(const MollifierSpec& spec, double abs_tol) {
    // e^{-p²/2} < 1e-16 for |p| > 8.6; |η̂|² ≤ 1 keeps the tail irrelevant
    const double p_max = std::sqrt(-2.0 * std::log(1e-16));
    auto f = [&spec](double p) { return eval_R_tilde(spec, 0.5 * p * p, p); };
    const double integral = integrate_gk_real(f, -p_max, 0.0, 0.5 * abs_tol) +
                            integrate_gk_real(f, 0.0, p_max, 0.5 * abs_tol);
    return integral / (2.0 * M_PI);
}

ErrorBarred compute_z2(const CovMatrixA& A) {
    ErrorBarred z2;
    z2.value = cplx(0.5 * (A.a11 - A.a22), A.a12);
    z2.se_re = 0.5 * std::hypot(A.se11, A.se22);
    z2.se_im = A.se12;
    return z2;
}

cplx limit_profile(double xi, double t, cplx z2, cplx phi0_hat) {
    return phi0_hat * std::exp(cplx(0.0, -0.5 * xi * xi * t) + z2 * t);
}

}  // namespace schro
