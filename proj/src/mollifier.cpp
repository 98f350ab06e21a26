#include "schro/mollifier.hpp"

#include <cmath>
#include <stdexcept>

namespace schro {

double MollifierSpec::eta(double t) const {
    const double a = half_width;
    if (std::abs(t) >= a) return 0.0;
    return normalization * std::exp(-a * a / (a * a - t * t));
}

double MollifierSpec::eta_d1(double t) const {
    const double a = half_width;
    if (std::abs(t) >= a) return 0.0;
    const double d = a * a - t * t;
    const double g1 = -2.0 * a * a * t / (d * d);
    return eta(t) * g1;
}

double MollifierSpec::eta_d2(double t) const {
    const double a = half_width;
    if (std::abs(t) >= a) return 0.0;
    const double d = a * a - t * t;
    const double g1 = -2.0 * a * a * t / (d * d);
    const double g2 = -2.0 * a * a * (a * a + 3.0 * t * t) / (d * d * d);
    return eta(t) * (g1 * g1 + g2);
}

MollifierSpec make_bump_eta(double half_width, int eval_points) {
    if (!(half_width > 0.0)) throw std::invalid_argument("make_bump_eta: half_width must be > 0");
    MollifierSpec spec;
    spec.half_width = half_width;
    spec.eval_points = eval_points;
    const double a = half_width;
    auto raw = [a](double t) { return std::exp(-a * a / (a * a - t * t)); };
    // split at 0 so the adaptive rule sees the symmetric halves
    const double mass = integrate_gk_real(raw, -a, 0.0, 1e-13) + integrate_gk_real(raw, 0.0, a, 1e-13);
    spec.normalization = 1.0 / mass;
    return spec;
}

double SpatialKernel::q(double x) {
    static const double c = 1.0 / std::sqrt(2.0 * M_PI);
    return c * std::exp(-0.5 * x * x);
}

cplx SpatialKernel::q_rotated(double x) {
    static const double c = 1.0 / std::sqrt(2.0 * M_PI);
    const double phase = -0.5 * x * x;
    return {c * std::cos(phase), c * std::sin(phase)};
}

cplx eta_hat(const MollifierSpec& spec, double omega) {
    const double a = spec.half_width;
    auto f = [&spec, omega](double t) -> cplx {
        const double e = spec.eta(t);
        return {e * std::cos(omega * t), -e * std::sin(omega * t)};
    };
    return integrate_gk(f, -a, a, 1e-12).value;
}

double eval_R_tilde(const MollifierSpec& spec, double omega, double xi) {
    const double m = std::abs(eta_hat(spec, omega));
    return m * m * std::exp(-0.5 * xi * xi);
}

}  // namespace schro
