#pragma once

#include "schro/quadrature.hpp"

namespace schro {

// Normalized bump profile eta(t) = c·exp(-a²/(a²-t²)) on (-a, a), 0 outside,
// with c fixed so ∫eta = 1. Smooth, compactly supported, nonnegative.
struct MollifierSpec {
    double half_width = 1.0;     // a
    double normalization = 0.0;  // c
    int eval_points = 512;       // resolution hint for derived tabulations

    double eta(double t) const;
    double eta_d1(double t) const;  // η′
    double eta_d2(double t) const;  // η″
};

MollifierSpec make_bump_eta(double half_width, int eval_points = 512);

// Fixed spatial kernel q(x) = (2π)^{-1/2} e^{-x²/2} and its rotation
// q(√i·x) = (2π)^{-1/2} e^{-i x²/2} with √i = e^{iπ/4}.
struct SpatialKernel {
    static double q(double x);
    static cplx q_rotated(double x);
};

// η̂(ω) = ∫ η(t) e^{-iωt} dt over the support, by adaptive quadrature.
cplx eta_hat(const MollifierSpec& spec, double omega);

// R̃(ω, ξ) = |η̂(ω)|² e^{-ξ²/2}; spacetime spectrum of R = R_η·q.
double eval_R_tilde(const MollifierSpec& spec, double omega, double xi);

}  // namespace schro
