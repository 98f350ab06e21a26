#pragma once

#include "schro/covariance.hpp"
#include "schro/mc_types.hpp"
#include "schro/mollifier.hpp"
#include "schro/quadrature.hpp"

namespace schro {

// z₁ = ∫₀^∞ R_η(u)·(2π(1+iu))^{-1/2} du, principal branch; the integrand
// vanishes beyond the support radius of R_η.
cplx compute_z1(const TemporalCovariance& R, double abs_tol = 1e-10);

// c₀ = ∫₀^∞ u·R_η(u)·(2π(1+iu))^{-1/2} du. For t/ε² ≥ support radius the
// mean of the Brownian functional is exactly z₁t/ε − ε·c₀, so this is the
// O(ε) correction used for exact centering and for the mean-growth fit.
cplx mean_growth_correction(const TemporalCovariance& R, double abs_tol = 1e-10);

// Total scattering cross-section at zero frequency:
// ∫ R̃(p²/2, p) dp / (2π), truncated where the Gaussian factor < 1e-16.
// Equals 2·Re z₁ — the identity is an acceptance check.
double cross_section(const MollifierSpec& spec, double abs_tol = 1e-10);

struct ErrorBarred {
    cplx value{0.0, 0.0};
    double se_re = 0.0, se_im = 0.0;
};

// z₂ = ½(A₁₁ − A₂₂) + i·A₁₂ with linear error propagation.
ErrorBarred compute_z2(const CovMatrixA& A);

// φ̂₀(ξ)·e^{-i|ξ|²t/2 + z₂t}
cplx limit_profile(double xi, double t, cplx z2, cplx phi0_hat);

struct RenormConstants {
    cplx z1{0.0, 0.0};
    ErrorBarred z2;
    CovMatrixA A;
    double quad_tol = 0.0;  // provenance: quadrature tolerance used for z1
};

}  // namespace schro
