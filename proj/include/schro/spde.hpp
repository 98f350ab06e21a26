#pragma once

#include <cstdint>
#include <vector>

#include "schro/mc_types.hpp"
#include "schro/mollifier.hpp"
#include "schro/parallel.hpp"

namespace schro {

// Periodic domain [0, L), n_points grid cells, split-step time step dt.
struct SpdeParams {
    double length = 16.0;
    std::size_t n_points = 1024;  // power of two
    double dt = 0.02;
    double eps = 1.0;
    double t_final = 0.5;
};

struct WaveField {
    double length = 0.0;
    std::vector<cplx> amplitudes;  // grid values at x_j = j·Δx
    double time = 0.0;

    std::size_t n_points() const { return amplitudes.size(); }
    double dx() const { return length / double(amplitudes.size()); }
    double l2_norm() const;  // √(Δx·Σ|φ|²)
};

// smooth compactly supported bump, width 1, centered at L/2, ‖φ₀‖₂ = 1
WaveField initial_bump(const SpdeParams& p);
// continuum transform ∫ φ₀(x) e^{-iξx} dx by quadrature (support inside one period)
cplx initial_bump_hat(const SpdeParams& p, double xi);

// Real potential sampled at slice midpoints (i+1/2)·dt, piecewise constant in
// time, with the diffusive-scaling amplitude already folded in.
struct PotentialField {
    std::size_t n_slices = 0, n_points = 0;
    double dt = 0.0, dx = 0.0;
    std::vector<double> v;  // slice-major
    uint64_t seed = 0, task = 0;
    double at(std::size_t slice, std::size_t j) const { return v[slice * n_points + j]; }
};

// Mollified spacetime white noise: iid N(0, 1/(dt·Δx)) cells convolved with
// ε⁻³·η((t-s)/ε²)·g((x-y)/ε), g the unit-width Gaussian π^{-1/2}e^{-y²}
// (periodically wrapped). FFT in space, direct sum in time over the compact
// η support. `task` indexes the realization inside the seed's stream space.
PotentialField synthesize_potential(const SpdeParams& p, const MollifierSpec& eta,
                                    uint64_t seed, uint64_t task);

// continuum Var V(t,x) = ε⁻³ R_η(0) (2π)^{-1/2}
double potential_variance(const SpdeParams& p, const MollifierSpec& eta);

// Strang split-step for i∂φ = -φ''/2 + Vφ from field.time to t_end:
// half potential kick, full Fourier drift, half kick, per dt slice.
WaveField split_step_evolve(WaveField field, const PotentialField& pot, double t_end);

// φ̂(ξ_k) = Δx·Σ_j φ(x_j) e^{-iξ_k x_j}, ξ_k = 2πk/L (any integer k)
cplx mode_amplitude(const WaveField& field, int k);

struct EnsembleResult {
    std::vector<double> xi_probes;
    std::vector<MCEstimate> phi_hat;  // E[φ̂(t_final, ξ)] per probe
};

// probes must be grid frequencies 2πk/L
EnsembleResult ensemble_mean_fourier(const SpdeParams& p, const MollifierSpec& eta,
                                     const std::vector<double>& xi_probes,
                                     int64_t n_realizations, uint64_t seed);

}  // namespace schro
