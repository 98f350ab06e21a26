#include "schro/spde.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "schro/fft.hpp"
#include "schro/feynman_kac.hpp"
#include "schro/quadrature.hpp"
#include "schro/rng.hpp"

namespace schro {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double bump_shape(double x, double a) {
    const double r = a * a - x * x;
    return r > 0.0 ? std::exp(-a * a / r) : 0.0;
}

// spatial smoothing kernel, |ĝ(p)|² = e^{-p²/2}
double spatial_kernel(double y) {
    return std::exp(-y * y) / std::sqrt(std::numbers::pi);
}

double bump_l2_constant() {
    constexpr double a = 0.5;
    const double norm_sq = integrate_gk_real(
        [](double x) {
            const double s = bump_shape(x, a);
            return s * s;
        },
        -a, a, 1e-14);
    return 1.0 / std::sqrt(norm_sq);
}

std::size_t check_grid(const SpdeParams& p) {
    const std::size_t n = p.n_points;
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two");
    if (!(p.length > 0.0) || !(p.dt > 0.0) || !(p.eps > 0.0))
        throw std::invalid_argument("domain length, dt and eps must be positive");
    return n;
}

}  // namespace

double WaveField::l2_norm() const {
    double s = 0.0;
    for (const cplx& z : amplitudes) s += std::norm(z);
    return std::sqrt(s * dx());
}

WaveField initial_bump(const SpdeParams& p) {
    const std::size_t n = check_grid(p);
    const double c = bump_l2_constant();
    const double dx = p.length / double(n);
    WaveField field;
    field.length = p.length;
    field.time = 0.0;
    field.amplitudes.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        field.amplitudes[j] = c * bump_shape(double(j) * dx - 0.5 * p.length, 0.5);
    return field;
}

cplx initial_bump_hat(const SpdeParams& p, double xi) {
    constexpr double a = 0.5;
    const double c = bump_l2_constant();
    const double x0 = 0.5 * p.length;
    return integrate_gk(
               [&](double x) -> cplx {
                   const double ph = -xi * (x0 + x);
                   return c * bump_shape(x, a) * cplx(std::cos(ph), std::sin(ph));
               },
               -a, a, 1e-13)
        .value;
}

PotentialField synthesize_potential(const SpdeParams& p, const MollifierSpec& eta,
                                    uint64_t seed, uint64_t task) {
    const std::size_t n = check_grid(p);
    const double dx = p.length / double(n);
    const double eps2 = p.eps * p.eps;

    // the noise grid must resolve the correlation scales of the potential
    if (p.dt > eps2 * eta.half_width / 8.0 || dx > p.eps / 8.0) {
        std::ostringstream msg;
        msg << "under-resolved potential grid: need dt <= " << eps2 * eta.half_width / 8.0
            << " (got " << p.dt << ") and dx <= " << p.eps / 8.0 << " (got " << dx << ")";
        throw std::invalid_argument(msg.str());
    }

    if (p.t_final < 0.0) throw std::invalid_argument("final time must be nonnegative");
    const int64_t n_t = std::llround(p.t_final / p.dt);

    PotentialField pot;
    pot.n_slices = std::size_t(n_t);
    pot.n_points = n;
    pot.dt = p.dt;
    pot.dx = dx;
    pot.seed = seed;
    pot.task = task;
    if (n_t == 0) return pot;

    // noise slices reach one temporal support radius beyond [0, t_final]
    const int64_t ka = int64_t(std::ceil(eta.half_width * eps2 / p.dt - 1e-9));
    const int64_t m0 = -ka;
    const std::size_t n_noise = std::size_t(n_t - 1 + ka - m0 + 1);

    const uint64_t stream = make_stream(kStreamPde, task);
    const double sigma_cell = 1.0 / std::sqrt(p.dt * dx);

    // spectra of the white-noise slices
    std::vector<std::vector<cplx>> w_hat(n_noise);
    std::vector<double> cells(n);
    for (std::size_t s = 0; s < n_noise; ++s) {
        normal_fill(seed, stream, RngBranch::field, uint64_t(s) * n, n, cells.data());
        std::vector<cplx> slice(n);
        for (std::size_t j = 0; j < n; ++j) slice[j] = sigma_cell * cells[j];
        fft_inplace(slice);
        w_hat[s] = std::move(slice);
    }

    // spectrum of the periodized spatial kernel
    std::vector<cplx> g_hat(n);
    for (std::size_t l = 0; l < n; ++l) {
        double g = 0.0;
        for (int r = -1; r <= 1; ++r)
            g += spatial_kernel((double(l) * dx + double(r) * p.length) / p.eps);
        g_hat[l] = g;
    }
    fft_inplace(g_hat);

    // temporal weights dt·ε⁻³·η(d·dt/ε²) by slice offset d
    std::vector<double> eta_w(std::size_t(2 * ka + 1));
    const double eps3 = eps2 * p.eps;
    for (int64_t d = -ka; d <= ka; ++d)
        eta_w[std::size_t(d + ka)] = p.dt / eps3 * eta.eta(double(d) * p.dt / eps2);

    pot.v.resize(pot.n_slices * n);
    std::vector<cplx> acc(n);
    for (int64_t i = 0; i < n_t; ++i) {
        std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
        for (int64_t d = -ka; d <= ka; ++d) {
            const double c = eta_w[std::size_t(d + ka)];
            if (c == 0.0) continue;
            const auto& wh = w_hat[std::size_t(i - d - m0)];
            for (std::size_t k = 0; k < n; ++k) acc[k] += c * wh[k];
        }
        for (std::size_t k = 0; k < n; ++k) acc[k] *= g_hat[k] * dx;
        fft_inplace(acc, true);
        for (std::size_t j = 0; j < n; ++j) pot.v[std::size_t(i) * n + j] = acc[j].real();
    }
    return pot;
}

double potential_variance(const SpdeParams& p, const MollifierSpec& eta) {
    const double e = p.eps;
    const double r0 = integrate_gk_real(
        [&](double t) {
            const double v = eta.eta(t);
            return v * v;
        },
        -eta.half_width, eta.half_width, 1e-13);
    return r0 * kInvSqrt2Pi / (e * e * e);
}

WaveField split_step_evolve(WaveField field, const PotentialField& pot, double t_end) {
    const std::size_t n = field.n_points();
    if (n != pot.n_points) throw std::invalid_argument("state and potential grids differ");
    const int64_t i0 = std::llround(field.time / pot.dt);
    const int64_t i1 = std::llround(t_end / pot.dt);
    if (std::abs(double(i0) * pot.dt - field.time) > 1e-9 ||
        std::abs(double(i1) * pot.dt - t_end) > 1e-9)
        throw std::domain_error("evolution window must align with potential slices");
    if (i0 < 0 || i1 < i0 || std::size_t(i1) > pot.n_slices)
        throw std::domain_error("potential does not cover the evolution window");

    // free-step multipliers e^{-i ξ_k² dt/2}, signed modes
    std::vector<cplx> drift(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double k_signed = k < n / 2 ? double(k) : double(k) - double(n);
        const double xi = 2.0 * std::numbers::pi * k_signed / field.length;
        drift[k] = std::polar(1.0, -0.5 * xi * xi * pot.dt);
    }

    std::vector<cplx>& phi = field.amplitudes;
    for (int64_t i = i0; i < i1; ++i) {
        const double* v = &pot.v[std::size_t(i) * n];
        for (std::size_t j = 0; j < n; ++j)
            phi[j] *= std::polar(1.0, -0.5 * pot.dt * v[j]);
        fft_inplace(phi);
        for (std::size_t k = 0; k < n; ++k) phi[k] *= drift[k];
        fft_inplace(phi, true);
        for (std::size_t j = 0; j < n; ++j)
            phi[j] *= std::polar(1.0, -0.5 * pot.dt * v[j]);
    }
    field.time = double(i1) * pot.dt;
    return field;
}

cplx mode_amplitude(const WaveField& field, int k) {
    const std::size_t n = field.n_points();
    std::vector<cplx> terms(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ph = -2.0 * std::numbers::pi * double(k) * double(j) / double(n);
        terms[j] = field.amplitudes[j] * cplx(std::cos(ph), std::sin(ph));
    }
    return field.dx() * tree_sum(terms);
}

EnsembleResult ensemble_mean_fourier(const SpdeParams& p, const MollifierSpec& eta,
                                     const std::vector<double>& xi_probes,
                                     int64_t n_realizations, uint64_t seed) {
    check_grid(p);
    std::vector<int> modes(xi_probes.size());
    for (std::size_t q = 0; q < xi_probes.size(); ++q) {
        const double k_real = xi_probes[q] * p.length / (2.0 * std::numbers::pi);
        modes[q] = int(std::llround(k_real));
        if (std::abs(k_real - double(modes[q])) > 1e-9)
            throw std::invalid_argument("probes must be grid frequencies 2*pi*k/L");
    }

    const WaveField phi0 = initial_bump(p);
    const std::size_t n_modes = modes.size();
    std::vector<std::vector<cplx>> amp(n_modes, std::vector<cplx>(std::size_t(n_realizations)));
    parallel_for(std::size_t(n_realizations), [&](std::size_t r) {
        const PotentialField pot = synthesize_potential(p, eta, seed, r);
        const WaveField phi = split_step_evolve(phi0, pot, double(pot.n_slices) * pot.dt);
        for (std::size_t q = 0; q < n_modes; ++q) amp[q][r] = mode_amplitude(phi, modes[q]);
    });

    EnsembleResult out;
    out.xi_probes = xi_probes;
    out.phi_hat.reserve(n_modes);
    for (std::size_t q = 0; q < n_modes; ++q) out.phi_hat.push_back(reduce_samples(amp[q]));
    return out;
}

}  // namespace schro
