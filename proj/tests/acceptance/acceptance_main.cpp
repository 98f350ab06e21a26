// Acceptance gate: one line per criterion, exit 0 iff every selected
// criterion passes. `--criterion N` runs a single one (used by ctest).

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "schro/brownian.hpp"
#include "schro/covariance.hpp"
#include "schro/experiments.hpp"
#include "schro/feynman_kac.hpp"
#include "schro/mollifier.hpp"
#include "schro/renorm.hpp"
#include "schro/spde.hpp"

namespace {

using namespace schro;

struct Verdict {
    bool pass = true;
    std::string detail;
};

void note(Verdict& v, bool ok, const std::string& what) {
    if (!ok) {
        v.pass = false;
        if (!v.detail.empty()) v.detail += "; ";
        v.detail += what;
    }
}

// all verdict rows whose label starts with `prefix` ("" = every verdict row)
Verdict from_rows(const std::vector<ResultRecord>& rows, const std::string& prefix) {
    Verdict v;
    int n_checked = 0;
    for (const auto& r : rows) {
        if (!r.pass.has_value()) continue;
        if (r.label.rfind(prefix, 0) != 0) continue;
        ++n_checked;
        std::string what = r.label;
        if (r.eps) what += " eps=" + std::to_string(*r.eps);
        if (r.xi) what += " xi=" + std::to_string(*r.xi);
        if (r.lambda) what += " lambda=" + std::to_string(*r.lambda);
        if (r.z) what += " z=" + std::to_string(*r.z);
        note(v, *r.pass, what);
    }
    note(v, n_checked > 0, "no rows matched " + (prefix.empty() ? "<any>" : prefix));
    if (v.pass) v.detail = std::to_string(n_checked) + " checks within tolerance";
    return v;
}

Verdict criterion_1(const Config&) {
    // dual-route identity: total cross-section vs 2·Re z1, three widths
    Verdict v;
    for (double w : {0.5, 1.0, 2.0}) {
        const MollifierSpec eta = make_bump_eta(w);
        const TemporalCovariance r_eta = TemporalCovariance::build(eta, w / 256.0);
        const double two_re = 2.0 * compute_z1(r_eta).real();
        const double rel = std::abs(two_re - cross_section(eta)) / two_re;
        note(v, rel < 1e-6, "width " + std::to_string(w) + " rel err " + std::to_string(rel));
    }
    if (v.pass) v.detail = "identity holds to 1e-6 at widths 0.5/1/2";
    return v;
}

Verdict criterion_2(const Config& cfg) {
    const MollifierSpec eta = make_bump_eta(cfg.get_double("mollifier.half_width", 1.0));
    const TemporalCovariance r_eta = TemporalCovariance::build(eta, 1.0 / 256.0);
    const cplx z1 = compute_z1(r_eta);
    Verdict v;
    note(v, z1.real() > 0.0, "Re z1 = " + std::to_string(z1.real()));
    if (v.pass) v.detail = "Re z1 = " + std::to_string(z1.real()) + " > 0";
    return v;
}

Verdict criterion_3(const Config& cfg) { return from_rows(run_lemma_fk(cfg), "pde_vs_fk"); }

Verdict criterion_4(const Config& cfg) { return from_rows(run_lemma_fk(cfg), "fk_vs_series"); }

Verdict criterion_5(const Config& cfg) { return from_rows(run_mean_growth(cfg), ""); }

Verdict criterion_6(const Config& cfg) { return from_rows(run_clt(cfg), ""); }

Verdict criterion_7(const Config& cfg) {
    return from_rows(run_uniform_integrability(cfg), "");
}

Verdict criterion_8(const Config& cfg) { return from_rows(run_theorem(cfg), ""); }

PotentialField cosine_potential(const SpdeParams& p, double t_final) {
    PotentialField f;
    f.n_slices = std::size_t(std::llround(t_final / p.dt));
    f.n_points = p.n_points;
    f.dt = p.dt;
    f.dx = p.length / double(p.n_points);
    f.seed = 0;
    f.task = 0;
    f.v.resize(f.n_slices * f.n_points);
    for (std::size_t m = 0; m < f.n_slices; ++m) {
        const double tm = (double(m) + 0.5) * p.dt;
        for (std::size_t j = 0; j < f.n_points; ++j) {
            const double x = double(j) * f.dx;
            f.v[m * f.n_points + j] =
                std::cos(2.0 * std::numbers::pi * x / p.length) * std::cos(tm);
        }
    }
    return f;
}

Verdict criterion_9(const Config& cfg) {
    Verdict v;

    // (a) self-convergence order on a smooth deterministic potential
    SpdeParams base{16.0, 1024, 0.02, 1.0, 0.4};
    const double t_end = base.t_final;
    const auto solve = [&](double dt) {
        SpdeParams p = base;
        p.dt = dt;
        const PotentialField pot = cosine_potential(p, t_end);
        return split_step_evolve(initial_bump(p), pot, t_end);
    };
    const WaveField ref = solve(base.dt / 16.0);
    double err[3];
    int k = 0;
    for (double dt : {base.dt, base.dt / 2.0, base.dt / 4.0}) {
        const WaveField sol = solve(dt);
        double acc = 0.0;
        for (std::size_t j = 0; j < sol.amplitudes.size(); ++j) {
            const double d = std::abs(sol.amplitudes[j] - ref.amplitudes[j]);
            acc += d * d;
        }
        err[k++] = std::sqrt(sol.dx() * acc);
    }
    const double order1 = std::log2(err[0] / err[1]);
    const double order2 = std::log2(err[1] / err[2]);
    note(v, order1 >= 1.9, "order(dt->dt/2) = " + std::to_string(order1));
    note(v, order2 >= 1.9, "order(dt/2->dt/4) = " + std::to_string(order2));

    // (b) mass conservation on random potentials, budget 1e-10 per unit time
    const MollifierSpec eta = make_bump_eta(cfg.get_double("mollifier.half_width", 1.0));
    SpdeParams p{16.0, 1024, 0.02, 1.0, 0.5};
    for (uint64_t task : {0ull, 1ull, 2ull}) {
        const PotentialField pot = synthesize_potential(p, eta, 1, task);
        const WaveField out = split_step_evolve(initial_bump(p), pot, p.t_final);
        const double drift = std::abs(out.l2_norm() - initial_bump(p).l2_norm());
        note(v, drift <= 1e-10 * std::max(1.0, p.t_final),
             "mass drift " + std::to_string(drift) + " at task " + std::to_string(task));
    }

    // (c) banded accumulation equals the naive double sum on tiny instances
    const TemporalCovariance r_eta = TemporalCovariance::build(eta, 1.0 / 256.0);
    const FeynmanKacEngine engine(r_eta, 0.01);
    for (double eps : {1.0, 0.5}) {
        const double t = 4.0 * eps * eps;  // T = 4 in macro units
        const BrownianPath path = sample_path(0.0, t / (eps * eps), 0.01, 7, 11);
        const cplx banded = engine.compute_X(path, eps, t);
        const cplx naive = engine.compute_X_naive(path, eps, t);
        note(v, std::abs(banded - naive) <= 1e-12,
             "banded vs naive diff " + std::to_string(std::abs(banded - naive)));
    }

    if (v.pass)
        v.detail = "orders " + std::to_string(order1) + "/" + std::to_string(order2) +
                   ", mass and band checks within budget";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
    }

    const Config cfg = default_config();
    Verdict (*criteria[])(const Config&) = {criterion_1, criterion_2, criterion_3,
                                            criterion_4, criterion_5, criterion_6,
                                            criterion_7, criterion_8, criterion_9};
    bool all_ok = true;
    for (int i = 1; i <= 9; ++i) {
        if (only != 0 && only != i) continue;
        Verdict v;
        try {
            v = criteria[i - 1](cfg);
        } catch (const std::exception& ex) {
            v.pass = false;
            v.detail = std::string("exception: ") + ex.what();
        }
        std::printf("criterion %d: %s — %s\n", i, v.pass ? "PASS" : "FAIL",
                    v.detail.c_str());
        all_ok = all_ok && v.pass;
    }
    return all_ok ? 0 : 1;
}
