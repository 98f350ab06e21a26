#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace schro {

using cplx = std::complex<double>;

struct QuadResult {
    cplx value{0.0, 0.0};
    double abs_err = 0.0;   // estimated
    int n_intervals = 0;
    bool converged = false;
};

// Adaptive Gauss–Kronrod (G7/K15) with interval bisection, absolute tolerance.
// Primary quadrature for all kernel-level integrals.
QuadResult integrate_gk(const std::function<cplx(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_intervals = 4096);

double integrate_gk_real(const std::function<double(double)>& f, double a, double b,
                         double abs_tol = 1e-10, int max_intervals = 4096);

// Independent oracle family: adaptive Simpson. Used only by tests to
// cross-check the Gauss–Kronrod results with a different method.
cplx integrate_simpson(const std::function<cplx(double)>& f, double a, double b,
                       double abs_tol = 1e-10, int max_depth = 40);

double integrate_simpson_real(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-10, int max_depth = 40);

// Gauss–Legendre rule on [-1,1], nodes/weights by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> x;  // nodes
    std::vector<double> w;  // weights
    explicit GaussLegendre(int n);
    // affine map of the rule onto [a,b]
    void map_to(double a, double b, std::vector<double>& xs, std::vector<double>& ws) const;
};

}  // namespace schro
