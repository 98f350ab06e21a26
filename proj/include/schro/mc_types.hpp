#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace schro {

using cplx = std::complex<double>;

struct MCEstimate {
    cplx value{0.0, 0.0};
    double se_re = 0.0, se_im = 0.0;  // componentwise stderr = sd/√n
    int64_t n_samples = 0;
    double se_abs() const { return std::hypot(se_re, se_im); }
};

// Raw second moments of (Re Y, Im Y) for the stationary fluctuation process,
// with componentwise standard errors.
struct CovMatrixA {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
    double se11 = 0.0, se12 = 0.0, se22 = 0.0;
    int64_t n_samples = 0;
};

// One Monte Carlo draw of the pair (ε·B_{t/ε²}, X_t^ε).
struct FunctionalSample {
    double eps_B_T = 0.0;
    cplx X{0.0, 0.0};
    cplx X_centered{0.0, 0.0};  // X minus the quadrature mean
    double t = 0.0, eps = 0.0;
};

}  // namespace schro
