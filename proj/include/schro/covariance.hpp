#pragma once

#include <vector>

#include "schro/mollifier.hpp"

namespace schro {

// Tabulated autocorrelation R_η(t) = ∫ η(t+s)η(s) ds, supported on [-2a, 2a].
// Values, first and second derivatives are quadrature-exact at the nodes;
// evaluation between nodes is quintic Hermite (C², error O(h⁶)), so the
// table is safe inside Monte Carlo inner loops and quadrature oracles alike.
class TemporalCovariance {
  public:
    static TemporalCovariance build(const MollifierSpec& eta, double grid_step);

    double operator()(double t) const;  // exact 0 for |t| ≥ support_radius
    double support_radius() const { return M_; }
    double grid_step() const { return h_; }
    std::size_t n_nodes() const { return val_.size(); }
    double node_value(std::size_t k) const { return val_[k]; }

    // R((first+j)·delta) for j = 0..n-1; the Monte Carlo hot-path table.
    std::vector<double> lag_table(double delta, std::size_t n, std::size_t first = 0) const;

    // ∫_ℝ |R_η| and R_η(0), used by deterministic bounds.
    double l1_norm() const { return l1_; }
    double at_zero() const { return val_[0]; }

  private:
    double M_ = 0.0;  // support radius 2a
    double h_ = 0.0;
    std::vector<double> val_, d1_, d2_;
    double l1_ = 0.0;
};

}  // namespace schro
