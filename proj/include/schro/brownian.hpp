#pragma once

#include <cstdint>
#include <vector>

#include "schro/rng.hpp"

namespace schro {

// Discretized standard Brownian path on the uniform grid {j·step}, possibly
// two-sided; B(0) = 0 exactly. Fully determined by (seed, stream_id, step,
// t_min, t_max): increments come from the counter-based generator, the
// negative-time branch from an independent counter subspace.
struct BrownianPath {
    double step = 0.0;
    int64_t j_min = 0, j_max = 0;  // node j holds B(j·step)
    std::vector<double> values;
    uint64_t seed = 0, stream_id = 0;

    double t_min() const { return double(j_min) * step; }
    double t_max() const { return double(j_max) * step; }
    double at_index(int64_t j) const { return values[std::size_t(j - j_min)]; }
    // nearest-node snapping, tolerance step/2
    double at_time(double t) const;
    double increment(double s, double u) const;  // B_s − B_u
};

inline constexpr std::size_t kDefaultPathCap = std::size_t(1) << 26;

BrownianPath sample_path(double t_min, double t_max, double step, uint64_t seed,
                         uint64_t stream_id, std::size_t memory_cap = kDefaultPathCap);

}  // namespace schro
