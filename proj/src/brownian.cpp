#include "schro/brownian.hpp"

#include <cmath>
#include <stdexcept>

namespace schro {

double BrownianPath::at_time(double t) const {
    const double u = t / step;
    const int64_t j = llround(u);
    if (std::abs(u - double(j)) > 0.5 + 1e-9)
        throw std::invalid_argument("BrownianPath::at_time: off-grid time");
    if (j < j_min || j > j_max)
        throw std::out_of_range("BrownianPath::at_time: outside path domain");
    return at_index(j);
}

double BrownianPath::increment(double s, double u) const { return at_time(s) - at_time(u); }

BrownianPath sample_path(double t_min, double t_max, double step, uint64_t seed,
                         uint64_t stream_id, std::size_t memory_cap) {
    if (!(step > 0.0)) throw std::invalid_argument("sample_path: step must be > 0");
    if (!(t_min <= 0.0 && t_max >= 0.0))
        throw std::invalid_argument("sample_path: domain must contain 0");
    BrownianPath p;
    p.step = step;
    p.seed = seed;
    p.stream_id = stream_id;
    p.j_min = -llround(-t_min / step);
    p.j_max = llround(t_max / step);
    const std::size_t n_nodes = std::size_t(p.j_max - p.j_min) + 1;
    if (n_nodes > memory_cap) throw std::length_error("sample_path: path exceeds memory cap");
    p.values.resize(n_nodes);

    const double sd = std::sqrt(step);
    const std::size_t zero_at = std::size_t(-p.j_min);
    p.values[zero_at] = 0.0;

    const std::size_t n_pos = std::size_t(p.j_max);
    if (n_pos > 0) {
        std::vector<double> incr(n_pos);
        normal_fill(seed, stream_id, RngBranch::bm_pos, 0, n_pos, incr.data());
        double b = 0.0;
        for (std::size_t j = 0; j < n_pos; ++j) {
            b += sd * incr[j];
            p.values[zero_at + 1 + j] = b;
        }
    }
    const std::size_t n_neg = std::size_t(-p.j_min);
    if (n_neg > 0) {
        std::vector<double> incr(n_neg);
        normal_fill(seed, stream_id, RngBranch::bm_neg, 0, n_neg, incr.data());
        double b = 0.0;
        for (std::size_t j = 0; j < n_neg; ++j) {
            b += sd * incr[j];
            p.values[zero_at - 1 - j] = b;
        }
    }
    return p;
}

}  // namespace schro
