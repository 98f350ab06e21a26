#pragma once

#include <atomic>
#include <complex>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "schro/mc_types.hpp"

namespace schro {

// SCHRO_RENORM_THREADS if set, else hardware concurrency; never more than
// n_tasks, at least 1
unsigned worker_count(std::size_t n_tasks);

// Runs fn(i) for i in [0, n) across workers with atomic-counter dispatch.
// Callers write results into preallocated per-index slots, so the outcome is
// independent of scheduling; reductions happen afterwards in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Pairwise (tree) summation in fixed index order: bit-stable across worker
// counts and much better conditioned than a running sum.
double tree_sum(const double* v, std::size_t n);
std::complex<double> tree_sum(const std::complex<double>* v, std::size_t n);

template <class T>
T tree_sum(const std::vector<T>& v) {
    return tree_sum(v.data(), v.size());
}

// sample mean with componentwise standard errors, reduced in fixed index order
MCEstimate reduce_samples(const std::vector<std::complex<double>>& vals);

}  // namespace schro
