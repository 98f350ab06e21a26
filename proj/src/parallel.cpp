#include "schro/parallel.hpp"

#include <cstdlib>
#include <mutex>

namespace schro {

unsigned worker_count(std::size_t n_tasks) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("SCHRO_RENORM_THREADS")) {
        const long want = std::strtol(env, nullptr, 10);
        if (want > 0) hw = unsigned(want);
    }
    if (n_tasks < hw) hw = unsigned(n_tasks);
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const unsigned k = worker_count(n);
    if (k == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

template <class T>
T tree_sum_impl(const T* v, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return tree_sum_impl(v, half) + tree_sum_impl(v + half, n - half);
}

}  // namespace

double tree_sum(const double* v, std::size_t n) { return tree_sum_impl(v, n); }

std::complex<double> tree_sum(const std::complex<double>* v, std::size_t n) {
    return tree_sum_impl(v, n);
}

MCEstimate reduce_samples(const std::vector<std::complex<double>>& vals) {
    MCEstimate est;
    est.n_samples = int64_t(vals.size());
    if (vals.empty()) return est;
    const std::size_t n = vals.size();
    est.value = tree_sum(vals) / double(n);
    if (n < 2) return est;
    std::vector<double> dev(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = vals[i].real() - est.value.real();
        dev[i] = d * d;
    }
    const double v_re = tree_sum(dev.data(), n) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = vals[i].imag() - est.value.imag();
        dev[i] = d * d;
    }
    const double v_im = tree_sum(dev.data(), n) / double(n - 1);
    est.se_re = std::sqrt(v_re / double(n));
    est.se_im = std::sqrt(v_im / double(n));
    return est;
}

}  // namespace schro
