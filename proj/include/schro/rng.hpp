#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace schro {

// Philox4x32-10 counter-based block cipher (Salmon–Moraes–Dror–Shaw constants).
// One block = 128 random bits as four 32-bit words, a pure function of
// (counter, key); no state, so any block can be generated independently on
// any thread.
struct Philox4x32 {
    using ctr_t = std::array<uint32_t, 4>;
    using key_t = std::array<uint32_t, 2>;
    static ctr_t block(ctr_t ctr, key_t key);
};

// Disjoint counter subspaces for independent consumers of one stream.
enum class RngBranch : uint64_t {
    bm_pos = 0,   // Brownian increments, t > 0
    bm_neg = 1,   // Brownian increments, t < 0 (two-sided paths)
    field = 2,    // white-noise cells for potential synthesis
};

// N(0,1) draw fully determined by (seed, stream, branch, index).
// Box–Muller over one Philox block; indices 2m and 2m+1 share block m.
double normal_draw(uint64_t seed, uint64_t stream, RngBranch branch, uint64_t index);

// Fills out[0..n) with normals at indices first..first+n on one branch.
void normal_fill(uint64_t seed, uint64_t stream, RngBranch branch, uint64_t first,
                 std::size_t n, double* out);

// Stream id convention: top 16 bits name the purpose (experiment/estimator),
// low 48 bits index the task within it.
constexpr uint64_t make_stream(uint16_t purpose, uint64_t task) {
    return (uint64_t(purpose) << 48) | (task & 0xFFFFFFFFFFFFull);
}

}  // namespace schro
