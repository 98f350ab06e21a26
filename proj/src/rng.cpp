#include "schro/rng.hpp"

#include <cmath>

namespace schro {

namespace {

constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;

inline Philox4x32::ctr_t round_once(const Philox4x32::ctr_t& c, uint32_t k0, uint32_t k1) {
    const uint64_t p0 = uint64_t(kMul0) * c[0];
    const uint64_t p1 = uint64_t(kMul1) * c[2];
    return {uint32_t(p1 >> 32) ^ c[1] ^ k0, uint32_t(p1),
            uint32_t(p0 >> 32) ^ c[3] ^ k1, uint32_t(p0)};
}

}  // namespace

Philox4x32::ctr_t Philox4x32::block(ctr_t ctr, key_t key) {
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        ctr = round_once(ctr, key[0], key[1]);
    }
    return ctr;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double k2m53 = 1.0 / 9007199254740992.0;  // 2^-53

struct NormalPair {
    double n0, n1;
};

inline NormalPair normal_pair(uint64_t seed, uint64_t stream, RngBranch branch,
                              uint64_t block_index) {
    const uint64_t idx = (uint64_t(branch) << 61) | block_index;
    const Philox4x32::ctr_t ctr = {uint32_t(idx), uint32_t(idx >> 32),
                                   uint32_t(stream), uint32_t(stream >> 32)};
    const Philox4x32::key_t key = {uint32_t(seed), uint32_t(seed >> 32)};
    const auto b = Philox4x32::block(ctr, key);
    const uint64_t w0 = (uint64_t(b[0]) << 32) | b[1];
    const uint64_t w1 = (uint64_t(b[2]) << 32) | b[3];
    const double u1 = (double((w0 >> 11)) + 1.0) * k2m53;  // (0, 1]
    const double u2 = double(w1 >> 11) * k2m53;            // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

}  // namespace

double normal_draw(uint64_t seed, uint64_t stream, RngBranch branch, uint64_t index) {
    const NormalPair p = normal_pair(seed, stream, branch, index >> 1);
    return (index & 1) ? p.n1 : p.n0;
}

void normal_fill(uint64_t seed, uint64_t stream, RngBranch branch, uint64_t first,
                 std::size_t n, double* out) {
    std::size_t i = 0;
    if ((first & 1) && n > 0) {
        out[i++] = normal_draw(seed, stream, branch, first);
    }
    while (n - i >= 2) {
        const NormalPair p = normal_pair(seed, stream, branch, (first + i) >> 1);
        out[i] = p.n0;
        out[i + 1] = p.n1;
        i += 2;
    }
    if (i < n) out[i] = normal_draw(seed, stream, branch, first + i);
}

}  // namespace schro
