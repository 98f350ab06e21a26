#include "schro/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schro {

void fft_inplace(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("transform size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    std::vector<cplx> tw(n / 2);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / double(len);
        // twiddles from polar() per stage: no multiplicative drift
        for (std::size_t j = 0; j < len / 2; ++j) tw[j] = std::polar(1.0, ang * double(j));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * tw[j];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

std::vector<cplx> fft(std::vector<cplx> a) {
    fft_inplace(a, false);
    return a;
}

std::vector<cplx> ifft(std::vector<cplx> a) {
    fft_inplace(a, true);
    return a;
}

}  // namespace schro
