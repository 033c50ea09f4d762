#include "fhb/fft.hpp"

#include <numbers>
#include <stdexcept>

namespace fhb {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace {

void transform(std::vector<cplx>& a, double sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft size must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * std::numbers::pi / double(len);
        const std::size_t half = len >> 1;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cplx w = std::polar(1.0, ang * double(j));
                const cplx u = a[i + j];
                const cplx v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

}  // namespace

void fft_forward(std::vector<cplx>& a) { transform(a, -1.0); }

void fft_inverse(std::vector<cplx>& a) {
    transform(a, 1.0);
    const double inv = 1.0 / double(a.size());
    for (auto& v : a) v *= inv;
}

}  // namespace fhb
