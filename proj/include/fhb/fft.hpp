#pragma once
#include <cstddef>
#include <vector>

#include "fhb/common.hpp"

namespace fhb {

bool is_pow2(std::size_t n);

// In-place radix-2 transforms; size must be a power of two.
// fft_forward: X_n = sum_j x_j exp(-2 pi i n j / N), unnormalized.
// fft_inverse: conjugate kernel, divided by N.
void fft_forward(std::vector<cplx>& a);
void fft_inverse(std::vector<cplx>& a);

}  // namespace fhb
