#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace ergolab {

// In-place iterative radix-2 transform; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

size_t next_pow2(size_t n);

}  // namespace ergolab
