#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ergolab {

/**
 * gamma(h) = (1/prefix_n) sum_{n=1}^{prefix_n} v_n v_{n+h} for h = 0..h_max
 * (values are 0-indexed storage for the 1-based sequence). Dispatches to a
 * fast convolution once prefix_n * h_max crosses a threshold; the two paths
 * agree to 1e-10.
 */
std::vector<double> autocorrelation_sweep(std::span<const double> values, int64_t h_max,
                                          int64_t prefix_n);

// both paths exposed for cross-checking
std::vector<double> autocorrelation_sweep_naive(std::span<const double> values, int64_t h_max,
                                                int64_t prefix_n);
std::vector<double> autocorrelation_sweep_fft(std::span<const double> values, int64_t h_max,
                                              int64_t prefix_n);

}  // namespace ergolab
