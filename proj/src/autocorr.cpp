#include "ergolab/autocorr.hpp"

#include <complex>

#include "ergolab/errors.hpp"
#include "ergolab/fft.hpp"
#include "ergolab/numeric.hpp"

namespace ergolab {

namespace {

constexpr int64_t kFftThreshold = 1 << 22;  // prefix_n * h_max work units

void validate(std::span<const double> values, int64_t h_max, int64_t prefix_n) {
    require_arg(prefix_n >= 1, "autocorrelation prefix must be >= 1");
    require_arg(h_max >= 0, "autocorrelation window must be >= 0");
    require_arg(prefix_n + h_max <= static_cast<int64_t>(values.size()),
                "autocorrelation window overruns the value buffer");
}

}  // namespace

std::vector<double> autocorrelation_sweep_naive(std::span<const double> values, int64_t h_max,
                                                int64_t prefix_n) {
    validate(values, h_max, prefix_n);
    std::vector<double> gamma(static_cast<size_t>(h_max + 1));
    const double* v = values.data();
    const size_t n = static_cast<size_t>(prefix_n);
    for (int64_t h = 0; h <= h_max; ++h) {
        const double* w = v + h;
        gamma[static_cast<size_t>(h)] =
            pairwise_sum_fn(n, [&](size_t i) { return v[i] * w[i]; }) / static_cast<double>(prefix_n);
    }
    return gamma;
}

std::vector<double> autocorrelation_sweep_fft(std::span<const double> values, int64_t h_max,
                                              int64_t prefix_n) {
    validate(values, h_max, prefix_n);
    const size_t n = static_cast<size_t>(prefix_n);
    const size_t m = n + static_cast<size_t>(h_max);  // b covers v_1..v_{N+H}
    const size_t len = next_pow2(m + 1);

    std::vector<std::complex<double>> a(len), b(len);
    for (size_t i = 0; i < n; ++i) a[i] = values[i];
    for (size_t i = 0; i < m; ++i) b[i] = values[i];
    fft_inplace(a, false);
    fft_inplace(b, false);
    for (size_t i = 0; i < len; ++i) a[i] = std::conj(a[i]) * b[i];
    fft_inplace(a, true);

    std::vector<double> gamma(static_cast<size_t>(h_max + 1));
    for (int64_t h = 0; h <= h_max; ++h)
        gamma[static_cast<size_t>(h)] = a[static_cast<size_t>(h)].real() / static_cast<double>(prefix_n);
    return gamma;
}

std::vector<double> autocorrelation_sweep(std::span<const double> values, int64_t h_max,
                                          int64_t prefix_n) {
    validate(values, h_max, prefix_n);
    if (prefix_n * (h_max + 1) <= kFftThreshold)
        return autocorrelation_sweep_naive(values, h_max, prefix_n);
    return autocorrelation_sweep_fft(values, h_max, prefix_n);
}

}  // namespace ergolab
