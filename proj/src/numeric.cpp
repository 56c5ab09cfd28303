#include "ergolab/numeric.hpp"

namespace ergolab {

namespace {

double pairwise_rec(const double* p, size_t n) {
    constexpr size_t kLeaf = 4096;
    if (n <= kLeaf) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    size_t mid = n / 2;
    return pairwise_rec(p, mid) + pairwise_rec(p + mid, n - mid);
}

}  // namespace

double pairwise_sum(std::span<const double> v) {
    if (v.empty()) return 0.0;
    return pairwise_rec(v.data(), v.size());
}

}  // namespace ergolab
