#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ergolab {

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Irrational rotation defaults: badly approximable numbers equidistribute fastest.
// Stored as high-precision literals rounded once by the compiler.
namespace irrational {
inline constexpr double sqrt2_minus_1 = 0.41421356237309504880168872420969808;
inline constexpr double golden_frac = 0.61803398874989484820458683436563812;  // (sqrt(5)-1)/2
}  // namespace irrational

struct DoublePair {
    double hi, lo;
};

inline DoublePair two_sum(double a, double b) {
    double s = a + b;
    double bv = s - a;
    double err = (a - (s - bv)) + (b - bv);
    return {s, err};
}

// exact product: hi + lo == a * b
inline DoublePair two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

// Neumaier compensated accumulator; stored error stays O(eps * sum|x|)
// independent of cancellation in the running value.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }
    void reset() { sum_ = comp_ = 0.0; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// x reduced to [0, 1); normalizes -0 and the f == 1.0 rounding edge
inline double frac_unit(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    if (f < 0.0) f += 1.0;
    return f + 0.0;
}

// frac(k * alpha) via an exact two_prod split; k must be integer-valued
// (|k| <= 2^53). Avoids the linear drift of iterated addition: absolute
// error stays at a few eps out to k ~ 1e7 and beyond.
inline double mul_mod1(double k, double alpha) {
    DoublePair p = two_prod(k, alpha);
    double f = p.hi - std::floor(p.hi);  // exact (Sterbenz)
    return frac_unit(f + p.lo);
}

// Pairwise summation, sequential leaves of 4096: deterministic reduction
// tree with O(log n) error growth above the leaf size.
double pairwise_sum(std::span<const double> v);

namespace detail {
template <class F>
double pairwise_sum_fn_impl(size_t lo, size_t hi, F& term) {
    constexpr size_t kLeaf = 4096;
    if (hi - lo <= kLeaf) {
        double s = 0.0;
        for (size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum_fn_impl(lo, mid, term) + pairwise_sum_fn_impl(mid, hi, term);
}
}  // namespace detail

// pairwise sum of term(i) for i in [0, n); term evaluated exactly once per index
template <class F>
double pairwise_sum_fn(size_t n, F term) {
    if (n == 0) return 0.0;
    return detail::pairwise_sum_fn_impl(0, n, term);
}

inline int64_t gcd_i64(int64_t a, int64_t b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace ergolab
