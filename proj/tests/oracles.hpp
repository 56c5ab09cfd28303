// Independent reference computations for the test suite. These deliberately
// take the slow literal route (exhaustive enumeration, naive loops,
// conditional expectations) so they share no code path with the estimators
// they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ergolab/numeric.hpp"
#include "ergolab/orbit.hpp"

namespace oracles {

// Kolmogorov-Smirnov distance between a sample and U[0, 1)
inline double ks_uniform(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - xs[i]));
        d = std::max(d, std::abs(xs[i] - static_cast<double>(i) / n));
    }
    return d;
}

// naive O(N H) prefix autocorrelation
inline std::vector<double> naive_autocorr(const std::vector<double>& v, int64_t h_max,
                                          int64_t n) {
    std::vector<double> gamma(static_cast<size_t>(h_max + 1), 0.0);
    for (int64_t h = 0; h <= h_max; ++h) {
        double s = 0.0;
        for (int64_t i = 0; i < n; ++i)
            s += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i + h)];
        gamma[static_cast<size_t>(h)] = s / static_cast<double>(n);
    }
    return gamma;
}

// Exhaustive U^l(T, c)^{2^l} on the cyclic system Z_q via conditional
// expectations: the base case projects onto the cosets of <gcd(c, q)>, the
// recursion averages shifted products over one full period.
inline double cyclic_u_pow(const std::vector<double>& f, int64_t q, int level, int64_t c) {
    if (level == 1) {
        int64_t cr = ((c % q) + q) % q;
        int64_t d = ergolab::gcd_i64(cr, q);  // gcd(0, q) = q: T^c = id, E = f
        std::vector<double> coset_mean(static_cast<size_t>(d), 0.0);
        std::vector<int64_t> coset_count(static_cast<size_t>(d), 0);
        for (int64_t j = 0; j < q; ++j) {
            coset_mean[static_cast<size_t>(j % d)] += f[static_cast<size_t>(j)];
            coset_count[static_cast<size_t>(j % d)] += 1;
        }
        for (int64_t r = 0; r < d; ++r)
            coset_mean[static_cast<size_t>(r)] /= static_cast<double>(coset_count[static_cast<size_t>(r)]);
        double out = 0.0;
        for (int64_t j = 0; j < q; ++j) {
            double e = coset_mean[static_cast<size_t>(j % d)];
            out += e * e;
        }
        return out / static_cast<double>(q);
    }
    double out = 0.0;
    for (int64_t h = 0; h < q; ++h) {
        std::vector<double> w(static_cast<size_t>(q));
        for (int64_t j = 0; j < q; ++j)
            w[static_cast<size_t>(j)] =
                f[static_cast<size_t>(j)] * f[static_cast<size_t>((j + h) % q)];
        out += cyclic_u_pow(w, q, level - 1, c);
    }
    return out / static_cast<double>(q);
}

inline double cyclic_seminorm(const std::vector<double>& f, int64_t q, int level, int64_t c) {
    double p = cyclic_u_pow(f, q, level, c);
    return p <= 0.0 ? 0.0 : std::pow(p, 1.0 / static_cast<double>(1 << level));
}

// Literal nested double Cesaro sum for the level-2 estimate: the same
// finite quantity the orbit backend aggregates, summed the slow way.
inline double brute_force_u2_pow4(const ergolab::Window& v, int64_t h1, int64_t h0, int64_t c,
                                  int64_t n) {
    double outer = 0.0;
    for (int64_t h = -h1; h <= h1; ++h) {
        if (h == 0) continue;
        double inner = 0.0;
        for (int64_t k = -h0; k <= h0; ++k) {
            if (k == 0) continue;
            double s = 0.0;
            for (int64_t m = 1; m <= n; ++m)
                s += v[m] * v[m + h] * v[m + c * k] * v[m + h + c * k];
            inner += s / static_cast<double>(n);
        }
        outer += inner / static_cast<double>(2 * h0);
    }
    return outer / static_cast<double>(2 * h1);
}

}  // namespace oracles
