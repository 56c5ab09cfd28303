#include "ergolab/averages.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/numeric.hpp"

namespace ergolab {

std::vector<int64_t> default_checkpoints(int64_t n_max) {
    require_arg(n_max >= 1, "n_max must be >= 1");
    std::vector<int64_t> cps;
    for (int64_t n = 10; n < n_max / 2; n *= 2) cps.push_back(n);
    for (int k = 10; k <= 20; ++k) {
        int64_t n = (n_max * k) / 20;
        if (n >= 1) cps.push_back(n);
    }
    cps.push_back(n_max);
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    while (!cps.empty() && cps.front() < 1) cps.erase(cps.begin());
    if (cps.empty() || cps.back() != n_max) cps.push_back(n_max);
    return cps;
}

AverageProfile birkhoff_average(const System& sys, const Observable& f, const State& x,
                                std::vector<int64_t> checkpoints) {
    return profile_of([&](int64_t n) { return f(sys.advance(x, n)); }, std::move(checkpoints),
                      f.sup_bound);
}

AverageProfile bilinear_average(const System& sys, const Observable& f1, const Observable& f2,
                                int64_t a1, int64_t a2, const State& x,
                                std::vector<int64_t> checkpoints) {
    require_arg(a1 != 0 && a2 != 0, "bilinear exponents must be non-zero");
    require_arg(a1 != a2, "bilinear exponents must be distinct");
    return profile_of(
        [&](int64_t n) { return f1(sys.advance(x, a1 * n)) * f2(sys.advance(x, a2 * n)); },
        std::move(checkpoints), f1.sup_bound * f2.sup_bound);
}

AverageProfile weighted_average(const WeightSequence& c, const System& sys_y,
                                const Observable& g, const State& y,
                                std::vector<int64_t> checkpoints) {
    require_arg(!checkpoints.empty(), "checkpoints must be nonempty");
    require_arg(c.size() >= checkpoints.back(), "weight sequence shorter than max checkpoint");
    return profile_of([&](int64_t n) { return c.at(n) * g(sys_y.advance(y, n)); },
                      std::move(checkpoints), c.bound() * g.sup_bound);
}

VdcReport vdc_check(const std::vector<std::vector<double>>& u, int64_t h) {
    const int64_t n = static_cast<int64_t>(u.size());
    require_arg(n >= 1, "vdc_check needs a nonempty sequence");
    require_arg(h >= 1 && h <= n, "vdc_check needs 1 <= H <= N");
    const size_t dim = u.front().size();
    for (const auto& v : u) require_arg(v.size() == dim, "vdc_check vectors must share a dimension");

    const double nd = static_cast<double>(n);
    const double hd = static_cast<double>(h);

    // lhs = || (1/N) sum u_n ||^2
    double lhs = 0.0;
    for (size_t d = 0; d < dim; ++d) {
        double s = pairwise_sum_fn(static_cast<size_t>(n),
                                   [&](size_t i) { return u[i][d]; }) / nd;
        lhs += s * s;
    }

    double max_norm_sq = 0.0;
    for (const auto& v : u) {
        double nsq = 0.0;
        for (double x : v) nsq += x * x;
        max_norm_sq = std::max(max_norm_sq, nsq);
    }

    // (1/N) sum_n <u_n, u_{n+k}> with the sum truncated to valid indices;
    // real inputs make the k and -k terms equal.
    auto corr = [&](int64_t k) {
        size_t count = static_cast<size_t>(n - k);
        return pairwise_sum_fn(count, [&](size_t i) {
                   double dot = 0.0;
                   for (size_t d = 0; d < dim; ++d) dot += u[i][d] * u[i + static_cast<size_t>(k)][d];
                   return dot;
               }) / nd;
    };

    double windowed = corr(0);  // k = 0 carries weight (1 - 0/H) = 1
    for (int64_t k = 1; k < h; ++k)
        windowed += 2.0 * (1.0 - static_cast<double>(k) / hd) * std::abs(corr(k));

    double rhs = (1.0 + hd / nd) * windowed / hd + 2.0 * hd / nd * max_norm_sq;

    VdcReport rep;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.h = h;
    rep.n = n;
    rep.slack = rhs - lhs;
    rep.max_norm_sq = max_norm_sq;
    require_invariant(rep.slack >= -1e-9, "van der Corput inequality violated beyond rounding");
    return rep;
}

}  // namespace ergolab
