#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ergolab/numeric.hpp"
#include "ergolab/observable.hpp"
#include "ergolab/system.hpp"
#include "ergolab/weight.hpp"

namespace ergolab {

/**
 * Running ergodic average (1/N) sum_{n=1}^{N} (...) captured at increasing
 * checkpoints. Convergence is only witnessed as Cauchy behaviour, so the
 * diagnostic is the oscillation of the checkpoint values over the tail
 * window [N_max/2, N_max].
 */
struct AverageProfile {
    std::vector<int64_t> checkpoints;
    std::vector<double> values;
    double bound = 1.0;             // advertised |A_N| bound
    double tail_oscillation = 0.0;  // sup - inf over checkpoints >= N_max/2

    double last() const { return values.back(); }
    bool converged(double tol = 0.02) const { return tail_oscillation < tol; }
};

// Geometric ramp plus a linear tail through [n_max/2, n_max].
std::vector<int64_t> default_checkpoints(int64_t n_max);

AverageProfile birkhoff_average(const System& sys, const Observable& f, const State& x,
                                std::vector<int64_t> checkpoints);

AverageProfile bilinear_average(const System& sys, const Observable& f1, const Observable& f2,
                                int64_t a1, int64_t a2, const State& x,
                                std::vector<int64_t> checkpoints);

AverageProfile weighted_average(const WeightSequence& c, const System& sys_y,
                                const Observable& g, const State& y,
                                std::vector<int64_t> checkpoints);

// Streaming profile of arbitrary summands; the building block above.
template <class Term>
AverageProfile profile_of(Term&& term, std::vector<int64_t> checkpoints, double bound);

struct VdcReport {
    double lhs = 0.0;    // || (1/N) sum u_n ||^2
    double rhs = 0.0;    // finitary windowed correlation bound
    int64_t h = 0;
    int64_t n = 0;
    double slack = 0.0;  // rhs - lhs, >= 0 up to rounding

    double max_norm_sq = 0.0;
};

// Finitary van der Corput inequality check; see docs/vdc_inequality.md for
// the exact constant and its proof. Throws InvariantError if the inequality
// fails beyond rounding (slack < -1e-9).
VdcReport vdc_check(const std::vector<std::vector<double>>& u, int64_t h);

// ---- implementation ----

template <class Term>
AverageProfile profile_of(Term&& term, std::vector<int64_t> checkpoints, double bound) {
    require_arg(!checkpoints.empty(), "checkpoints must be nonempty");
    for (size_t i = 0; i + 1 < checkpoints.size(); ++i)
        require_arg(checkpoints[i] < checkpoints[i + 1], "checkpoints must be strictly increasing");
    require_arg(checkpoints.front() >= 1, "checkpoints start at N >= 1");

    AverageProfile prof;
    prof.checkpoints = std::move(checkpoints);
    prof.values.reserve(prof.checkpoints.size());
    prof.bound = bound;

    CompensatedSum acc;
    size_t next = 0;
    int64_t n_max = prof.checkpoints.back();
    for (int64_t n = 1; n <= n_max; ++n) {
        acc.add(term(n));
        if (n == prof.checkpoints[next]) {
            double v = acc.value() / static_cast<double>(n);
            require_invariant(std::abs(v) <= bound * (1.0 + 1e-12) + 1e-12,
                              "partial average exceeds the declared sup bound");
            prof.values.push_back(v);
            ++next;
        }
    }

    double tail_lo = static_cast<double>(n_max) / 2.0;
    double mx = -1e300, mn = 1e300;
    for (size_t i = 0; i < prof.checkpoints.size(); ++i) {
        if (static_cast<double>(prof.checkpoints[i]) >= tail_lo) {
            mx = std::max(mx, prof.values[i]);
            mn = std::min(mn, prof.values[i]);
        }
    }
    prof.tail_oscillation = mx - mn;
    return prof;
}

}  // namespace ergolab
