#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

enum class SeminormBackend { orbit, monte_carlo };

/**
 * Truncation parameters for the uniformity seminorm U^l(T, c).
 *
 * h_schedule has one entry per level: h_schedule[0] is the window of the
 * U^1 correlation form, h_schedule[k] the symmetric h-window of the
 * level-(k+1) average. n is the orbit prefix length (orbit backend) or the
 * per-sample Birkhoff length (monte_carlo backend); m the Monte Carlo
 * sample count.
 */
struct SeminormParams {
    int level = 2;
    int64_t c = 1;
    std::vector<int64_t> h_schedule;
    int64_t n = 100'000;
    int64_t m = 200;
    SeminormBackend backend = SeminormBackend::orbit;
    int batches = 8;

    static SeminormParams defaults(int level, int64_t c = 1,
                                   SeminormBackend backend = SeminormBackend::orbit);
    void validate() const;
    // rough operation count, used by the CLI cost caps
    double work_estimate() const;
};

struct SeminormEstimate {
    double value = 0.0;      // clamped nonnegative 2^l-th root
    double std_error = 0.0;  // uncertainty on value, interval-propagated from raw_error
    double raw = 0.0;        // estimate of value^{2^l} before clamping
    double raw_error = 0.0;  // batch stderr plus observed truncation spread
    bool clamped = false;
    std::string backend_used;  // "orbit", "monte_carlo" or "exact"
    int level = 1;
    int64_t c = 1;
    SeminormParams params;
};

/**
 * Estimates ||f||_{U^level(T, c)}.
 *
 * Backends: `orbit` averages correlations along a single sampled orbit and
 * requires declared ergodicity; on finite systems with enumerable atoms it
 * switches to exact full-period averaging. `monte_carlo` averages squared
 * Birkhoff averages along T^c-orbits of sampled points and works on the
 * declared non-ergodic unions as well.
 */
SeminormEstimate seminorm(const System& sys, const Observable& f, const SeminormParams& params,
                          Rng& rng);

// monte_carlo backend with a caller-supplied initial-state sampler
SeminormEstimate seminorm_with_sampler(const System& sys, const Observable& f,
                                       const SeminormParams& params, Rng& rng,
                                       const std::function<State(Rng&)>& sampler);

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_error = 0.0;
    double rhs_error = 0.0;
    double ratio = 0.0;  // lhs / rhs; +inf when rhs underflows to 0
    double slack = 0.0;  // rhs + 3 * combined error - lhs
    bool holds = true;
    std::string detail;
};

struct MultilinearCheckParams {
    int64_t n = 100'000;  // average length for the L2 side
    int64_t m = 64;       // Monte Carlo samples for the L2 norm
    SeminormParams rhs_seminorm = SeminormParams::defaults(1);
    double rhs_tol = 0.02;  // "RHS vanishes" threshold
    double lhs_tol = 0.05;  // required LHS bound when RHS vanishes
    std::optional<size_t> i_prime;  // index i' for c = a_i - a_{i'} (k > 1)
};

// lhs = ||(1/N) sum_n prod_j T^{a_j n} f_j||_{L2} versus rhs = ||f_i||_{U^k(T,c)}
// with c = a_i (k = 1) or c = a_i - a_{i'}. The implicit constant is not
// quantified, so the report carries the ratio; `holds` asserts only the
// vanishing direction (rhs <= rhs_tol forces lhs <= lhs_tol).
InequalityReport check_multilinear_estimate(const SystemPtr& sys,
                                            const std::vector<Observable>& fs,
                                            const std::vector<int64_t>& as, size_t i,
                                            const MultilinearCheckParams& params, Rng& rng);

struct ProductIneqParams {
    SeminormParams lhs_seminorm = SeminormParams::defaults(1, 1, SeminormBackend::monte_carlo);
    SeminormParams rhs_seminorm = SeminormParams::defaults(2);
};

// ||f (x) g||_{U^l(T^a x S^b, c)} <= |ab|^{1/4} |c|^{1/2^l} ||f||_{U^{l+1}(T)} ||g||_{U^{l+1}(S)},
// asserted with 3x the combined standard error of slack.
InequalityReport check_product_inequality(const SystemPtr& sys_x, const Observable& f,
                                          const SystemPtr& sys_y, const Observable& g, int64_t a,
                                          int64_t b, int64_t c, int level,
                                          const ProductIneqParams& params, Rng& rng);

}  // namespace ergolab
