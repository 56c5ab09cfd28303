#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ergolab/averages.hpp"
#include "ergolab/observable.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

/**
 * Haar sampler for the orbit closure Z' of {(a1 n alpha, a2 n alpha)} in
 * the 2-torus: the connected subgroup {(a1 t, a2 t) : t in [0,1)}, whose
 * annihilator is generated by (a2/d, -a1/d) with d = gcd(|a1|, |a2|).
 * Requires an irrational 1-torus Kronecker base; finite factors are
 * rejected, not approximated.
 */
class ZPrimeSampler {
public:
    ZPrimeSampler(int64_t a1, int64_t a2);

    std::pair<double, double> sample(Rng& rng) const;
    std::pair<int64_t, int64_t> annihilator() const { return {a2_ / d_, -a1_ / d_}; }
    int64_t a1() const { return a1_; }
    int64_t a2() const { return a2_; }

private:
    int64_t a1_, a2_, d_;
};

/**
 * Sampler for the 3-fold self-joining measure: x from the invariant
 * measure, (z1, z2) from Z', and xi_i from the fiber over pi(x) + z_i.
 * A trivial Kronecker factor collapses the joining to three independent
 * samples. Finite or higher-dimensional Kronecker groups are unsupported.
 */
class TildeMuSampler {
public:
    TildeMuSampler(SystemPtr base, int64_t a1, int64_t a2);

    struct Triple {
        State x, xi1, xi2;
    };
    Triple sample(Rng& rng) const;

    // (xi1, xi2) from nu_z for a fixed Kronecker point z
    std::pair<State, State> sample_nu(const KroneckerPoint& z, Rng& rng) const;

    const SystemPtr& base() const { return base_; }
    bool trivial_factor() const { return !zprime_.has_value(); }

private:
    SystemPtr base_;
    int64_t a1_, a2_;
    std::optional<ZPrimeSampler> zprime_;
};

struct DecayReport {
    int64_t n = 0;
    int64_t samples = 0;
    std::vector<int64_t> checkpoints;
    std::vector<double> mean_abs_at;   // mean over samples of |A_N| per checkpoint
    double mean_abs = 0.0;             // at the final checkpoint
    double mean_tail_oscillation = 0.0;
};

// Per mu~-sample fourfold averages
//   (1/N) sum_n f1(T^{a1 n} x) f2(T^{a2 n} x) f1(T^{a1 n} xi1) f2(T^{a2 n} xi2),
// reported through their mean absolute value and tail oscillation.
DecayReport corollary_experiment(const SystemPtr& base, const Observable& f1,
                                 const Observable& f2, int64_t a1, int64_t a2, int64_t n,
                                 int64_t samples, Rng& rng);

struct IdentityReport {
    double lhs = 0.0;            // orbit average at N
    double rhs = 0.0;            // Monte Carlo integral against nu_{pi x}
    double abs_diff = 0.0;
    double lhs_oscillation = 0.0;
    double rhs_std_error = 0.0;
    int64_t n = 0;
    int64_t mc = 0;

    bool within(double tol) const { return abs_diff < tol; }
};

// Checks the fully-generic identity at one starting point: the bilinear
// orbit average of g1 (x) g2 against the nu_{pi x} integral.
IdentityReport generic_point_check(const SystemPtr& base, const Observable& g1,
                                   const Observable& g2, int64_t a1, int64_t a2, const State& x,
                                   int64_t n, int64_t mc, Rng& rng);

}  // namespace ergolab
