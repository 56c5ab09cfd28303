#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ergolab/weight.hpp"

namespace ergolab {

/**
 * S_{delta,L,R} membership over h in [1, horizon], intersected over the
 * table's prefix grid within [L, R], together with the finite lower-density
 * proxy: the minimum of |S cap [1, M]| / M over M in the tail half of the
 * horizon. The true liminf is not finitely observable; the tail minimum is
 * the conservative stand-in.
 */
struct SSetDensity {
    std::vector<uint8_t> member;  // member[h-1] for h in [1, horizon]
    double density = 0.0;
    std::vector<int64_t> n_used;  // prefix lengths actually intersected
};

SSetDensity s_set_density(const CorrelationTable& table, double delta, int64_t big_l,
                          int64_t big_r, int64_t horizon);

// Piecewise-linear cutoff with 1_{[-d/2,d/2]} <= eta <= 1_{[-d,d]}; the
// sandwich is all that matters numerically, smoothness is not used.
double eta_cutoff(double t, double delta);

// prod over N in n_list (within [L, R]) of eta_delta((1/N) sum_{n<=N} cx_n cxi_n);
// evaluated on a configured N-subgrid, the full integer product being
// numerically degenerate.
double f_xlr(const WeightSequence& cx, const WeightSequence& cxi, int64_t big_l, int64_t big_r,
             double delta, const std::vector<int64_t>& n_list);

struct BfkoParams {
    std::vector<double> delta_grid = {0.4, 0.2, 0.1, 0.05};
    std::vector<std::pair<int64_t, int64_t>> schedule;  // (L, R) pairs; default derived
    int64_t horizon = 10'000;
    double tol = 0.05;  // verdict threshold 1 - tol
};

// Default exploration grid: L in {max(100, N/100), max(1000, N/10)} and
// R in {L, 10L, 100L} capped by the available prefix length.
std::vector<std::pair<int64_t, int64_t>> default_lr_schedule(int64_t n_max);

struct CriterionEntry {
    double delta;
    int64_t big_l, big_r;
    double density;
};

struct CriterionReport {
    std::vector<double> delta_grid;
    std::vector<std::pair<int64_t, int64_t>> schedule;
    std::vector<CriterionEntry> densities;
    int64_t horizon = 0;
    double tol = 0.05;
    double criterion_value = 0.0;  // inf over delta of the last-L inf over R
    bool pass = false;
};

CriterionReport bfko_report(const WeightSequence& c, const BfkoParams& params);

}  // namespace ergolab
