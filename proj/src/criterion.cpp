#include "ergolab/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ergolab/numeric.hpp"

namespace ergolab {

SSetDensity s_set_density(const CorrelationTable& table, double delta, int64_t big_l,
                          int64_t big_r, int64_t horizon) {
    require_arg(delta > 0.0, "delta must be positive");
    require_arg(big_l <= big_r, "need L <= R");
    require_arg(horizon >= 1 && horizon <= table.h_max, "horizon must be within the table");

    SSetDensity out;
    out.member.assign(static_cast<size_t>(horizon), uint8_t{1});
    for (size_t i = 0; i < table.n_list.size(); ++i) {
        int64_t n = table.n_list[i];
        if (n < big_l || n > big_r) continue;
        out.n_used.push_back(n);
        const auto& g = table.gamma[i];
        for (int64_t h = 1; h <= horizon; ++h)
            if (!(std::abs(g[static_cast<size_t>(h)]) < delta))
                out.member[static_cast<size_t>(h - 1)] = 0;
    }

    // density proxy: min over M in [horizon/2, horizon] of |S cap [1,M]| / M
    int64_t m_lo = (horizon + 1) / 2;
    int64_t count = 0;
    double best = 1.0;
    for (int64_t m = 1; m <= horizon; ++m) {
        count += out.member[static_cast<size_t>(m - 1)];
        if (m >= m_lo)
            best = std::min(best, static_cast<double>(count) / static_cast<double>(m));
    }
    out.density = best;
    return out;
}

double eta_cutoff(double t, double delta) {
    require_arg(delta > 0.0, "delta must be positive");
    double a = std::abs(t);
    if (a <= delta / 2.0) return 1.0;
    if (a >= delta) return 0.0;
    return 2.0 * (delta - a) / delta;
}

double f_xlr(const WeightSequence& cx, const WeightSequence& cxi, int64_t big_l, int64_t big_r,
             double delta, const std::vector<int64_t>& n_list) {
    require_arg(cx.size() == cxi.size(), "weight sequences must be aligned");
    require_arg(!n_list.empty(), "n_list must be nonempty");
    double prod = 1.0;
    CompensatedSum acc;
    int64_t done = 0;
    for (int64_t n : n_list) {
        require_arg(n >= big_l && n <= big_r, "n_list must lie within [L, R]");
        require_arg(n <= cx.size(), "n_list overruns the weight sequences");
        require_arg(n > done, "n_list must be strictly increasing");
        for (int64_t k = done + 1; k <= n; ++k) acc.add(cx.at(k) * cxi.at(k));
        done = n;
        prod *= eta_cutoff(acc.value() / static_cast<double>(n), delta);
    }
    return prod;
}

std::vector<std::pair<int64_t, int64_t>> default_lr_schedule(int64_t n_max) {
    require_arg(n_max >= 1, "n_max must be >= 1");
    std::vector<int64_t> ls{std::max<int64_t>(100, n_max / 100), std::max<int64_t>(1000, n_max / 10)};
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::vector<std::pair<int64_t, int64_t>> schedule;
    for (int64_t l : ls) {
        if (l > n_max) continue;
        for (int64_t factor : {int64_t{1}, int64_t{10}, int64_t{100}}) {
            int64_t r = std::min(n_max, l * factor);
            if (schedule.empty() || schedule.back() != std::make_pair(l, r))
                schedule.emplace_back(l, r);
        }
    }
    return schedule;
}

CriterionReport bfko_report(const WeightSequence& c, const BfkoParams& params) {
    require_arg(!params.delta_grid.empty(), "delta grid must be nonempty");
    CriterionReport rep;
    rep.delta_grid = params.delta_grid;
    std::sort(rep.delta_grid.begin(), rep.delta_grid.end(), std::greater<>());
    rep.horizon = params.horizon;
    rep.tol = params.tol;

    require_arg(params.horizon >= 1, "horizon must be >= 1");
    require_arg(c.size() > params.horizon, "weight too short for the horizon");
    const int64_t n_max = c.size() - params.horizon;

    rep.schedule = params.schedule.empty() ? default_lr_schedule(n_max) : params.schedule;
    for (auto [l, r] : rep.schedule) {
        require_arg(1 <= l && l <= r, "schedule entries need 1 <= L <= R");
        require_arg(r <= n_max, "schedule R exceeds the available prefix length");
    }

    // prefix grid: all schedule endpoints
    std::set<int64_t> ns;
    for (auto [l, r] : rep.schedule) {
        ns.insert(l);
        ns.insert(r);
    }
    CorrelationTable table =
        correlation_table(c, std::vector<int64_t>(ns.begin(), ns.end()), params.horizon);

    const int64_t last_l = std::max_element(rep.schedule.begin(), rep.schedule.end(),
                                            [](auto a, auto b) { return a.first < b.first; })
                               ->first;

    double criterion_value = 1.0;
    for (double delta : rep.delta_grid) {
        double last_l_min = 1.0;
        std::map<std::pair<int64_t, int64_t>, double> seen;
        for (auto [l, r] : rep.schedule) {
            auto s = s_set_density(table, delta, l, r, params.horizon);
            rep.densities.push_back({delta, l, r, s.density});
            seen[{l, r}] = s.density;
            if (l == last_l) last_l_min = std::min(last_l_min, s.density);
        }
        // exact monotonicity: growing R shrinks the intersection, growing L
        // drops constraints
        for (auto& [key1, d1] : seen)
            for (auto& [key2, d2] : seen) {
                if (key1.first == key2.first && key1.second <= key2.second)
                    require_invariant(d1 + 1e-15 >= d2, "S-set density must be non-increasing in R");
                if (key1.second == key2.second && key1.first <= key2.first)
                    require_invariant(d2 + 1e-15 >= d1, "S-set density must be non-decreasing in L");
            }
        criterion_value = std::min(criterion_value, last_l_min);
    }
    rep.criterion_value = criterion_value;
    rep.pass = criterion_value >= 1.0 - params.tol;
    return rep;
}

}  // namespace ergolab
