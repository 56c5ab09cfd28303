#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

struct WeightProvenance {
    std::string system;
    std::string f1, f2;
    int64_t a1 = 0, a2 = 0;
    bool external = false;

    std::string describe() const;
};

// Bounded weight sequence c_1, ..., c_{N_total}. When built from two-point
// orbit data, c_n = f1(T^{a1 n} x) f2(T^{a2 n} x).
class WeightSequence {
public:
    WeightSequence(std::vector<double> values, double bound, WeightProvenance prov);

    double at(int64_t n) const { return values_[static_cast<size_t>(n - 1)]; }  // 1-based
    int64_t size() const { return static_cast<int64_t>(values_.size()); }
    std::span<const double> values() const { return values_; }
    double bound() const { return bound_; }
    const WeightProvenance& provenance() const { return prov_; }

    WeightSequence scaled(double lambda) const;

private:
    std::vector<double> values_;
    double bound_;
    WeightProvenance prov_;
};

WeightSequence make_weight(const System& sys, const Observable& f1, const Observable& f2,
                           int64_t a1, int64_t a2, const State& x, int64_t n_total);

WeightSequence external_weight(std::vector<double> values);

// Exact prefix autocorrelations gamma_N(h) = (1/N) sum_{n=1}^{N} c_n c_{n+h}
// for every N in n_list and h = 0..h_max.
struct CorrelationTable {
    std::vector<int64_t> n_list;
    int64_t h_max = 0;
    std::vector<std::vector<double>> gamma;  // gamma[i][h] for n_list[i]
    double bound = 1.0;
};

CorrelationTable correlation_table(const WeightSequence& c, std::vector<int64_t> n_list,
                                   int64_t h_max);

}  // namespace ergolab
