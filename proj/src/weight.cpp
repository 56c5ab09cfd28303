#include "ergolab/weight.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/autocorr.hpp"
#include "ergolab/numeric.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

std::string WeightProvenance::describe() const {
    if (external) return "external";
    return system + ", f1=" + f1 + ", f2=" + f2 + ", a1=" + std::to_string(a1) +
           ", a2=" + std::to_string(a2);
}

WeightSequence::WeightSequence(std::vector<double> values, double bound, WeightProvenance prov)
    : values_(std::move(values)), bound_(bound), prov_(std::move(prov)) {
    require_arg(!values_.empty(), "weight sequence must be nonempty");
    require_arg(bound_ >= 0.0 && std::isfinite(bound_), "weight bound must be finite");
}

WeightSequence WeightSequence::scaled(double lambda) const {
    std::vector<double> v(values_.size());
    for (size_t i = 0; i < values_.size(); ++i) v[i] = lambda * values_[i];
    WeightProvenance p = prov_;
    p.external = true;
    p.system = "scaled(" + prov_.describe() + ")";
    return WeightSequence(std::move(v), std::abs(lambda) * bound_, std::move(p));
}

WeightSequence make_weight(const System& sys, const Observable& f1, const Observable& f2,
                           int64_t a1, int64_t a2, const State& x, int64_t n_total) {
    require_arg(a1 != 0 && a2 != 0, "weight exponents must be non-zero");
    require_arg(a1 != a2, "weight exponents must be distinct");
    require_arg(n_total >= 1, "weight length must be >= 1");

    std::vector<double> v(static_cast<size_t>(n_total));
    for (int64_t n = 1; n <= n_total; ++n)
        v[static_cast<size_t>(n - 1)] = f1(sys.advance(x, a1 * n)) * f2(sys.advance(x, a2 * n));

    WeightProvenance prov;
    prov.system = sys.name();
    prov.f1 = f1.name;
    prov.f2 = f2.name;
    prov.a1 = a1;
    prov.a2 = a2;
    return WeightSequence(std::move(v), f1.sup_bound * f2.sup_bound, std::move(prov));
}

WeightSequence external_weight(std::vector<double> values) {
    double bound = 0.0;
    for (double x : values) {
        require_arg(std::isfinite(x), "external weight values must be finite");
        bound = std::max(bound, std::abs(x));
    }
    WeightProvenance prov;
    prov.external = true;
    return WeightSequence(std::move(values), bound, std::move(prov));
}

CorrelationTable correlation_table(const WeightSequence& c, std::vector<int64_t> n_list,
                                   int64_t h_max) {
    require_arg(!n_list.empty(), "correlation table needs at least one prefix length");
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
    require_arg(n_list.front() >= 1, "prefix lengths must be >= 1");
    require_arg(h_max >= 0, "h_max must be >= 0");
    require_arg(n_list.back() + h_max <= c.size(),
                "correlation window overruns the weight sequence");

    CorrelationTable table;
    table.n_list = std::move(n_list);
    table.h_max = h_max;
    table.bound = c.bound();
    table.gamma.resize(table.n_list.size());
    parallel_for(static_cast<int64_t>(table.n_list.size()), [&](int64_t i) {
        table.gamma[static_cast<size_t>(i)] =
            autocorrelation_sweep(c.values(), h_max, table.n_list[static_cast<size_t>(i)]);
    });
    return table;
}

}  // namespace ergolab
