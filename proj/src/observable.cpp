#include "ergolab/observable.hpp"

#include <cmath>
#include <utility>

#include "ergolab/numeric.hpp"
#include "ergolab/system.hpp"

namespace ergolab::obs {

Observable constant(double value) {
    return {"const(" + std::to_string(value) + ")", std::abs(value),
            [value](const State&) { return value; }};
}

Observable torus_cos(int harmonic, size_t coord) {
    return {"cos(2pi*" + std::to_string(harmonic) + "x" + std::to_string(coord) + ")", 1.0,
            [harmonic, coord](const State& s) {
                return std::cos(kTwoPi * harmonic * as_torus(s).x.at(coord));
            }};
}

Observable torus_sin(int harmonic, size_t coord) {
    return {"sin(2pi*" + std::to_string(harmonic) + "x" + std::to_string(coord) + ")", 1.0,
            [harmonic, coord](const State& s) {
                return std::sin(kTwoPi * harmonic * as_torus(s).x.at(coord));
            }};
}

Observable coordinate(size_t coord) {
    return {"x" + std::to_string(coord), 1.0,
            [coord](const State& s) { return as_torus(s).x.at(coord); }};
}

Observable cyclic_cos(int harmonic) {
    return {"cos(2pi*" + std::to_string(harmonic) + "j/q)", 1.0, [harmonic](const State& s) {
                const auto& c = as_cyclic(s);
                return std::cos(kTwoPi * harmonic * static_cast<double>(c.j) /
                                static_cast<double>(c.q));
            }};
}

Observable indicator_zero() {
    return {"1{j=0}", 1.0, [](const State& s) { return as_cyclic(s).j == 0 ? 1.0 : 0.0; }};
}

Observable symbol(std::vector<double> values, std::vector<double> probs) {
    double bound = 0.0;
    for (double v : values) bound = std::max(bound, std::abs(v));
    auto cum = bernoulli_cum(probs);
    return {"symbol", bound,
            [values = std::move(values), cum = std::move(cum)](const State& s) {
                const auto& b = as_symbol(s);
                return bernoulli_symbol(b.key, b.offset, cum, values);
            }};
}

Observable tensor(Observable f, Observable g) {
    double bound = f.sup_bound * g.sup_bound;
    std::string name = f.name + " (x) " + g.name;
    return {std::move(name), bound,
            [f = std::move(f), g = std::move(g)](const State& s) {
                const auto& p = as_product(s);
                return f(p.parts.at(0)) * g(p.parts.at(1));
            }};
}

Observable component(size_t idx, Observable f) {
    double bound = f.sup_bound;
    std::string name = "part" + std::to_string(idx) + "." + f.name;
    return {std::move(name), bound,
            [idx, f = std::move(f)](const State& s) { return f(as_product(s).parts.at(idx)); }};
}

Observable union_select(std::vector<Observable> per_component) {
    double bound = 0.0;
    for (const auto& f : per_component) bound = std::max(bound, f.sup_bound);
    return {"union_select", bound,
            [fs = std::move(per_component)](const State& s) {
                const auto* u = std::get_if<UnionState>(&s.v);
                if (!u) throw ArgumentError("union_select observable needs a union state");
                return fs.at(u->component)(u->inner.front());
            }};
}

}  // namespace ergolab::obs
