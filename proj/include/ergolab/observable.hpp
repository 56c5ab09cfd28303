#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ergolab/state.hpp"

namespace ergolab {

// Bounded real-valued function on a system's state space, with its declared
// sup bound carried along for average/seminorm bound bookkeeping.
struct Observable {
    std::string name;
    double sup_bound = 1.0;
    std::function<double(const State&)> eval;

    double operator()(const State& s) const { return eval(s); }
};

namespace obs {

Observable constant(double value);
Observable torus_cos(int harmonic, size_t coord = 0);  // cos(2 pi k x_coord)
Observable torus_sin(int harmonic, size_t coord = 0);
Observable coordinate(size_t coord = 0);  // raw torus coordinate in [0, 1)
Observable cyclic_cos(int harmonic = 1);  // cos(2 pi k j / q)
Observable indicator_zero();              // cyclic atom {0}

// Symbol read at the current shift position. values/probs describe the
// alphabet of the bernoulli system the observable is meant for.
Observable symbol(std::vector<double> values = {1.0, -1.0},
                  std::vector<double> probs = {0.5, 0.5});

// f(left part) * g(right part) on a product system
Observable tensor(Observable f, Observable g);
// f(part idx) on a product system
Observable component(size_t idx, Observable f);
// per-component definition on a union system
Observable union_select(std::vector<Observable> per_component);

}  // namespace obs

}  // namespace ergolab
