#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/observable.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

// Contiguous f(T^n x) values over the integer window [n_lo, n_hi].
struct OrbitBuffer {
    int64_t n_lo = 0;
    int64_t n_hi = -1;
    std::vector<double> values;
    std::string system_name;
    std::string observable_name;
    State start;

    double at(int64_t n) const { return values.at(static_cast<size_t>(n - n_lo)); }
    int64_t length() const { return n_hi - n_lo + 1; }
};

OrbitBuffer orbit(const System& sys, const State& x, int64_t n_lo, int64_t n_hi,
                  const Observable& f);

// Offset-indexed scratch window used by the estimators.
class Window {
public:
    Window(int64_t lo, int64_t hi) : lo_(lo), hi_(hi), v_(static_cast<size_t>(hi - lo + 1)) {}

    double& operator[](int64_t n) { return v_[static_cast<size_t>(n - lo_)]; }
    double operator[](int64_t n) const { return v_[static_cast<size_t>(n - lo_)]; }
    int64_t lo() const { return lo_; }
    int64_t hi() const { return hi_; }
    int64_t length() const { return hi_ - lo_ + 1; }

private:
    int64_t lo_, hi_;
    std::vector<double> v_;
};

Window orbit_window(const System& sys, const State& x, const Observable& f, int64_t lo,
                    int64_t hi);

}  // namespace ergolab
