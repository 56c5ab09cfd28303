#include "ergolab/orbit.hpp"

namespace ergolab {

OrbitBuffer orbit(const System& sys, const State& x, int64_t n_lo, int64_t n_hi,
                  const Observable& f) {
    require_arg(n_lo <= n_hi, "orbit window must satisfy n_lo <= n_hi");
    if (n_lo < 0 && !sys.invertible())
        throw UnsupportedError("negative orbit index on a non-invertible system");
    OrbitBuffer buf;
    buf.n_lo = n_lo;
    buf.n_hi = n_hi;
    buf.system_name = sys.name();
    buf.observable_name = f.name;
    buf.start = x;
    buf.values.resize(static_cast<size_t>(n_hi - n_lo + 1));
    for (int64_t n = n_lo; n <= n_hi; ++n)
        buf.values[static_cast<size_t>(n - n_lo)] = f(sys.advance(x, n));
    return buf;
}

Window orbit_window(const System& sys, const State& x, const Observable& f, int64_t lo,
                    int64_t hi) {
    require_arg(lo <= hi, "orbit window must satisfy lo <= hi");
    Window w(lo, hi);
    for (int64_t n = lo; n <= hi; ++n) w[n] = f(sys.advance(x, n));
    return w;
}

}  // namespace ergolab
