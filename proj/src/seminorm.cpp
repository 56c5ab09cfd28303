#include "ergolab/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

#include "ergolab/numeric.hpp"
#include "ergolab/orbit.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

namespace {

constexpr int64_t kExactAtomCap = 4096;

double root_2l(double x, int level) {
    if (x <= 0.0) return 0.0;
    return std::pow(x, 1.0 / static_cast<double>(int64_t{1} << level));
}

std::vector<int64_t> probe_windows(int64_t big_h) {
    std::vector<int64_t> probes{std::max<int64_t>(1, big_h / 16), std::max<int64_t>(1, big_h / 4),
                                big_h};
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    return probes;
}

double stderr_of_batches(std::span<const double> means) {
    if (means.size() < 2) return 0.0;
    double mu = 0.0;
    for (double m : means) mu += m;
    mu /= static_cast<double>(means.size());
    double var = 0.0;
    for (double m : means) var += (m - mu) * (m - mu);
    var /= static_cast<double>(means.size() - 1);
    return std::sqrt(var / static_cast<double>(means.size()));
}

// mean of slot values plus batch stderr and truncation spread diagnostics
struct SlotSummary {
    double mean = 0.0;
    double err = 0.0;
};

SlotSummary summarize_slots(std::span<const double> slots, int64_t big_h, int batches,
                            bool with_probes) {
    SlotSummary out;
    out.mean = pairwise_sum(slots) / static_cast<double>(slots.size());

    int b = std::min<int64_t>(batches, static_cast<int64_t>(slots.size()));
    std::vector<double> means;
    means.reserve(static_cast<size_t>(b));
    size_t start = 0;
    for (int k = 0; k < b; ++k) {
        size_t stop = slots.size() * static_cast<size_t>(k + 1) / static_cast<size_t>(b);
        if (stop > start) {
            means.push_back(pairwise_sum(slots.subspan(start, stop - start)) /
                            static_cast<double>(stop - start));
            start = stop;
        }
    }
    out.err = stderr_of_batches(means);

    if (with_probes && big_h >= 2) {
        // partial symmetric-window averages approximate the limsup_H limit;
        // the observed spread is reported as truncation uncertainty
        double final_val = out.mean;
        double spread = 0.0;
        for (int64_t hp : probe_windows(big_h)) {
            size_t lo = static_cast<size_t>(big_h - hp);
            size_t count = static_cast<size_t>(2 * hp);
            double partial = pairwise_sum(slots.subspan(lo, count)) / static_cast<double>(count);
            spread = std::max(spread, std::abs(partial - final_val));
        }
        out.err += spread;
    }
    return out;
}

// ---------------------------------------------------------------------------
// orbit backend
// ---------------------------------------------------------------------------

// Aggregated U^1 correlation form over the symmetric window, diagonal h0 = 0
// excluded (its weight vanishes in the limit and it biases weakly mixing
// inputs at finite H):
//   avg_{1 <= |h0| <= H0} (1/N) sum_{n=1}^{N} w_n w_{n + c h0}
// computed with stride-|c| prefix sums, so the whole window costs O(len).
double u1_box(const Window& w, int64_t cc, int64_t h0_window, int64_t n_prefix) {
    const int64_t lo = w.lo(), hi = w.hi();
    std::vector<double> pre(static_cast<size_t>(w.length()));
    std::vector<double> sum(static_cast<size_t>(cc), 0.0);
    std::vector<double> comp(static_cast<size_t>(cc), 0.0);
    for (int64_t i = lo; i <= hi; ++i) {
        size_t r = static_cast<size_t>((i - lo) % cc);
        double x = w[i];
        double t = sum[r] + x;
        if (std::abs(sum[r]) >= std::abs(x))
            comp[r] += (sum[r] - t) + x;
        else
            comp[r] += (x - t) + sum[r];
        sum[r] = t;
        pre[static_cast<size_t>(i - lo)] = sum[r] + comp[r];
    }
    auto s_at = [&](int64_t i) { return pre[static_cast<size_t>(i - lo)]; };

    double total = pairwise_sum_fn(static_cast<size_t>(n_prefix), [&](size_t k) {
        int64_t n = static_cast<int64_t>(k) + 1;
        double plus = s_at(n + cc * h0_window) - s_at(n);
        double minus = s_at(n - cc) - s_at(n - cc * (h0_window + 1));
        return w[n] * (plus + minus);
    });
    return total / (static_cast<double>(n_prefix) * static_cast<double>(2 * h0_window));
}

double u_pow_orbit(const Window& w, int level, const std::vector<int64_t>& hs, int64_t cc,
                   int64_t n_prefix);

double u_pow_orbit_child(const Window& w, int64_t h, int level, const std::vector<int64_t>& hs,
                         int64_t cc, int64_t n_prefix) {
    const int64_t clo = w.lo() + std::max<int64_t>(0, -h);
    const int64_t chi = w.hi() - std::max<int64_t>(0, h);
    Window w2(clo, chi);
    for (int64_t n = clo; n <= chi; ++n) w2[n] = w[n] * w[n + h];
    return u_pow_orbit(w2, level - 1, hs, cc, n_prefix);
}

// estimate of ||.||_{U^level}^{2^level} from orbit data w
double u_pow_orbit(const Window& w, int level, const std::vector<int64_t>& hs, int64_t cc,
                   int64_t n_prefix) {
    if (level == 1) return u1_box(w, cc, hs[0], n_prefix);
    const int64_t big_h = hs[static_cast<size_t>(level - 1)];
    CompensatedSum acc;
    for (int64_t h = -big_h; h <= big_h; ++h) {
        if (h == 0) continue;
        acc.add(u_pow_orbit_child(w, h, level, hs, cc, n_prefix));
    }
    return acc.value() / static_cast<double>(2 * big_h);
}

SlotSummary orbit_raw(const System& sys, const Observable& f, const SeminormParams& p, Rng& rng) {
    const int64_t cc = std::llabs(p.c);
    const int64_t h0 = p.h_schedule[0];
    int64_t shifts = 0;
    for (size_t k = 1; k < p.h_schedule.size(); ++k) shifts += p.h_schedule[k];

    const int64_t lo = 1 - cc * (h0 + 1) - shifts;
    const int64_t hi = p.n + cc * h0 + shifts;
    State x0 = sys.sample(rng);
    const Window v = orbit_window(sys, x0, f, lo, hi);

    if (p.level == 1) {
        // per-shift correlation values, kept individually for error bars
        std::vector<double> slots(static_cast<size_t>(2 * h0));
        parallel_for(2 * h0, [&](int64_t idx) {
            int64_t h = idx < h0 ? idx - h0 : idx - h0 + 1;
            int64_t lag = p.c * h;
            double g = pairwise_sum_fn(static_cast<size_t>(p.n), [&](size_t k) {
                           int64_t n = static_cast<int64_t>(k) + 1;
                           return v[n] * v[n + lag];
                       }) / static_cast<double>(p.n);
            slots[static_cast<size_t>(idx)] = g;
        });
        return summarize_slots(slots, h0, p.batches, true);
    }

    const int64_t big_h = p.h_schedule.back();
    std::vector<double> slots(static_cast<size_t>(2 * big_h));
    parallel_for(2 * big_h, [&](int64_t idx) {
        int64_t h = idx < big_h ? idx - big_h : idx - big_h + 1;
        slots[static_cast<size_t>(idx)] = u_pow_orbit_child(v, h, p.level, p.h_schedule, cc, p.n);
    });
    return summarize_slots(slots, big_h, p.batches, true);
}

// ---------------------------------------------------------------------------
// exact backend for finite systems
// ---------------------------------------------------------------------------

struct FiniteModel {
    std::vector<double> weights;
    std::vector<double> values;
    std::vector<size_t> sigma;  // index permutation of T
    int64_t period = 1;
};

std::optional<FiniteModel> build_finite_model(const System& sys, const Observable& f) {
    auto period = sys.period();
    auto atoms = sys.atoms();
    if (!period || !atoms) return std::nullopt;
    if (*period > kExactAtomCap || static_cast<int64_t>(atoms->size()) > kExactAtomCap)
        return std::nullopt;

    FiniteModel m;
    m.period = *period;
    const size_t q = atoms->size();
    m.weights.resize(q);
    m.values.resize(q);
    m.sigma.resize(q);
    for (size_t i = 0; i < q; ++i) {
        m.weights[i] = (*atoms)[i].weight;
        m.values[i] = f((*atoms)[i].state);
    }
    for (size_t i = 0; i < q; ++i) {
        State next = sys.advance((*atoms)[i].state, 1);
        size_t j = q;
        for (size_t k = 0; k < q; ++k) {
            if ((*atoms)[k].state == next) {
                j = k;
                break;
            }
        }
        if (j == q) return std::nullopt;  // atom list not closed under T
        m.sigma[i] = j;
    }
    return m;
}

std::vector<size_t> perm_power(const std::vector<size_t>& sigma, int64_t e) {
    std::vector<size_t> cur(sigma.size());
    std::iota(cur.begin(), cur.end(), size_t{0});
    std::vector<size_t> next(sigma.size());
    for (int64_t k = 0; k < e; ++k) {
        for (size_t i = 0; i < cur.size(); ++i) next[i] = sigma[cur[i]];
        cur.swap(next);
    }
    return cur;
}

// full-period averages, diagonal residues included: on a finite system the
// symmetric-window limit is exactly the mean over one period
double exact_u_pow(int level, const std::vector<double>& w, const FiniteModel& m,
                   const std::vector<size_t>& cstep) {
    const size_t q = w.size();
    if (level == 1) {
        std::vector<size_t> cur(q);
        std::iota(cur.begin(), cur.end(), size_t{0});
        std::vector<size_t> next(q);
        CompensatedSum acc;
        for (int64_t h0 = 0; h0 < m.period; ++h0) {
            double s = 0.0;
            for (size_t i = 0; i < q; ++i) s += m.weights[i] * w[i] * w[cur[i]];
            acc.add(s);
            for (size_t i = 0; i < q; ++i) next[i] = cstep[cur[i]];
            cur.swap(next);
        }
        return acc.value() / static_cast<double>(m.period);
    }
    std::vector<size_t> cur(q);
    std::iota(cur.begin(), cur.end(), size_t{0});
    std::vector<size_t> next(q);
    std::vector<double> w2(q);
    CompensatedSum acc;
    for (int64_t h = 0; h < m.period; ++h) {
        for (size_t i = 0; i < q; ++i) w2[i] = w[i] * w[cur[i]];
        acc.add(exact_u_pow(level - 1, w2, m, cstep));
        for (size_t i = 0; i < q; ++i) next[i] = m.sigma[cur[i]];
        cur.swap(next);
    }
    return acc.value() / static_cast<double>(m.period);
}

double exact_raw(const FiniteModel& m, int level, int64_t c) {
    int64_t c_red = ((c % m.period) + m.period) % m.period;
    std::vector<size_t> cstep = perm_power(m.sigma, c_red);
    return exact_u_pow(level, m.values, m, cstep);
}

// ---------------------------------------------------------------------------
// monte carlo backend
// ---------------------------------------------------------------------------

SlotSummary mc_raw(const System& sys, const Observable& f, const SeminormParams& p, Rng& rng,
                   const std::function<State(Rng&)>* sampler) {
    int64_t shifts = 0;
    for (size_t k = 1; k < p.h_schedule.size(); ++k) shifts += p.h_schedule[k];
    const int64_t k1 = std::min(p.c, p.c * p.n) - shifts;
    const int64_t k2 = std::max(p.c, p.c * p.n) + shifts;

    const uint64_t salt = rng.next_u64();
    std::vector<std::unique_ptr<Window>> bufs(static_cast<size_t>(p.m));
    parallel_for(p.m, [&](int64_t i) {
        Rng child = rng.fork(hash2(salt, static_cast<uint64_t>(i)));
        State x = sampler ? (*sampler)(child) : sys.sample(child);
        bufs[static_cast<size_t>(i)] =
            std::make_unique<Window>(orbit_window(sys, x, f, k1, k2));
    });

    const int b = std::max(2, std::min<int>(p.batches, static_cast<int>(p.m)));
    auto batch_of = [&](int64_t i) {
        return static_cast<size_t>(i * b / p.m);
    };
    std::vector<int64_t> batch_count(static_cast<size_t>(b), 0);
    for (int64_t i = 0; i < p.m; ++i) ++batch_count[batch_of(i)];

    // Birkhoff average along the T^c orbit of sample i, with the product
    // function determined by the shift offsets
    auto birkhoff_sq = [&](int64_t i, std::span<const int64_t> offsets) {
        const Window& v = *bufs[static_cast<size_t>(i)];
        double a = pairwise_sum_fn(static_cast<size_t>(p.n), [&](size_t k) {
                       int64_t base = p.c * (static_cast<int64_t>(k) + 1);
                       double prod = 1.0;
                       for (int64_t off : offsets) prod *= v[base + off];
                       return prod;
                   }) / static_cast<double>(p.n);
        return a * a;
    };

    if (p.level == 1) {
        std::vector<double> per_sample(static_cast<size_t>(p.m));
        const int64_t offsets[1] = {0};
        parallel_for(p.m, [&](int64_t i) {
            per_sample[static_cast<size_t>(i)] = birkhoff_sq(i, offsets);
        });
        SlotSummary out;
        out.mean = pairwise_sum(per_sample) / static_cast<double>(p.m);
        std::vector<double> means;
        size_t start = 0;
        for (int k = 0; k < b; ++k) {
            size_t stop = start + static_cast<size_t>(batch_count[static_cast<size_t>(k)]);
            if (stop > start)
                means.push_back(pairwise_sum(std::span(per_sample).subspan(start, stop - start)) /
                                static_cast<double>(stop - start));
            start = stop;
        }
        out.err = stderr_of_batches(means);
        return out;
    }

    // enumerate shift tuples (h_{level-1}, ..., h_1), outermost major so the
    // truncation probes are contiguous prefixes
    const int dims = p.level - 1;
    std::vector<int64_t> dim_h(static_cast<size_t>(dims));
    int64_t tuples = 1;
    for (int d = 0; d < dims; ++d) {
        dim_h[static_cast<size_t>(d)] = p.h_schedule[static_cast<size_t>(p.level - 1 - d)];
        tuples *= 2 * dim_h[static_cast<size_t>(d)];
    }

    std::vector<double> tuple_val(static_cast<size_t>(tuples));
    std::vector<double> tuple_batch(static_cast<size_t>(tuples) * static_cast<size_t>(b));

    parallel_for(tuples, [&](int64_t t) {
        // decode tuple index into shifts
        std::vector<int64_t> hs(static_cast<size_t>(dims));
        int64_t rem = t;
        for (int d = dims - 1; d >= 0; --d) {
            int64_t width = 2 * dim_h[static_cast<size_t>(d)];
            int64_t idx = rem % width;
            rem /= width;
            hs[static_cast<size_t>(d)] =
                idx < dim_h[static_cast<size_t>(d)] ? idx - dim_h[static_cast<size_t>(d)]
                                                    : idx - dim_h[static_cast<size_t>(d)] + 1;
        }
        // subset sums of the shifts give the product-function offsets
        std::vector<int64_t> offsets(size_t{1} << dims, 0);
        for (int d = 0; d < dims; ++d)
            for (size_t s = 0; s < offsets.size(); ++s)
                if (s & (size_t{1} << d)) offsets[s] += hs[static_cast<size_t>(d)];

        std::vector<double> batch_sum(static_cast<size_t>(b), 0.0);
        CompensatedSum total;
        for (int64_t i = 0; i < p.m; ++i) {
            double sq = birkhoff_sq(i, offsets);
            total.add(sq);
            batch_sum[batch_of(i)] += sq;
        }
        tuple_val[static_cast<size_t>(t)] = total.value() / static_cast<double>(p.m);
        for (int k = 0; k < b; ++k)
            tuple_batch[static_cast<size_t>(t) * static_cast<size_t>(b) + static_cast<size_t>(k)] =
                batch_sum[static_cast<size_t>(k)] /
                static_cast<double>(batch_count[static_cast<size_t>(k)]);
    });

    SlotSummary out;
    out.mean = pairwise_sum(tuple_val) / static_cast<double>(tuples);

    std::vector<double> means(static_cast<size_t>(b));
    for (int k = 0; k < b; ++k) {
        means[static_cast<size_t>(k)] =
            pairwise_sum_fn(static_cast<size_t>(tuples),
                            [&](size_t t) {
                                return tuple_batch[t * static_cast<size_t>(b) +
                                                   static_cast<size_t>(k)];
                            }) /
            static_cast<double>(tuples);
    }
    out.err = stderr_of_batches(means);

    // truncation probes over the outermost shift window
    const int64_t big_h = dim_h[0];
    const int64_t inner = tuples / (2 * big_h);
    double spread = 0.0;
    for (int64_t hp : probe_windows(big_h)) {
        size_t lo = static_cast<size_t>((big_h - hp) * inner);
        size_t count = static_cast<size_t>(2 * hp * inner);
        double partial =
            pairwise_sum(std::span(tuple_val).subspan(lo, count)) / static_cast<double>(count);
        spread = std::max(spread, std::abs(partial - out.mean));
    }
    out.err += spread;
    return out;
}

SeminormEstimate finish(const SeminormParams& p, SlotSummary s, const std::string& backend) {
    SeminormEstimate est;
    est.level = p.level;
    est.c = p.c;
    est.params = p;
    est.backend_used = backend;
    est.raw = s.mean;
    est.raw_error = s.err;
    est.clamped = s.mean < 0.0;
    est.value = root_2l(s.mean, p.level);
    double hi = root_2l(s.mean + s.err, p.level);
    double lo = root_2l(s.mean - s.err, p.level);
    est.std_error = (hi - lo) / 2.0;
    return est;
}

}  // namespace

SeminormParams SeminormParams::defaults(int level, int64_t c, SeminormBackend backend) {
    SeminormParams p;
    p.level = level;
    p.c = c;
    p.backend = backend;
    if (backend == SeminormBackend::orbit) {
        p.n = 100'000;
        switch (level) {
            case 1: p.h_schedule = {1024}; break;
            case 2: p.h_schedule = {1024, 1024}; break;
            case 3: p.h_schedule = {256, 64, 64}; break;
            default: p.h_schedule = {64, 32, 16, 16}; break;
        }
    } else {
        p.n = 4000;
        p.m = 200;
        switch (level) {
            case 1: p.h_schedule = {1}; break;
            case 2: p.h_schedule = {1, 128}; break;
            case 3: p.h_schedule = {1, 32, 32}; break;
            default: p.h_schedule = {1, 16, 16, 8}; break;
        }
    }
    return p;
}

void SeminormParams::validate() const {
    require_arg(level >= 1 && level <= 4, "seminorm level must be in [1, 4]");
    require_arg(c != 0, "seminorm parameter c must be non-zero");
    require_arg(h_schedule.size() == static_cast<size_t>(level),
                "h_schedule must have one entry per level");
    for (int64_t h : h_schedule) require_arg(h >= 1, "all H truncations must be >= 1");
    require_arg(n >= 1, "orbit length must be >= 1");
    require_arg(m >= 1, "sample count must be >= 1");
    require_arg(batches >= 2, "batch count must be >= 2");
}

double SeminormParams::work_estimate() const {
    double inner = 1.0;
    for (size_t k = 1; k < h_schedule.size(); ++k)
        inner *= 2.0 * static_cast<double>(h_schedule[k]);
    if (backend == SeminormBackend::orbit) {
        double len = static_cast<double>(n) +
                     2.0 * static_cast<double>(std::llabs(c)) * static_cast<double>(h_schedule[0]);
        double u1 = level == 1 ? 2.0 * static_cast<double>(h_schedule[0]) : 1.0;
        return len * inner * u1;
    }
    return static_cast<double>(m) * static_cast<double>(n) * inner;
}

SeminormEstimate seminorm(const System& sys, const Observable& f, const SeminormParams& params,
                          Rng& rng) {
    params.validate();
    if (params.backend == SeminormBackend::monte_carlo)
        return seminorm_with_sampler(sys, f, params, rng, nullptr);

    if (auto model = build_finite_model(sys, f))
        return finish(params, SlotSummary{exact_raw(*model, params.level, params.c), 0.0}, "exact");

    if (!sys.ergodic())
        throw UnsupportedError("orbit backend needs a declared ergodic system; use monte_carlo");
    return finish(params, orbit_raw(sys, f, params, rng), "orbit");
}

SeminormEstimate seminorm_with_sampler(const System& sys, const Observable& f,
                                       const SeminormParams& params, Rng& rng,
                                       const std::function<State(Rng&)>& sampler) {
    params.validate();
    const std::function<State(Rng&)>* s = sampler ? &sampler : nullptr;
    return finish(params, mc_raw(sys, f, params, rng, s), "monte_carlo");
}

InequalityReport check_multilinear_estimate(const SystemPtr& sys,
                                            const std::vector<Observable>& fs,
                                            const std::vector<int64_t>& as, size_t i,
                                            const MultilinearCheckParams& params, Rng& rng) {
    const size_t k = fs.size();
    require_arg(k >= 1 && k <= 3, "multilinear check supports 1 to 3 functions");
    require_arg(as.size() == k, "one exponent per function required");
    require_arg(i < k, "index i out of range");
    for (size_t p = 0; p < k; ++p)
        for (size_t q = p + 1; q < k; ++q)
            require_arg(as[p] != as[q], "exponents a_j must be distinct");
    if (k == 1) require_arg(as[0] != 0, "single exponent must be non-zero");

    // L2 norm of the multilinear average, Monte Carlo over starting points
    const uint64_t salt = rng.next_u64();
    std::vector<double> sq(static_cast<size_t>(params.m));
    parallel_for(params.m, [&](int64_t j) {
        Rng child = rng.fork(hash2(salt, static_cast<uint64_t>(j)));
        State x = sys->sample(child);
        CompensatedSum acc;
        for (int64_t n = 1; n <= params.n; ++n) {
            double prod = 1.0;
            for (size_t t = 0; t < k; ++t) prod *= fs[t](sys->advance(x, as[t] * n));
            acc.add(prod);
        }
        double a = acc.value() / static_cast<double>(params.n);
        sq[static_cast<size_t>(j)] = a * a;
    });
    double mean_sq = pairwise_sum(sq) / static_cast<double>(params.m);
    std::vector<double> batch_means;
    int b = std::max(2, std::min<int>(8, static_cast<int>(params.m)));
    size_t start = 0;
    for (int kk = 0; kk < b; ++kk) {
        size_t stop = sq.size() * static_cast<size_t>(kk + 1) / static_cast<size_t>(b);
        if (stop > start) {
            batch_means.push_back(pairwise_sum(std::span(sq).subspan(start, stop - start)) /
                                  static_cast<double>(stop - start));
            start = stop;
        }
    }
    double mean_sq_err = stderr_of_batches(batch_means);

    InequalityReport rep;
    rep.lhs = std::sqrt(std::max(0.0, mean_sq));
    rep.lhs_error =
        (std::sqrt(std::max(0.0, mean_sq + mean_sq_err)) - std::sqrt(std::max(0.0, mean_sq - mean_sq_err))) /
        2.0;

    // rhs: c = a_i for k = 1, c = a_i - a_{i'} otherwise
    int64_t c;
    if (k == 1) {
        c = as[0];
    } else {
        size_t ip = params.i_prime.value_or(i == 0 ? 1 : 0);
        require_arg(ip < k && ip != i, "i_prime must differ from i");
        c = as[i] - as[ip];
    }
    SeminormParams sp = params.rhs_seminorm;
    sp.level = static_cast<int>(k);
    sp.c = c;
    if (sp.h_schedule.size() != k) sp.h_schedule = SeminormParams::defaults(static_cast<int>(k), c, sp.backend).h_schedule;
    SeminormEstimate rhs;
    Rng rhs_rng = rng.fork(0x52485321ull);
    if (sp.backend == SeminormBackend::orbit && !sys->ergodic() && !sys->atoms())
        sp.backend = SeminormBackend::monte_carlo;
    rhs = seminorm(*sys, fs[i], sp, rhs_rng);

    rep.rhs = rhs.value;
    rep.rhs_error = rhs.std_error;
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : std::numeric_limits<double>::infinity();
    rep.slack = rep.rhs - rep.lhs;  // informational; no universal constant is asserted
    rep.holds = rep.rhs > params.rhs_tol || rep.lhs <= params.lhs_tol;
    rep.detail = "U^" + std::to_string(k) + "(T," + std::to_string(c) + ") of " + fs[i].name;
    return rep;
}

InequalityReport check_product_inequality(const SystemPtr& sys_x, const Observable& f,
                                          const SystemPtr& sys_y, const Observable& g, int64_t a,
                                          int64_t b, int64_t c, int level,
                                          const ProductIneqParams& params, Rng& rng) {
    require_arg(level == 1 || level == 2, "product inequality check supports l in {1, 2}");
    require_arg(a != 0 && b != 0 && c != 0, "a, b, c must be non-zero");

    SystemPtr prod = make_product(make_power(sys_x, a), make_power(sys_y, b));
    SeminormParams lp = params.lhs_seminorm;
    lp.level = level;
    lp.c = c;
    lp.backend = SeminormBackend::monte_carlo;
    if (lp.h_schedule.size() != static_cast<size_t>(level))
        lp.h_schedule = SeminormParams::defaults(level, c, lp.backend).h_schedule;
    Rng lhs_rng = rng.fork(0x4c485321ull);
    SeminormEstimate lhs = seminorm(*prod, obs::tensor(f, g), lp, lhs_rng);

    auto factor_estimate = [&](const SystemPtr& s, const Observable& h, uint64_t stream) {
        SeminormParams rp = params.rhs_seminorm;
        rp.level = level + 1;
        rp.c = 1;
        if (rp.backend == SeminormBackend::orbit && !s->ergodic() && !s->atoms())
            rp.backend = SeminormBackend::monte_carlo;
        if (rp.h_schedule.size() != static_cast<size_t>(level + 1))
            rp.h_schedule = SeminormParams::defaults(level + 1, 1, rp.backend).h_schedule;
        Rng r = rng.fork(stream);
        return seminorm(*s, h, rp, r);
    };
    SeminormEstimate ef = factor_estimate(sys_x, f, 0xf001ull);
    SeminormEstimate eg = factor_estimate(sys_y, g, 0xf002ull);

    const double constant = std::pow(std::abs(static_cast<double>(a * b)), 0.25) *
                            std::pow(std::abs(static_cast<double>(c)),
                                     1.0 / static_cast<double>(int64_t{1} << level));

    InequalityReport rep;
    rep.lhs = lhs.value;
    rep.lhs_error = lhs.std_error;
    rep.rhs = constant * ef.value * eg.value;
    rep.rhs_error = constant * (ef.std_error * eg.value + eg.std_error * ef.value +
                                ef.std_error * eg.std_error);
    rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : std::numeric_limits<double>::infinity();
    double combined = std::sqrt(rep.lhs_error * rep.lhs_error + rep.rhs_error * rep.rhs_error);
    rep.slack = rep.rhs + 3.0 * combined - rep.lhs;
    rep.holds = rep.slack >= 0.0;
    rep.detail = "|ab|^{1/4} |c|^{1/2^l} U^" + std::to_string(level + 1) + " bound, a=" +
                 std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(c);
    return rep;
}

}  // namespace ergolab
