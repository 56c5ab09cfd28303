#include "ergolab/extension.hpp"

#include <cmath>
#include <memory>

#include "ergolab/numeric.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

ZPrimeSampler::ZPrimeSampler(int64_t a1, int64_t a2) : a1_(a1), a2_(a2), d_(gcd_i64(a1, a2)) {
    require_arg(a1 != 0 && a2 != 0, "Z' needs non-zero exponents");
    require_arg(a1 != a2, "Z' needs distinct exponents");
}

std::pair<double, double> ZPrimeSampler::sample(Rng& rng) const {
    double t = rng.next_unit();
    return {mul_mod1(static_cast<double>(a1_), t), mul_mod1(static_cast<double>(a2_), t)};
}

TildeMuSampler::TildeMuSampler(SystemPtr base, int64_t a1, int64_t a2)
    : base_(std::move(base)), a1_(a1), a2_(a2) {
    require_arg(a1 != 0 && a2 != 0 && a1 != a2, "need distinct non-zero exponents");
    if (!base_->has_kronecker())
        throw UnsupportedError("base system has no declared Kronecker factor");
    switch (base_->kronecker_kind()) {
        case KroneckerPoint::Kind::trivial:
            break;  // joining collapses to independence
        case KroneckerPoint::Kind::torus:
            if (base_->kronecker_dim() != 1)
                throw UnsupportedError(
                    "Z' sampling implemented for 1-torus Kronecker factors only");
            zprime_.emplace(a1, a2);
            break;
        case KroneckerPoint::Kind::finite:
            throw UnsupportedError(
                "finite Kronecker factor: the orbit closure is finite and out of scope");
    }
}

std::pair<State, State> TildeMuSampler::sample_nu(const KroneckerPoint& z, Rng& rng) const {
    if (!zprime_) {
        State a = base_->sample_fiber(KroneckerPoint{}, rng);
        State b = base_->sample_fiber(KroneckerPoint{}, rng);
        return {std::move(a), std::move(b)};
    }
    auto [z1, z2] = zprime_->sample(rng);
    State a = base_->sample_fiber(kronecker_shift(z, {z1}), rng);
    State b = base_->sample_fiber(kronecker_shift(z, {z2}), rng);
    return {std::move(a), std::move(b)};
}

TildeMuSampler::Triple TildeMuSampler::sample(Rng& rng) const {
    State x = base_->sample(rng);
    KroneckerPoint z = zprime_ ? base_->kronecker(x) : KroneckerPoint{};
    auto [xi1, xi2] = sample_nu(z, rng);
    return {std::move(x), std::move(xi1), std::move(xi2)};
}

DecayReport corollary_experiment(const SystemPtr& base, const Observable& f1,
                                 const Observable& f2, int64_t a1, int64_t a2, int64_t n,
                                 int64_t samples, Rng& rng) {
    require_arg(n >= 4, "need n >= 4");
    require_arg(samples >= 1, "need at least one sample");
    TildeMuSampler mu(base, a1, a2);

    DecayReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.checkpoints = {std::max<int64_t>(1, n / 16), std::max<int64_t>(1, n / 4),
                       std::max<int64_t>(1, n / 2), (3 * n) / 4, n};
    std::sort(rep.checkpoints.begin(), rep.checkpoints.end());
    rep.checkpoints.erase(std::unique(rep.checkpoints.begin(), rep.checkpoints.end()),
                          rep.checkpoints.end());

    const size_t cps = rep.checkpoints.size();
    std::vector<double> abs_at(static_cast<size_t>(samples) * cps);
    std::vector<double> oscs(static_cast<size_t>(samples));

    const uint64_t salt = rng.next_u64();
    parallel_for(samples, [&](int64_t s) {
        Rng child = rng.fork(hash2(salt, static_cast<uint64_t>(s)));
        auto triple = mu.sample(child);
        auto prof = profile_of(
            [&](int64_t k) {
                return f1(base->advance(triple.x, a1 * k)) * f2(base->advance(triple.x, a2 * k)) *
                       f1(base->advance(triple.xi1, a1 * k)) *
                       f2(base->advance(triple.xi2, a2 * k));
            },
            rep.checkpoints, f1.sup_bound * f1.sup_bound * f2.sup_bound * f2.sup_bound);
        for (size_t i = 0; i < cps; ++i)
            abs_at[static_cast<size_t>(s) * cps + i] = std::abs(prof.values[i]);
        oscs[static_cast<size_t>(s)] = prof.tail_oscillation;
    });

    rep.mean_abs_at.resize(cps);
    for (size_t i = 0; i < cps; ++i) {
        rep.mean_abs_at[i] = pairwise_sum_fn(static_cast<size_t>(samples),
                                             [&](size_t s) { return abs_at[s * cps + i]; }) /
                             static_cast<double>(samples);
    }
    rep.mean_abs = rep.mean_abs_at.back();
    rep.mean_tail_oscillation = pairwise_sum(oscs) / static_cast<double>(samples);
    return rep;
}

IdentityReport generic_point_check(const SystemPtr& base, const Observable& g1,
                                   const Observable& g2, int64_t a1, int64_t a2, const State& x,
                                   int64_t n, int64_t mc, Rng& rng) {
    require_arg(n >= 2, "need n >= 2");
    require_arg(mc >= 2, "need mc >= 2");
    TildeMuSampler mu(base, a1, a2);

    IdentityReport rep;
    rep.n = n;
    rep.mc = mc;

    auto prof = bilinear_average(*base, g1, g2, a1, a2, x, default_checkpoints(n));
    rep.lhs = prof.last();
    rep.lhs_oscillation = prof.tail_oscillation;

    KroneckerPoint z = mu.trivial_factor() ? KroneckerPoint{} : base->kronecker(x);
    const uint64_t salt = rng.next_u64();
    std::vector<double> draws(static_cast<size_t>(mc));
    parallel_for(mc, [&](int64_t i) {
        Rng child = rng.fork(hash2(salt, static_cast<uint64_t>(i)));
        auto [xi1, xi2] = mu.sample_nu(z, child);
        draws[static_cast<size_t>(i)] = g1(xi1) * g2(xi2);
    });
    rep.rhs = pairwise_sum(draws) / static_cast<double>(mc);
    double var = 0.0;
    for (double d : draws) var += (d - rep.rhs) * (d - rep.rhs);
    var /= static_cast<double>(mc - 1);
    rep.rhs_std_error = std::sqrt(var / static_cast<double>(mc));
    rep.abs_diff = std::abs(rep.lhs - rep.rhs);
    return rep;
}

}  // namespace ergolab
