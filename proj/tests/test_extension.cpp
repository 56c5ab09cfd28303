#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ergolab/extension.hpp"
#include "ergolab/numeric.hpp"
#include "ergolab/seminorm.hpp"

#include "oracles.hpp"

using namespace ergolab;

namespace {

SystemPtr rot() { return make_system(SystemSpec::rotation_of(irrational::sqrt2_minus_1)); }
SystemPtr bern() { return make_system(SystemSpec::bernoulli_pm1()); }

}  // namespace

TEST_CASE("z' samples satisfy the annihilator congruence") {
    Rng rng(300);
    for (auto [a1, a2] : {std::pair<int64_t, int64_t>{1, 2}, {2, 4}, {1, 3}, {-2, 3}}) {
        ZPrimeSampler zp(a1, a2);
        auto [k, m] = zp.annihilator();
        CHECK(k * a1 + m * a2 == 0);
        for (int i = 0; i < 1000; ++i) {
            auto [z1, z2] = zp.sample(rng);
            double rel = frac_unit(static_cast<double>(k) * z1 + static_cast<double>(m) * z2);
            CHECK(std::min(rel, 1.0 - rel) < 1e-9);
        }
    }
    CHECK_THROWS_AS(ZPrimeSampler(0, 2), ArgumentError);
    CHECK_THROWS_AS(ZPrimeSampler(2, 2), ArgumentError);
}

TEST_CASE("z' sampler matches the empirical orbit closure (character moments)") {
    const double alpha = irrational::sqrt2_minus_1;
    const int64_t a1 = 1, a2 = 2, n_orbit = 100'000, n_draws = 100'000;
    ZPrimeSampler zp(a1, a2);
    Rng rng(301);
    for (int k = -3; k <= 3; ++k) {
        for (int m = -3; m <= 3; ++m) {
            std::complex<double> orbit_moment = 0.0, sampler_moment = 0.0;
            for (int64_t n = 0; n < n_orbit; ++n) {
                double z1 = mul_mod1(static_cast<double>(a1 * n), alpha);
                double z2 = mul_mod1(static_cast<double>(a2 * n), alpha);
                orbit_moment += std::polar(1.0, kTwoPi * (k * z1 + m * z2));
            }
            for (int64_t n = 0; n < n_draws; ++n) {
                auto [z1, z2] = zp.sample(rng);
                sampler_moment += std::polar(1.0, kTwoPi * (k * z1 + m * z2));
            }
            orbit_moment /= static_cast<double>(n_orbit);
            sampler_moment /= static_cast<double>(n_draws);
            CHECK(std::abs(orbit_moment - sampler_moment) < 0.02);
        }
    }
}

TEST_CASE("tilde mu sampler: rotation base is fully explicit") {
    Rng rng(302);
    TildeMuSampler mu(rot(), 1, 2);
    CHECK_FALSE(mu.trivial_factor());
    for (int i = 0; i < 2000; ++i) {
        auto t = mu.sample(rng);
        double x = as_torus(t.x).x[0];
        double z1 = frac_unit(as_torus(t.xi1).x[0] - x);
        double z2 = frac_unit(as_torus(t.xi2).x[0] - x);
        // (pi xi1 - pi x, pi xi2 - pi x) lies on Z': 2 z1 = z2 mod 1
        double rel = frac_unit(2.0 * z1 - z2);
        CHECK(std::min(rel, 1.0 - rel) < 1e-9);
    }
}

TEST_CASE("tilde mu sampler: trivial factor collapses to independence") {
    Rng rng(303);
    TildeMuSampler mu(bern(), 1, 2);
    CHECK(mu.trivial_factor());
    auto coord = obs::symbol();
    double corr12 = 0.0, corr01 = 0.0;
    const int reps = 20'000;
    for (int i = 0; i < reps; ++i) {
        auto t = mu.sample(rng);
        corr01 += coord(t.x) * coord(t.xi1);
        corr12 += coord(t.xi1) * coord(t.xi2);
    }
    CHECK(std::abs(corr01 / reps) < 0.03);
    CHECK(std::abs(corr12 / reps) < 0.03);
}

TEST_CASE("tilde mu sampler: skew base keeps the fiber coordinate uniform") {
    Rng rng(304);
    auto skew = make_system(SystemSpec::skew_of(irrational::sqrt2_minus_1));
    TildeMuSampler mu(skew, 1, 2);
    std::vector<double> fiber1, base_rel;
    for (int i = 0; i < 10'000; ++i) {
        auto t = mu.sample(rng);
        fiber1.push_back(as_torus(t.xi1).x[1]);
        double z1 = frac_unit(as_torus(t.xi1).x[0] - as_torus(t.x).x[0]);
        double z2 = frac_unit(as_torus(t.xi2).x[0] - as_torus(t.x).x[0]);
        double rel = frac_unit(2.0 * z1 - z2);
        base_rel.push_back(std::min(rel, 1.0 - rel));
    }
    CHECK(oracles::ks_uniform(fiber1) < 0.02);
    for (double r : base_rel) CHECK(r < 1e-9);
}

TEST_CASE("tilde mu rejects finite and high-dimensional Kronecker factors") {
    CHECK_THROWS_AS(TildeMuSampler(make_system(SystemSpec::cyclic_of(4)), 1, 2),
                    UnsupportedError);
    CHECK_THROWS_AS(TildeMuSampler(make_system(SystemSpec::torus_rotation_of(
                                       {irrational::sqrt2_minus_1, irrational::golden_frac})),
                                   1, 2),
                    UnsupportedError);
}

TEST_CASE("joining is invariant under the diagonal shift") {
    Rng rng(305);
    TildeMuSampler mu(rot(), 1, 2);
    std::vector<double> pushed;
    for (int i = 0; i < 10'000; ++i) {
        auto t = mu.sample(rng);
        State x = rot()->step(t.x);
        State xi1 = rot()->step(t.xi1);
        pushed.push_back(as_torus(x).x[0]);
        double rel = frac_unit(2.0 * frac_unit(as_torus(xi1).x[0] - as_torus(x).x[0]) -
                               frac_unit(as_torus(rot()->step(t.xi2)).x[0] - as_torus(x).x[0]));
        CHECK(std::min(rel, 1.0 - rel) < 1e-9);
    }
    CHECK(oracles::ks_uniform(pushed) < 0.02);
}

TEST_CASE("corollary experiment: zero functions give exactly zero") {
    Rng rng(306);
    auto rep = corollary_experiment(bern(), obs::constant(0.0), obs::constant(0.0), 1, 2, 1000,
                                    10, rng);
    CHECK(rep.mean_abs == 0.0);
}

TEST_CASE("corollary experiment: bernoulli decays, resonant rotation does not") {
    Rng rng(307);
    auto decay = corollary_experiment(bern(), obs::symbol(), obs::symbol(), 1, 2, 20'000, 60,
                                      rng);
    CHECK(decay.mean_abs < 0.05);

    auto contrast = corollary_experiment(rot(), obs::torus_cos(2), obs::torus_cos(1), 1, 2,
                                         20'000, 60, rng);
    CHECK(contrast.mean_abs > 0.1);
}

TEST_CASE("corollary decay rate: quadrupling N costs at least a factor 1.5") {
    Rng rng(308);
    auto rep = corollary_experiment(bern(), obs::symbol(), obs::symbol(), 1, 2, 16'000, 200, rng);
    // checkpoints include n/4 and n
    double at_quarter = 0.0, at_full = rep.mean_abs;
    for (size_t i = 0; i < rep.checkpoints.size(); ++i)
        if (rep.checkpoints[i] == 4000) at_quarter = rep.mean_abs_at[i];
    CHECK(at_quarter / at_full >= 1.5);
}

TEST_CASE("generic point identity on the rotation") {
    Rng rng(309);
    auto base = rot();

    // g1 = g2 = 1: both sides exactly 1
    auto ones = generic_point_check(base, obs::constant(1.0), obs::constant(1.0), 1, 2,
                                    make_torus_state({0.25}), 1000, 100, rng);
    CHECK(ones.lhs == doctest::Approx(1.0));
    CHECK(ones.rhs == doctest::Approx(1.0));

    // null case: distinct characters integrate to zero
    auto null_case = generic_point_check(base, obs::torus_cos(1), obs::torus_cos(1), 1, 2,
                                         make_torus_state({0.3}), 100'000, 20'000, rng);
    CHECK(std::abs(null_case.lhs) < 0.02);
    CHECK(null_case.abs_diff < 0.03);

    // resonant case at x = 0: both sides converge to 1/2
    auto resonant = generic_point_check(base, obs::torus_cos(2), obs::torus_cos(1), 1, 2,
                                        make_torus_state({0.0}), 100'000, 20'000, rng);
    CHECK(resonant.lhs == doctest::Approx(0.5).epsilon(0.03));
    CHECK(resonant.rhs == doctest::Approx(0.5).epsilon(0.03));
    CHECK(resonant.abs_diff < 0.03);
}

TEST_CASE("lift diagnostic: U^l of f(x) f(xi1) matches the product factor") {
    // route A: sample mu~ triples, treat (x, xi1, xi2) as a point of the
    // 3-fold product of rotations, estimate the seminorm of F = f(x) f(xi1)
    // with the mu~ sampler plugged into the monte carlo backend
    auto base = rot();
    SystemPtr triple =
        make_product(make_product(base, base), base);
    TildeMuSampler mu(base, 1, 2);
    auto sampler = [&mu](Rng& r) {
        auto t = mu.sample(r);
        ProductState inner;
        inner.parts = {t.x, t.xi1};
        ProductState outer;
        outer.parts = {State{std::move(inner)}, t.xi2};
        return State{std::move(outer)};
    };
    Observable f_pair = obs::component(0, obs::tensor(obs::torus_cos(1), obs::torus_cos(1)));

    // route B: the declared factor, the plain product of two rotations with
    // its own invariant sampler
    SystemPtr pair = make_product(base, base);
    Observable f_tensor = obs::tensor(obs::torus_cos(1), obs::torus_cos(1));

    Rng rng(310);
    for (int level : {1, 2}) {
        SeminormParams p = SeminormParams::defaults(level, 1, SeminormBackend::monte_carlo);
        p.n = 4000;
        p.m = 200;
        if (level == 2) p.h_schedule = {1, 128};
        Rng ra = rng.fork(static_cast<uint64_t>(level));
        Rng rb = rng.fork(static_cast<uint64_t>(level) + 50);
        auto via_tilde = seminorm_with_sampler(*triple, f_pair, p, ra, sampler);
        auto via_factor = seminorm(*pair, f_tensor, p, rb);
        double tol = 3.0 * std::sqrt(via_tilde.std_error * via_tilde.std_error +
                                     via_factor.std_error * via_factor.std_error) +
                     0.02;
        INFO("level ", level, ": tilde ", via_tilde.value, " factor ", via_factor.value);
        CHECK(std::abs(via_tilde.value - via_factor.value) <= tol);
    }
}
