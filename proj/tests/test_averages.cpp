#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ergolab/averages.hpp"
#include "ergolab/numeric.hpp"

#include "oracles.hpp"

using namespace ergolab;

namespace {

const SystemSpec kRot = SystemSpec::rotation_of(irrational::sqrt2_minus_1);

}  // namespace

TEST_CASE("birkhoff: constants, exact periodicity, equidistribution") {
    auto rot = make_system(kRot);
    State x0 = make_torus_state({0.0});

    auto ones = birkhoff_average(*rot, obs::constant(1.0), x0, {1, 10, 100, 1000});
    for (double v : ones.values) CHECK(v == doctest::Approx(1.0));

    auto cyc = make_system(SystemSpec::cyclic_of(4));
    auto ind = birkhoff_average(*cyc, obs::indicator_zero(), make_cyclic_state(0, 4), {400});
    CHECK(ind.last() == doctest::Approx(0.25).epsilon(1e-12));

    auto cosavg = birkhoff_average(*rot, obs::torus_cos(1), x0, default_checkpoints(100'000));
    CHECK(std::abs(cosavg.last()) < 0.01);
}

TEST_CASE("bilinear: validation, trivial, resonant and non-resonant limits") {
    auto rot = make_system(kRot);
    State x0 = make_torus_state({0.0});

    CHECK_THROWS_AS(
        bilinear_average(*rot, obs::torus_cos(1), obs::torus_cos(1), 1, 1, x0, {10}),
        ArgumentError);
    CHECK_THROWS_AS(
        bilinear_average(*rot, obs::torus_cos(1), obs::torus_cos(1), 0, 2, x0, {10}),
        ArgumentError);

    auto ones = bilinear_average(*rot, obs::constant(1.0), obs::constant(1.0), 1, 2, x0,
                                 {1, 7, 50});
    for (double v : ones.values) CHECK(v == doctest::Approx(1.0));

    // cos(2pi x) cos(2pi x): no resonance among frequencies (1, 2): limit 0
    auto nonres = bilinear_average(*rot, obs::torus_cos(1), obs::torus_cos(1), 1, 2, x0,
                                   default_checkpoints(1'000'000));
    CHECK(std::abs(nonres.last()) < 0.01);

    // cos(4pi x) against cos(2pi x) at (1, 2) resonates: limit cos(2pi x)/2
    auto res = bilinear_average(*rot, obs::torus_cos(2), obs::torus_cos(1), 1, 2, x0,
                                default_checkpoints(1'000'000));
    CHECK(res.last() == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(res.last() - 0.5) < 0.01);
}

TEST_CASE("weighted: trivial, resonant, and bernoulli-weight decay") {
    auto rot = make_system(kRot);
    State y0 = make_torus_state({0.0});

    WeightSequence ones = external_weight(std::vector<double>(1000, 1.0));
    auto prof = weighted_average(ones, *rot, obs::constant(1.0), y0, {1, 10, 1000});
    for (double v : prof.values) CHECK(v == doctest::Approx(1.0));

    // c_n = cos(2 pi n theta) against g = cos(2 pi y) on rotation by theta -> 1/2
    const double theta = irrational::sqrt2_minus_1;
    std::vector<double> cvals(100'000);
    for (size_t i = 0; i < cvals.size(); ++i)
        cvals[i] = std::cos(kTwoPi * mul_mod1(static_cast<double>(i + 1), theta));
    auto resonant = weighted_average(external_weight(std::move(cvals)), *rot, obs::torus_cos(1),
                                     y0, default_checkpoints(100'000));
    CHECK(resonant.last() == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(resonant.last() - 0.5) < 0.01);

    // bernoulli two-point weight against an independent rotation: decay
    auto bern = make_system(SystemSpec::bernoulli_pm1());
    Rng rng(5);
    State x = bern->sample(rng);
    auto w = make_weight(*bern, obs::symbol(), obs::symbol(), 1, 2, x, 100'000);
    auto decay = weighted_average(w, *rot, obs::torus_cos(1), y0, default_checkpoints(100'000));
    CHECK(std::abs(decay.last()) < 0.05);

    CHECK_THROWS_AS(weighted_average(ones, *rot, obs::constant(1.0), y0, {1, 2000}),
                    ArgumentError);
}

TEST_CASE("profiles stay inside the advertised bound") {
    auto bern = make_system(SystemSpec::bernoulli_pm1());
    Rng rng(6);
    for (int rep = 0; rep < 20; ++rep) {
        State x = bern->sample(rng);
        auto prof = bilinear_average(*bern, obs::symbol(), obs::symbol(), 1, 3, x,
                                     default_checkpoints(2000));
        CHECK(prof.bound == doctest::Approx(1.0));
        for (double v : prof.values) CHECK(std::abs(v) <= prof.bound + 1e-12);
    }
}

TEST_CASE("profile telescoping: A_N N - A_{N-1} (N-1) recovers the summand") {
    Rng rng(7);
    std::vector<double> vals(10'000);
    for (auto& v : vals) v = 2.0 * rng.next_unit() - 1.0;
    std::vector<int64_t> cps;
    for (int64_t n = 5000; n <= 5050; ++n) cps.push_back(n);
    auto prof = profile_of([&](int64_t n) { return vals[static_cast<size_t>(n - 1)]; }, cps, 1.0);
    for (size_t i = 1; i < cps.size(); ++i) {
        double lhs = prof.values[i] * static_cast<double>(cps[i]) -
                     prof.values[i - 1] * static_cast<double>(cps[i - 1]);
        CHECK(std::abs(lhs - vals[static_cast<size_t>(cps[i] - 1)]) < 1e-12);
    }
}

TEST_CASE("weighted average of the defining sequence equals bilinear (g = 1)") {
    auto rot = make_system(kRot);
    Rng rng(8);
    State x = rot->sample(rng);
    auto cps = default_checkpoints(20'000);
    auto w = make_weight(*rot, obs::torus_cos(1), obs::torus_cos(2), 1, -2, x, 20'000);
    auto via_weight = weighted_average(w, *rot, obs::constant(1.0), make_torus_state({0.0}), cps);
    auto direct = bilinear_average(*rot, obs::torus_cos(1), obs::torus_cos(2), 1, -2, x, cps);
    for (size_t i = 0; i < cps.size(); ++i) CHECK(via_weight.values[i] == direct.values[i]);
}

TEST_CASE("vdc examples") {
    // constant sequence: lhs = 1 and the bound stays above 1
    std::vector<std::vector<double>> ones(1000, std::vector<double>{1.0});
    auto rep = vdc_check(ones, 50);
    CHECK(rep.lhs == doctest::Approx(1.0));
    CHECK(rep.rhs >= 1.0);
    CHECK(rep.slack >= -1e-9);

    // alternating signs cancel: lhs = 0
    std::vector<std::vector<double>> alt(1000);
    for (size_t i = 0; i < alt.size(); ++i) alt[i] = {i % 2 == 0 ? 1.0 : -1.0};
    auto rep2 = vdc_check(alt, 50);
    CHECK(rep2.lhs == doctest::Approx(0.0));
    CHECK(rep2.slack >= -1e-9);

    CHECK_THROWS_AS(vdc_check(ones, 2000), ArgumentError);
}

TEST_CASE("vdc property: slack nonnegative over random unit vectors") {
    Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Rng child = rng.fork(static_cast<uint64_t>(trial));
        size_t dim = 1 + trial % 3;
        std::vector<std::vector<double>> u(10'000);
        for (auto& v : u) {
            v.resize(dim);
            double norm2 = 0.0;
            for (auto& c : v) {
                c = 2.0 * child.next_unit() - 1.0;
                norm2 += c * c;
            }
            double norm = std::sqrt(norm2);
            if (norm == 0.0) v[0] = 1.0;
            else for (auto& c : v) c /= norm;
        }
        auto rep = vdc_check(u, 100);
        CHECK(rep.slack >= -1e-9);
    }
}
