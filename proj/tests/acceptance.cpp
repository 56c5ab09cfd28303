// Acceptance suite: every criterion below runs at its stated size and
// tolerance and prints one PASS/FAIL line. The CLI binary path is argv[1],
// the shipped config directory argv[2] (both are wired in by CTest).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "ergolab/autocorr.hpp"
#include "ergolab/criterion.hpp"
#include "ergolab/experiments.hpp"
#include "ergolab/extension.hpp"
#include "ergolab/io.hpp"
#include "ergolab/seminorm.hpp"

#include "oracles.hpp"

using namespace ergolab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int g_failures = 0;

void run_criterion_case(int idx, const std::string& name, double budget_seconds,
                        const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= budget_seconds) {
        out.pass = false;
        out.detail += (out.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] criterion %d: %s (%.1f s / %.0f s)%s%s\n", out.pass ? "PASS" : "FAIL", idx,
                name.c_str(), secs, budget_seconds, out.detail.empty() ? "" : " -- ",
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++g_failures;
}

SystemPtr rot1() { return make_system(SystemSpec::rotation_of(irrational::sqrt2_minus_1)); }
SystemPtr rot2() { return make_system(SystemSpec::rotation_of(irrational::golden_frac)); }
SystemPtr bern() { return make_system(SystemSpec::bernoulli_pm1()); }

WeightSequence acceptance_weight(uint64_t seed) {
    Rng rng(seed);
    auto sys = bern();
    State x = sys->sample(rng);
    return make_weight(*sys, obs::symbol(), obs::symbol(), 1, 2, x, 110'000);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

Observable cyclic_table(std::vector<double> vals) {
    double bound = 0.0;
    for (double v : vals) bound = std::max(bound, std::abs(v));
    return Observable{"table", bound, [vals = std::move(vals)](const State& s) {
                          return vals.at(static_cast<size_t>(as_cyclic(s).j));
                      }};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::string config_dir = argc > 2 ? argv[2] : "configs";

    // 1. Seminorm oracle at full scale
    run_criterion_case(1, "U^2 of cos on the rotation hits 8^{-1/4} within 2%", 30.0,
                       [&](Outcome& out) {
        SeminormParams p;
        p.level = 2;
        p.c = 1;
        p.h_schedule = {1000, 1000};
        p.n = 100'000;
        Rng rng(0xACC1);
        auto est = seminorm(*rot1(), obs::torus_cos(1), p, rng);
        const double target = std::pow(8.0, -0.25);
        out.require(std::abs(est.value - target) <= 0.02 * target,
                    "estimate " + fmt(est.value) + " vs " + fmt(target));
        out.require(est.backend_used == "orbit", "expected orbit backend");

        // independent oracle: the literal nested Cesaro sum at a reduced
        // size agrees with the estimator to rounding
        SeminormParams ps;
        ps.level = 2;
        ps.c = 1;
        ps.h_schedule = {48, 48};
        ps.n = 3000;
        Rng r1(0xACC2), r2(0xACC2);
        auto small = seminorm(*rot1(), obs::torus_cos(1), ps, r1);
        State x0 = rot1()->sample(r2);
        Window v = orbit_window(*rot1(), x0, obs::torus_cos(1), 1 - 1 * 49 - 48,
                                3000 + 48 + 48);
        double brute = oracles::brute_force_u2_pow4(v, 48, 48, 1, 3000);
        out.require(std::abs(small.raw - brute) <= 1e-10 * std::max(1.0, std::abs(brute)),
                    "estimator disagrees with the literal sum");
    });

    // 2. Exact finite-system suite
    run_criterion_case(2, "cyclic U^l(T,c) exact to 1e-9 with divisibility monotonicity", 5.0,
                       [&](Outcome& out) {
        Rng rng(0xACC3);
        for (int64_t q : {2, 3, 4, 6}) {
            auto cyc = make_system(SystemSpec::cyclic_of(q));
            std::vector<double> table(static_cast<size_t>(q));
            for (int64_t j = 0; j < q; ++j)
                table[static_cast<size_t>(j)] =
                    std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(q)) +
                    0.5 * Rng(40 + static_cast<uint64_t>(q)).unit_at(static_cast<uint64_t>(j));
            auto f = cyclic_table(table);
            for (int level : {1, 2}) {
                std::vector<double> by_c;
                for (int64_t c : {1, 2, 3, 6}) {
                    auto est = seminorm(*cyc, f, SeminormParams::defaults(level, c), rng);
                    double want = oracles::cyclic_seminorm(table, q, level, c);
                    out.require(est.backend_used == "exact", "expected exact backend");
                    out.require(std::abs(est.value - want) <= 1e-9,
                                "q=" + std::to_string(q) + " l=" + std::to_string(level) +
                                    " c=" + std::to_string(c) + ": " + fmt(est.value) + " vs " +
                                    fmt(want));
                    by_c.push_back(est.value);
                }
                // divisibility pairs within {1,2,3,6}: 1|2, 1|3, 1|6, 2|6, 3|6
                const std::pair<size_t, size_t> pairs[] = {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}};
                for (auto [small_idx, large_idx] : pairs)
                    out.require(by_c[small_idx] <= by_c[large_idx] + 1e-9,
                                "divisibility monotonicity failed at q=" + std::to_string(q));
            }
        }
    });

    // 3. BFKO criterion discrimination
    run_criterion_case(3, "orthogonality criterion separates zero / alternating / bernoulli",
                       60.0, [&](Outcome& out) {
        BfkoParams bp;
        bp.horizon = 10'000;

        auto zero = external_weight(std::vector<double>(110'000, 0.0));
        auto rz = bfko_report(zero, bp);
        out.require(rz.criterion_value == 1.0 && rz.pass, "zero weight must pass at 1");

        std::vector<double> altv(110'000);
        for (size_t i = 0; i < altv.size(); ++i) altv[i] = (i + 1) % 2 == 0 ? 1.0 : -1.0;
        auto ra = bfko_report(external_weight(std::move(altv)), bp);
        out.require(ra.criterion_value == 0.0 && !ra.pass,
                    "alternating weight must fail at exactly 0");

        auto w = acceptance_weight(0xACC4);
        auto rb = bfko_report(w, bp);
        out.require(rb.criterion_value >= 0.95,
                    "bernoulli weight criterion value " + fmt(rb.criterion_value));
        out.require(rb.pass, "bernoulli weight must pass");
    });

    // 4. Return-times end-to-end
    run_criterion_case(4, "bernoulli weight averages settle on 5 independent targets", 300.0,
                       [&](Outcome& out) {
        auto w = acceptance_weight(0xACC4);
        struct Target {
            SystemPtr sys;
            Observable g;
            const char* name;
        };
        std::vector<Target> targets;
        targets.push_back({rot1(), obs::torus_cos(1), "rotation(sqrt2-1)"});
        targets.push_back({rot2(), obs::torus_cos(1), "rotation(golden)"});
        targets.push_back({make_system(SystemSpec::skew_of(irrational::sqrt2_minus_1)),
                           obs::torus_cos(1, 1), "skew"});
        targets.push_back({make_system(SystemSpec::cyclic_of(4)), obs::cyclic_cos(1), "cyclic"});
        targets.push_back({bern(), obs::symbol(), "bernoulli"});

        Rng rng(0xACC5);
        auto cps = default_checkpoints(100'000);
        for (auto& t : targets) {
            int good = 0;
            for (int i = 0; i < 20; ++i) {
                State y = t.sys->sample(rng);
                auto prof = weighted_average(w, *t.sys, t.g, y, cps);
                if (prof.tail_oscillation < 0.05) ++good;
            }
            out.require(good >= 19, std::string(t.name) + ": only " + std::to_string(good) +
                                        "/20 below 0.05");
        }
    });

    // 5. Corollary decay on the self-joining
    run_criterion_case(5, "fourfold average decays over bernoulli, resists over the resonance",
                       180.0, [&](Outcome& out) {
        Rng rng(0xACC6);
        auto decay = corollary_experiment(bern(), obs::symbol(), obs::symbol(), 1, 2, 100'000,
                                          100, rng);
        out.require(decay.mean_abs < 0.05, "bernoulli mean |A| = " + fmt(decay.mean_abs));

        Rng rng2(0xACC7);
        auto contrast = corollary_experiment(rot1(), obs::torus_cos(2), obs::torus_cos(1), 1, 2,
                                             100'000, 100, rng2);
        out.require(contrast.mean_abs > 0.1, "resonant mean |A| = " + fmt(contrast.mean_abs));
    });

    // 6. Fully-generic identity
    run_criterion_case(6, "orbit averages match the nu integrals at 10 sampled points", 120.0,
                       [&](Outcome& out) {
        Rng rng(0xACC8);
        auto base = rot1();
        int null_good = 0, res_good = 0;
        for (int i = 0; i < 10; ++i) {
            State x = base->sample(rng);
            Rng r1 = rng.fork(static_cast<uint64_t>(2 * i));
            Rng r2 = rng.fork(static_cast<uint64_t>(2 * i + 1));
            auto null_case = generic_point_check(base, obs::torus_cos(1), obs::torus_cos(1), 1,
                                                 2, x, 100'000, 20'000, r1);
            if (null_case.within(0.03)) ++null_good;
            auto resonant = generic_point_check(base, obs::torus_cos(2), obs::torus_cos(1), 1, 2,
                                                x, 100'000, 20'000, r2);
            if (resonant.within(0.03)) ++res_good;
        }
        out.require(null_good >= 9, "null case passed only " + std::to_string(null_good) + "/10");
        out.require(res_good >= 9,
                    "resonant case passed only " + std::to_string(res_good) + "/10");
    });

    // 7. Inequality suites
    run_criterion_case(7, "van der Corput, product seminorm and multilinear bounds", 300.0,
                       [&](Outcome& out) {
        // vdC over 100 random unit-vector sequences
        Rng rng(0xACC9);
        double min_slack = 1e300;
        for (int trial = 0; trial < 100; ++trial) {
            Rng child = rng.fork(static_cast<uint64_t>(trial));
            std::vector<std::vector<double>> u(10'000);
            size_t dim = 1 + trial % 3;
            for (auto& v : u) {
                v.resize(dim);
                double norm2 = 0.0;
                for (auto& c : v) {
                    c = 2.0 * child.next_unit() - 1.0;
                    norm2 += c * c;
                }
                if (norm2 == 0.0) {
                    v[0] = 1.0;
                } else {
                    for (auto& c : v) c /= std::sqrt(norm2);
                }
            }
            min_slack = std::min(min_slack, vdc_check(u, 100).slack);
        }
        out.require(min_slack >= -1e-9, "vdc min slack " + fmt(min_slack));

        // product seminorm inequality over the configured grid
        ProductIneqParams pp;
        pp.lhs_seminorm.n = 3000;
        pp.lhs_seminorm.m = 96;
        pp.rhs_seminorm.n = 30'000;
        pp.rhs_seminorm.h_schedule = {512, 512};
        struct PCase {
            SystemPtr x, y;
            Observable f, g;
            int64_t a, b, c;
            int l;
        };
        std::vector<PCase> pcases;
        pcases.push_back({rot1(), rot2(), obs::torus_cos(1), obs::torus_cos(1), 1, 1, 1, 1});
        pcases.push_back({rot1(), rot2(), obs::torus_cos(1), obs::torus_cos(1), 1, 2, 1, 1});
        pcases.push_back({rot1(), rot2(), obs::torus_cos(1), obs::torus_cos(1), 2, 1, 3, 1});
        pcases.push_back({bern(), rot2(), obs::symbol(), obs::torus_cos(1), 1, 1, 1, 1});
        pcases.push_back({rot1(), rot2(), obs::torus_cos(1), obs::torus_cos(1), 1, 1, 1, 2});
        int idx = 0;
        for (auto& pc : pcases) {
            ProductIneqParams use = pp;
            if (pc.l == 2) {
                use.rhs_seminorm = SeminormParams::defaults(3);
                use.rhs_seminorm.n = 20'000;
            }
            Rng r = rng.fork(0x7000 + static_cast<uint64_t>(idx++));
            auto rep = check_product_inequality(pc.x, pc.f, pc.y, pc.g, pc.a, pc.b, pc.c, pc.l,
                                                use, r);
            out.require(rep.holds, "product inequality case " + std::to_string(idx - 1) +
                                       " slack " + fmt(rep.slack));
        }

        // multilinear bound: the vanishing direction across the zoo
        MultilinearCheckParams mp;
        mp.n = 50'000;
        mp.m = 48;
        mp.rhs_seminorm.n = 50'000;
        struct MCase {
            SystemPtr sys;
            std::vector<Observable> fs;
            std::vector<int64_t> as;
            size_t i;
            SeminormParams rhs;
        };
        std::vector<MCase> mcases;
        mcases.push_back({rot1(), {obs::torus_cos(1)}, {2}, 0, SeminormParams::defaults(1)});
        mcases.push_back(
            {bern(), {obs::symbol(), obs::symbol()}, {1, 2}, 0, SeminormParams::defaults(2)});
        mcases.push_back({rot1(),
                          {obs::torus_cos(2), obs::torus_cos(1)},
                          {1, 2},
                          0,
                          SeminormParams::defaults(2)});
        mcases.push_back({bern(),
                          {obs::symbol(), obs::symbol(), obs::symbol()},
                          {1, 2, 3},
                          0,
                          SeminormParams::defaults(3)});
        idx = 0;
        for (auto& mcase : mcases) {
            MultilinearCheckParams use = mp;
            use.rhs_seminorm = mcase.rhs;
            use.rhs_seminorm.n = std::min<int64_t>(use.rhs_seminorm.n, 50'000);
            Rng r = rng.fork(0x8000 + static_cast<uint64_t>(idx++));
            auto rep = check_multilinear_estimate(mcase.sys, mcase.fs, mcase.as, mcase.i, use, r);
            out.require(rep.holds, "multilinear case " + std::to_string(idx - 1) + ": lhs " +
                                       fmt(rep.lhs) + " rhs " + fmt(rep.rhs));
        }
    });

    // 8. Determinism across thread counts (through the CLI)
    run_criterion_case(8, "byte-identical outputs for a fixed seed at any thread count", 120.0,
                       [&](Outcome& out) {
        if (cli.empty() || !fs::exists(cli)) {
            out.require(false, "CLI binary not supplied");
            return;
        }
        fs::path work = fs::temp_directory_path() / "ergolab_acceptance";
        fs::remove_all(work);
        fs::create_directories(work);

        const char* configs[] = {"seminorm_rotation.json", "criterion_bernoulli.json"};
        for (const char* cfg : configs) {
            fs::path cfg_path = fs::path(config_dir) / cfg;
            if (!fs::exists(cfg_path)) {
                out.require(false, "missing config " + cfg_path.string());
                continue;
            }
            fs::path out1 = work / (std::string(cfg) + ".t1");
            fs::path out4 = work / (std::string(cfg) + ".t4");
            std::string experiment =
                ordered_json::parse(read_text_file(cfg_path)).at("experiment");
            auto run_one = [&](const std::string& threads, const fs::path& dir) {
                std::string cmd = "ERGOLAB_THREADS=" + threads + " \"" + cli + "\" " +
                                  experiment + " --config " + cfg_path.string() + " --out " +
                                  dir.string() + " >/dev/null 2>&1";
                return std::system(cmd.c_str());
            };
            out.require(run_one("1", out1) == 0, std::string("run failed for ") + cfg);
            out.require(run_one("4", out4) == 0, std::string("rerun failed for ") + cfg);
            for (const auto& entry : fs::directory_iterator(out1)) {
                std::string name = entry.path().filename().string();
                if (name == "manifest.json") continue;  // carries wall-clock times
                std::string a = read_text_file(entry.path());
                std::string b = read_text_file(out4 / name);
                out.require(a == b, name + " differs between thread counts");
            }
        }
    });

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}
