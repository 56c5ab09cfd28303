#include "ergolab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>

#include "ergolab/config.hpp"
#include "ergolab/criterion.hpp"
#include "ergolab/extension.hpp"
#include "ergolab/io.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

namespace {

constexpr const char* kVersion = "ergolab 0.1.0";

std::string utc_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void refuse_cost(double work, double cap, bool force, const std::string& what) {
    if (work > cap && !force)
        throw ConfigError("cost cap exceeded for " + what + " (estimated work " +
                          std::to_string(static_cast<long long>(work)) + " > cap " +
                          std::to_string(static_cast<long long>(cap)) +
                          "); rerun with --force to override");
}

WeightSequence build_weight(const ordered_json& j, int64_t n_total, Rng& rng,
                            const std::string& where) {
    if (!j.is_object() || !j.contains("source"))
        throw ConfigError(where + ": weight spec needs a \"source\"");
    std::string source = j.at("source").get<std::string>();
    if (source == "bilinear") {
        check_keys(j, {"source", "system", "f1", "f2", "a1", "a2"}, where);
        for (const char* k : {"system", "f1", "f2", "a1", "a2"})
            if (!j.contains(k)) throw ConfigError(where + ": missing \"" + std::string(k) + "\"");
        SystemPtr sys = make_system(parse_system_spec(j.at("system"), where + ".system"));
        Observable f1 = parse_observable(j.at("f1"), where + ".f1");
        Observable f2 = parse_observable(j.at("f2"), where + ".f2");
        State x = sys->sample(rng);
        return make_weight(*sys, f1, f2, j.at("a1").get<int64_t>(), j.at("a2").get<int64_t>(), x,
                           n_total);
    }
    if (source == "csv") {
        check_keys(j, {"source", "path"}, where);
        if (!j.contains("path")) throw ConfigError(where + ": csv weight needs \"path\"");
        WeightSequence w = parse_weight_csv(read_text_file(j.at("path").get<std::string>()));
        require_arg(w.size() >= n_total, where + ": csv weight shorter than required length");
        return w;
    }
    throw ConfigError(where + ": unknown weight source \"" + source + "\"");
}

BfkoParams parse_bfko(const ordered_json& top) {
    BfkoParams bp;
    if (top.contains("horizon")) bp.horizon = top.at("horizon").get<int64_t>();
    if (top.contains("delta_grid")) bp.delta_grid = top.at("delta_grid").get<std::vector<double>>();
    if (top.contains("tol")) bp.tol = top.at("tol").get<double>();
    if (top.contains("schedule")) {
        for (const auto& pair : top.at("schedule")) {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError("schedule entries must be [L, R] pairs");
            bp.schedule.emplace_back(pair[0].get<int64_t>(), pair[1].get<int64_t>());
        }
    }
    return bp;
}

using Outputs = std::vector<std::pair<std::string, std::string>>;  // name -> content

Outputs run_seminorm_exp(const ordered_json& top, Rng& rng, bool force) {
    check_keys(top, {"experiment", "seed", "system", "observable", "params"}, "config");
    for (const char* k : {"system", "observable", "params"})
        if (!top.contains(k)) throw ConfigError("seminorm config missing \"" + std::string(k) + "\"");
    SystemPtr sys = make_system(parse_system_spec(top.at("system"), "system"));
    Observable f = parse_observable(top.at("observable"), "observable");
    SeminormParams params = parse_seminorm_params(top.at("params"), "params");
    refuse_cost(params.work_estimate(), 5e9, force, "seminorm");

    SeminormEstimate est = seminorm(*sys, f, params, rng);
    ordered_json j = to_json(est);
    j["system"] = sys->name();
    j["observable"] = f.name;
    return {{"estimate.json", j.dump(2) + "\n"}};
}

Outputs run_criterion_exp(const ordered_json& top, Rng& rng, bool force) {
    check_keys(top,
               {"experiment", "seed", "system", "f1", "f2", "a1", "a2", "n_max", "horizon",
                "delta_grid", "schedule", "tol", "write_weight"},
               "config");
    for (const char* k : {"system", "f1", "f2", "a1", "a2"})
        if (!top.contains(k)) throw ConfigError("criterion config missing \"" + std::string(k) + "\"");
    int64_t n_max = top.value("n_max", int64_t{100'000});
    BfkoParams bp = parse_bfko(top);
    refuse_cost(static_cast<double>(n_max + bp.horizon) * 8.0, 2e8, force, "criterion");

    SystemPtr sys = make_system(parse_system_spec(top.at("system"), "system"));
    Observable f1 = parse_observable(top.at("f1"), "f1");
    Observable f2 = parse_observable(top.at("f2"), "f2");
    State x = sys->sample(rng);
    WeightSequence w = make_weight(*sys, f1, f2, top.at("a1").get<int64_t>(),
                                   top.at("a2").get<int64_t>(), x, n_max + bp.horizon);

    CriterionReport rep = bfko_report(w, bp);

    std::set<int64_t> ns;
    for (auto [l, r] : rep.schedule) {
        ns.insert(l);
        ns.insert(r);
    }
    CorrelationTable table =
        correlation_table(w, std::vector<int64_t>(ns.begin(), ns.end()), bp.horizon);

    ordered_json j = to_json(rep);
    j["weight_provenance"] = w.provenance().describe();
    Outputs out{{"criterion_report.json", j.dump(2) + "\n"},
                {"correlation_table.csv", correlation_table_csv(table)}};
    if (top.value("write_weight", false)) out.emplace_back("weight.csv", weight_csv(w));
    return out;
}

Outputs run_rtt_exp(const ordered_json& top, Rng& rng, bool force) {
    check_keys(top,
               {"experiment", "seed", "weight", "n_max", "horizon", "delta_grid", "schedule",
                "tol", "criterion_tol", "targets"},
               "config");
    if (!top.contains("weight") || !top.contains("targets"))
        throw ConfigError("rtt config needs \"weight\" and \"targets\"");
    int64_t n_max = top.value("n_max", int64_t{100'000});
    double tol = top.value("tol", 0.05);
    BfkoParams bp = parse_bfko(top);
    if (top.contains("criterion_tol")) bp.tol = top.at("criterion_tol").get<double>();

    int64_t total_y = 0;
    for (const auto& t : top.at("targets")) {
        check_keys(t, {"system", "g", "y_count"}, "targets[]");
        total_y += t.value("y_count", int64_t{20});
    }
    refuse_cost(static_cast<double>(n_max) * static_cast<double>(total_y), 2e9, force, "rtt");

    WeightSequence w = build_weight(top.at("weight"), n_max + bp.horizon, rng, "weight");
    CriterionReport crit = bfko_report(w, bp);

    ordered_json targets_json = ordered_json::array();
    Outputs out;
    std::vector<int64_t> cps = default_checkpoints(n_max);
    size_t target_idx = 0;
    for (const auto& t : top.at("targets")) {
        SystemPtr sys = make_system(parse_system_spec(t.at("system"), "targets[].system"));
        Observable g = parse_observable(t.at("g"), "targets[].g");
        int64_t y_count = t.value("y_count", int64_t{20});
        require_arg(y_count >= 1, "y_count must be >= 1");

        std::vector<double> oscs(static_cast<size_t>(y_count));
        std::vector<State> ys;
        ys.reserve(static_cast<size_t>(y_count));
        for (int64_t i = 0; i < y_count; ++i) ys.push_back(sys->sample(rng));
        std::string first_profile;
        parallel_for(y_count, [&](int64_t i) {
            auto prof = weighted_average(w, *sys, g, ys[static_cast<size_t>(i)], cps);
            oscs[static_cast<size_t>(i)] = prof.tail_oscillation;
            if (i == 0) first_profile = profile_csv(prof);
        });
        int64_t passed = 0;
        double max_osc = 0.0, mean_osc = 0.0;
        for (double o : oscs) {
            if (o < tol) ++passed;
            max_osc = std::max(max_osc, o);
            mean_osc += o;
        }
        mean_osc /= static_cast<double>(y_count);
        targets_json.push_back(ordered_json{{"system", sys->name()},
                                            {"g", g.name},
                                            {"y_count", y_count},
                                            {"passed", passed},
                                            {"pass_fraction",
                                             static_cast<double>(passed) /
                                                 static_cast<double>(y_count)},
                                            {"max_tail_oscillation", max_osc},
                                            {"mean_tail_oscillation", mean_osc}});
        out.emplace_back("profile_target" + std::to_string(target_idx) + ".csv", first_profile);
        ++target_idx;
    }

    ordered_json j{{"weight_provenance", w.provenance().describe()},
                   {"n_max", n_max},
                   {"tol", tol},
                   {"criterion", to_json(crit)},
                   {"targets", targets_json}};
    out.insert(out.begin(), {"rtt_report.json", j.dump(2) + "\n"});
    return out;
}

Outputs run_vdc_exp(const ordered_json& top, Rng& rng, bool force) {
    check_keys(top, {"experiment", "seed", "n", "h", "dim", "trials"}, "config");
    int64_t n = top.value("n", int64_t{10'000});
    int64_t h = top.value("h", int64_t{100});
    int64_t dim = top.value("dim", int64_t{2});
    int64_t trials = top.value("trials", int64_t{100});
    require_arg(dim >= 1 && dim <= 16, "vdc dim must be in [1, 16]");
    require_arg(trials >= 1, "vdc trials must be >= 1");
    refuse_cost(static_cast<double>(n) * static_cast<double>(h) * static_cast<double>(trials),
                5e9, force, "vdc");

    ordered_json runs = ordered_json::array();
    double min_slack = 1e300;
    for (int64_t t = 0; t < trials; ++t) {
        Rng child = rng.fork(static_cast<uint64_t>(t));
        // random unit vectors
        std::vector<std::vector<double>> u(static_cast<size_t>(n));
        for (auto& v : u) {
            v.resize(static_cast<size_t>(dim));
            double norm = 0.0;
            for (double& c : v) {
                // Box-Muller from two counter draws
                double u1 = std::max(child.next_unit(), 1e-300);
                double u2 = child.next_unit();
                c = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
                norm += c * c;
            }
            norm = std::sqrt(norm);
            if (norm == 0.0) {
                v[0] = 1.0;
            } else {
                for (double& c : v) c /= norm;
            }
        }
        VdcReport rep = vdc_check(u, h);
        min_slack = std::min(min_slack, rep.slack);
        if (t < 8) runs.push_back(to_json(rep));  // keep the report readable
    }
    ordered_json j{{"trials", trials}, {"n", n},          {"h", h},
                   {"dim", dim},       {"min_slack", min_slack}, {"first_runs", runs}};
    return {{"vdc_report.json", j.dump(2) + "\n"}};
}

Outputs run_extension_exp(const ordered_json& top, Rng& rng, bool force) {
    check_keys(top, {"experiment", "seed", "base", "f1", "f2", "a1", "a2", "n", "samples"},
               "config");
    for (const char* k : {"base", "f1", "f2", "a1", "a2"})
        if (!top.contains(k)) throw ConfigError("extension config missing \"" + std::string(k) + "\"");
    int64_t n = top.value("n", int64_t{100'000});
    int64_t samples = top.value("samples", int64_t{100});
    refuse_cost(static_cast<double>(n) * static_cast<double>(samples) * 4.0, 4e9, force,
                "extension");

    SystemPtr base = make_system(parse_system_spec(top.at("base"), "base"));
    Observable f1 = parse_observable(top.at("f1"), "f1");
    Observable f2 = parse_observable(top.at("f2"), "f2");
    DecayReport rep = corollary_experiment(base, f1, f2, top.at("a1").get<int64_t>(),
                                           top.at("a2").get<int64_t>(), n, samples, rng);
    ordered_json j = to_json(rep);
    j["base"] = base->name();
    return {{"decay_report.json", j.dump(2) + "\n"}};
}

Outputs run_generic_exp(const ordered_json& top, Rng& rng, bool force) {
    check_keys(top,
               {"experiment", "seed", "base", "g1", "g2", "a1", "a2", "n", "mc", "x_count", "tol"},
               "config");
    for (const char* k : {"base", "g1", "g2", "a1", "a2"})
        if (!top.contains(k)) throw ConfigError("generic config missing \"" + std::string(k) + "\"");
    int64_t n = top.value("n", int64_t{100'000});
    int64_t mc = top.value("mc", int64_t{20'000});
    int64_t x_count = top.value("x_count", int64_t{10});
    double tol = top.value("tol", 0.03);
    refuse_cost(static_cast<double>(x_count) * (static_cast<double>(n) + static_cast<double>(mc)),
                2e9, force, "generic");

    SystemPtr base = make_system(parse_system_spec(top.at("base"), "base"));
    Observable g1 = parse_observable(top.at("g1"), "g1");
    Observable g2 = parse_observable(top.at("g2"), "g2");
    int64_t a1 = top.at("a1").get<int64_t>();
    int64_t a2 = top.at("a2").get<int64_t>();

    ordered_json points = ordered_json::array();
    int64_t passed = 0;
    for (int64_t i = 0; i < x_count; ++i) {
        State x = base->sample(rng);
        Rng child = rng.fork(0x67656eull + static_cast<uint64_t>(i));
        IdentityReport rep = generic_point_check(base, g1, g2, a1, a2, x, n, mc, child);
        if (rep.within(tol)) ++passed;
        points.push_back(to_json(rep));
    }
    ordered_json j{{"base", base->name()},
                   {"g1", g1.name},
                   {"g2", g2.name},
                   {"a1", a1},
                   {"a2", a2},
                   {"tol", tol},
                   {"x_count", x_count},
                   {"passed", passed},
                   {"points", points}};
    return {{"identity_report.json", j.dump(2) + "\n"}};
}

}  // namespace

std::vector<std::string> run_experiment(const std::string& config_text,
                                        const std::string& expected_experiment,
                                        const RunOptions& opts) {
    ordered_json top;
    try {
        top = ordered_json::parse(config_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!top.is_object() || !top.contains("experiment"))
        throw ConfigError("config needs an \"experiment\" field");
    std::string experiment = top.at("experiment").get<std::string>();
    if (!expected_experiment.empty() && experiment != expected_experiment)
        throw ConfigError("config experiment \"" + experiment + "\" does not match subcommand \"" +
                          expected_experiment + "\"");

    uint64_t seed = top.value("seed", uint64_t{0});
    if (opts.seed_override) seed = *opts.seed_override;
    Rng rng(seed);

    std::string started = utc_now();
    Outputs outputs;
    if (experiment == "seminorm")
        outputs = run_seminorm_exp(top, rng, opts.force);
    else if (experiment == "criterion")
        outputs = run_criterion_exp(top, rng, opts.force);
    else if (experiment == "rtt")
        outputs = run_rtt_exp(top, rng, opts.force);
    else if (experiment == "vdc")
        outputs = run_vdc_exp(top, rng, opts.force);
    else if (experiment == "extension")
        outputs = run_extension_exp(top, rng, opts.force);
    else if (experiment == "generic")
        outputs = run_generic_exp(top, rng, opts.force);
    else
        throw ConfigError("unknown experiment \"" + experiment + "\"");

    std::filesystem::create_directories(opts.out_dir);
    std::vector<std::string> names;
    for (const auto& [name, content] : outputs) {
        write_text_file(opts.out_dir / name, content);
        names.push_back(name);
    }

    ordered_json manifest{{"config_hash", hex_u64(fnv1a64(config_text))},
                          {"seed", seed},
                          {"code_version", kVersion},
                          {"started_utc", started},
                          {"finished_utc", utc_now()},
                          {"outputs", names}};
    write_text_file(opts.out_dir / "manifest.json", manifest.dump(2) + "\n");
    names.push_back("manifest.json");
    return names;
}

}  // namespace ergolab
