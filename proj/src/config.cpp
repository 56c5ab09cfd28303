#include "ergolab/config.hpp"

#include <set>

#include "ergolab/numeric.hpp"

namespace ergolab {

void check_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (!ok.count(item.key()))
            throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
}

double parse_alpha(const ordered_json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "sqrt2m1") return irrational::sqrt2_minus_1;
        if (s == "golden") return irrational::golden_frac;
        throw ConfigError(where + ": unknown named frequency \"" + s +
                          "\" (use sqrt2m1, golden, or a number)");
    }
    throw ConfigError(where + ": frequency must be a number or a named constant");
}

SystemSpec parse_system_spec(const ordered_json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError(where + ": system spec needs a \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "rotation") {
        check_keys(j, {"kind", "alpha"}, where);
        if (!j.contains("alpha")) throw ConfigError(where + ": rotation needs \"alpha\"");
        return SystemSpec::rotation_of(parse_alpha(j.at("alpha"), where));
    }
    if (kind == "torus_rotation") {
        check_keys(j, {"kind", "alphas"}, where);
        if (!j.contains("alphas")) throw ConfigError(where + ": torus_rotation needs \"alphas\"");
        std::vector<double> alphas;
        for (const auto& a : j.at("alphas")) alphas.push_back(parse_alpha(a, where));
        return SystemSpec::torus_rotation_of(std::move(alphas));
    }
    if (kind == "skew_product") {
        check_keys(j, {"kind", "alpha"}, where);
        if (!j.contains("alpha")) throw ConfigError(where + ": skew_product needs \"alpha\"");
        return SystemSpec::skew_of(parse_alpha(j.at("alpha"), where));
    }
    if (kind == "bernoulli") {
        check_keys(j, {"kind", "symbol_values", "probs"}, where);
        std::vector<double> values = {1.0, -1.0};
        std::vector<double> probs = {0.5, 0.5};
        if (j.contains("symbol_values")) values = j.at("symbol_values").get<std::vector<double>>();
        if (j.contains("probs")) probs = j.at("probs").get<std::vector<double>>();
        return SystemSpec::bernoulli_of(std::move(values), std::move(probs));
    }
    if (kind == "cyclic") {
        check_keys(j, {"kind", "q"}, where);
        if (!j.contains("q")) throw ConfigError(where + ": cyclic needs \"q\"");
        return SystemSpec::cyclic_of(j.at("q").get<int64_t>());
    }
    if (kind == "product") {
        check_keys(j, {"kind", "left", "right"}, where);
        if (!j.contains("left") || !j.contains("right"))
            throw ConfigError(where + ": product needs \"left\" and \"right\"");
        return SystemSpec::product_of(parse_system_spec(j.at("left"), where + ".left"),
                                      parse_system_spec(j.at("right"), where + ".right"));
    }
    if (kind == "power") {
        check_keys(j, {"kind", "base", "c"}, where);
        if (!j.contains("base") || !j.contains("c"))
            throw ConfigError(where + ": power needs \"base\" and \"c\"");
        return SystemSpec::power_of(parse_system_spec(j.at("base"), where + ".base"),
                                    j.at("c").get<int64_t>());
    }
    throw ConfigError(where + ": unknown system kind \"" + kind + "\"");
}

Observable parse_observable(const ordered_json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError(where + ": observable spec needs a \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "constant") {
        check_keys(j, {"kind", "value"}, where);
        return obs::constant(j.value("value", 1.0));
    }
    if (kind == "torus_cos" || kind == "torus_sin") {
        check_keys(j, {"kind", "harmonic", "coord"}, where);
        int harmonic = j.value("harmonic", 1);
        size_t coord = j.value("coord", size_t{0});
        return kind == "torus_cos" ? obs::torus_cos(harmonic, coord)
                                   : obs::torus_sin(harmonic, coord);
    }
    if (kind == "coordinate") {
        check_keys(j, {"kind", "coord"}, where);
        return obs::coordinate(j.value("coord", size_t{0}));
    }
    if (kind == "cyclic_cos") {
        check_keys(j, {"kind", "harmonic"}, where);
        return obs::cyclic_cos(j.value("harmonic", 1));
    }
    if (kind == "indicator_zero") {
        check_keys(j, {"kind"}, where);
        return obs::indicator_zero();
    }
    if (kind == "symbol") {
        check_keys(j, {"kind", "values", "probs"}, where);
        std::vector<double> values = {1.0, -1.0};
        std::vector<double> probs = {0.5, 0.5};
        if (j.contains("values")) values = j.at("values").get<std::vector<double>>();
        if (j.contains("probs")) probs = j.at("probs").get<std::vector<double>>();
        return obs::symbol(std::move(values), std::move(probs));
    }
    if (kind == "tensor") {
        check_keys(j, {"kind", "left", "right"}, where);
        if (!j.contains("left") || !j.contains("right"))
            throw ConfigError(where + ": tensor needs \"left\" and \"right\"");
        return obs::tensor(parse_observable(j.at("left"), where + ".left"),
                           parse_observable(j.at("right"), where + ".right"));
    }
    if (kind == "component") {
        check_keys(j, {"kind", "index", "inner"}, where);
        if (!j.contains("inner")) throw ConfigError(where + ": component needs \"inner\"");
        return obs::component(j.value("index", size_t{0}),
                              parse_observable(j.at("inner"), where + ".inner"));
    }
    throw ConfigError(where + ": unknown observable kind \"" + kind + "\"");
}

SeminormParams parse_seminorm_params(const ordered_json& j, const std::string& where) {
    check_keys(j, {"level", "c", "h_schedule", "n", "m", "backend", "batches"}, where);
    int level = j.value("level", 2);
    int64_t c = j.value("c", int64_t{1});
    SeminormBackend backend = SeminormBackend::orbit;
    if (j.contains("backend")) {
        std::string b = j.at("backend").get<std::string>();
        if (b == "orbit")
            backend = SeminormBackend::orbit;
        else if (b == "monte_carlo")
            backend = SeminormBackend::monte_carlo;
        else
            throw ConfigError(where + ": unknown backend \"" + b + "\"");
    }
    SeminormParams p = SeminormParams::defaults(level, c, backend);
    if (j.contains("h_schedule")) p.h_schedule = j.at("h_schedule").get<std::vector<int64_t>>();
    if (j.contains("n")) p.n = j.at("n").get<int64_t>();
    if (j.contains("m")) p.m = j.at("m").get<int64_t>();
    if (j.contains("batches")) p.batches = j.at("batches").get<int>();
    p.validate();
    return p;
}

}  // namespace ergolab
