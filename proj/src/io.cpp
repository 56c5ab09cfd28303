#include "ergolab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ergolab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path.string());
    out << content;
    if (!out) throw ConfigError("write failed: " + path.string());
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex_u64(uint64_t x) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

namespace {

const char* backend_name(SeminormBackend b) {
    return b == SeminormBackend::orbit ? "orbit" : "monte_carlo";
}

}  // namespace

ordered_json to_json(const SeminormEstimate& est) {
    ordered_json params{{"level", est.params.level},
                        {"c", est.params.c},
                        {"h_schedule", est.params.h_schedule},
                        {"n", est.params.n},
                        {"m", est.params.m},
                        {"backend", backend_name(est.params.backend)}};
    return ordered_json{{"level", est.level},
                        {"c", est.c},
                        {"value", est.value},
                        {"stderr", est.std_error},
                        {"raw", est.raw},
                        {"raw_error", est.raw_error},
                        {"clamped", est.clamped},
                        {"backend_used", est.backend_used},
                        {"params", params}};
}

ordered_json to_json(const VdcReport& rep) {
    return ordered_json{{"lhs", rep.lhs}, {"rhs", rep.rhs},     {"H", rep.h},
                        {"N", rep.n},     {"slack", rep.slack}, {"max_norm_sq", rep.max_norm_sq}};
}

ordered_json to_json(const CriterionReport& rep) {
    ordered_json densities = ordered_json::array();
    for (const auto& e : rep.densities)
        densities.push_back(ordered_json{
            {"delta", e.delta}, {"L", e.big_l}, {"R", e.big_r}, {"density", e.density}});
    ordered_json schedule = ordered_json::array();
    for (auto [l, r] : rep.schedule) schedule.push_back(ordered_json::array({l, r}));
    return ordered_json{{"delta_grid", rep.delta_grid},
                        {"schedule", schedule},
                        {"horizon", rep.horizon},
                        {"densities", densities},
                        {"criterion_value", rep.criterion_value},
                        {"tol", rep.tol},
                        {"pass", rep.pass}};
}

ordered_json to_json(const DecayReport& rep) {
    return ordered_json{{"n", rep.n},
                        {"samples", rep.samples},
                        {"checkpoints", rep.checkpoints},
                        {"mean_abs_at", rep.mean_abs_at},
                        {"mean_abs", rep.mean_abs},
                        {"mean_tail_oscillation", rep.mean_tail_oscillation}};
}

ordered_json to_json(const IdentityReport& rep) {
    return ordered_json{{"lhs", rep.lhs},
                        {"rhs", rep.rhs},
                        {"abs_diff", rep.abs_diff},
                        {"lhs_oscillation", rep.lhs_oscillation},
                        {"rhs_stderr", rep.rhs_std_error},
                        {"n", rep.n},
                        {"mc", rep.mc}};
}

ordered_json to_json(const InequalityReport& rep) {
    return ordered_json{{"lhs", rep.lhs},
                        {"rhs", rep.rhs},
                        {"lhs_error", rep.lhs_error},
                        {"rhs_error", rep.rhs_error},
                        {"ratio", std::isfinite(rep.ratio) ? ordered_json(rep.ratio)
                                                           : ordered_json("inf")},
                        {"slack", rep.slack},
                        {"holds", rep.holds},
                        {"detail", rep.detail}};
}

std::string profile_csv(const AverageProfile& prof) {
    std::string out = "N,value\n";
    for (size_t i = 0; i < prof.checkpoints.size(); ++i) {
        out += std::to_string(prof.checkpoints[i]);
        out += ',';
        out += format_double(prof.values[i]);
        out += '\n';
    }
    return out;
}

std::string correlation_table_csv(const CorrelationTable& t) {
    std::string out = "N,h,gamma\n";
    for (size_t i = 0; i < t.n_list.size(); ++i) {
        for (int64_t h = 0; h <= t.h_max; ++h) {
            out += std::to_string(t.n_list[i]);
            out += ',';
            out += std::to_string(h);
            out += ',';
            out += format_double(t.gamma[i][static_cast<size_t>(h)]);
            out += '\n';
        }
    }
    return out;
}

std::string weight_csv(const WeightSequence& w) {
    std::string out = "n,value\n";
    for (int64_t n = 1; n <= w.size(); ++n) {
        out += std::to_string(n);
        out += ',';
        out += format_double(w.at(n));
        out += '\n';
    }
    return out;
}

WeightSequence parse_weight_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty weight CSV");
    // tolerate a trailing \r from foreign line endings
    auto strip = [](std::string& s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    };
    strip(line);
    if (line != "n,value") throw ConfigError("weight CSV must start with header 'n,value'");
    std::vector<double> values;
    int64_t expect = 1;
    while (std::getline(in, line)) {
        strip(line);
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) throw ConfigError("weight CSV row missing comma: " + line);
        int64_t n = std::stoll(line.substr(0, comma));
        double v = std::stod(line.substr(comma + 1));
        if (n != expect) throw ConfigError("weight CSV rows must be consecutive from n=1");
        ++expect;
        values.push_back(v);
    }
    return external_weight(std::move(values));
}

}  // namespace ergolab
