#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ergolab/averages.hpp"
#include "ergolab/criterion.hpp"
#include "ergolab/extension.hpp"
#include "ergolab/seminorm.hpp"
#include "ergolab/weight.hpp"

namespace ergolab {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x);  // %.17g, round-trip exact

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

uint64_t fnv1a64(std::string_view bytes);
std::string hex_u64(uint64_t x);

ordered_json to_json(const SeminormEstimate& est);
ordered_json to_json(const VdcReport& rep);
ordered_json to_json(const CriterionReport& rep);
ordered_json to_json(const DecayReport& rep);
ordered_json to_json(const IdentityReport& rep);
ordered_json to_json(const InequalityReport& rep);

std::string profile_csv(const AverageProfile& prof);           // header: N,value
std::string correlation_table_csv(const CorrelationTable& t);  // header: N,h,gamma
std::string weight_csv(const WeightSequence& w);               // header: n,value
WeightSequence parse_weight_csv(const std::string& content);

}  // namespace ergolab
