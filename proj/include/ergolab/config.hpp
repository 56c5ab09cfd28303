#pragma once

#include <string>

#include "ergolab/io.hpp"
#include "ergolab/observable.hpp"
#include "ergolab/seminorm.hpp"
#include "ergolab/system.hpp"

namespace ergolab {

// Config objects reject unknown keys outright: a silent typo corrupts an
// experiment, so the error names the offending key.
void check_keys(const ordered_json& obj, std::initializer_list<const char*> allowed,
                const std::string& where);

SystemSpec parse_system_spec(const ordered_json& j, const std::string& where);
Observable parse_observable(const ordered_json& j, const std::string& where);
SeminormParams parse_seminorm_params(const ordered_json& j, const std::string& where);

double parse_alpha(const ordered_json& j, const std::string& where);

}  // namespace ergolab
