#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ergolab {

struct RunOptions {
    std::filesystem::path out_dir = "out";
    std::optional<uint64_t> seed_override;
    bool force = false;
};

// Executes the experiment described by the config text, writes the outputs
// and a manifest into opts.out_dir, and returns the output file names
// (manifest last). expected_experiment, when nonempty, must match the
// config's "experiment" field. Throws ConfigError / InvariantError; the CLI
// maps these to exit codes 1 / 2.
std::vector<std::string> run_experiment(const std::string& config_text,
                                        const std::string& expected_experiment,
                                        const RunOptions& opts);

}  // namespace ergolab
