#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ergolab/errors.hpp"
#include "ergolab/experiments.hpp"
#include "ergolab/io.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out = "out";
    uint64_t seed = 0;
    bool seed_set = false;
    bool force = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "experiment config file (JSON)")->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--seed", args.seed, "seed override")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_flag("--force", args.force, "override the cost caps");
}

int run(const std::string& experiment, const CommonArgs& args) {
    ergolab::RunOptions opts;
    opts.out_dir = args.out;
    opts.force = args.force;
    if (args.seed_set) opts.seed_override = args.seed;
    auto outputs =
        ergolab::run_experiment(ergolab::read_text_file(args.config), experiment, opts);
    for (const auto& name : outputs) std::printf("wrote %s\n", (args.out + "/" + name).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ergolab: numerical experiments on uniformity seminorms, orthogonality weights "
                 "and weighted ergodic averages"};
    app.require_subcommand(1);

    const char* names[] = {"seminorm", "criterion", "rtt", "vdc", "extension", "generic"};
    const char* blurbs[] = {
        "estimate a uniformity seminorm U^l(T, c)",
        "build a two-point weight and evaluate the orthogonality criterion",
        "return-times run: weight -> criterion -> weighted averages over targets",
        "finitary van der Corput inequality sweep",
        "fourfold decay experiment on the 3-fold self-joining",
        "fully-generic point identity check",
    };

    CommonArgs args[6];
    for (int i = 0; i < 6; ++i) add_common(app.add_subcommand(names[i], blurbs[i]), args[i]);

    CLI11_PARSE(app, argc, argv);

    std::string chosen;
    int idx = -1;
    for (int i = 0; i < 6; ++i) {
        if (app.get_subcommand(names[i])->parsed()) {
            chosen = names[i];
            idx = i;
        }
    }

    try {
        return run(chosen, args[idx]);
    } catch (const ergolab::InvariantError& e) {
        std::fprintf(stderr, "invariant violated: %s\n", e.what());
        return 2;
    } catch (const ergolab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 70;
    }
}
