#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sonolattice/commands.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    int resolution = 0;
    std::int64_t seed = -1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Pipeline configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "Output directory (overrides config)");
    cmd->add_option("--resolution", opts.resolution, "Grid resolution per axis (overrides config)");
    cmd->add_option("--seed", opts.seed, "Random seed (overrides config)");
}

sono::RunConfig load(const CommonOptions& opts) {
    sono::RunConfig config = sono::RunConfig::from_file(opts.config_path);
    if (!opts.out_dir.empty()) {
        config.output = opts.out_dir;
    }
    if (opts.resolution > 0) {
        config.resolution = opts.resolution;
    }
    if (opts.seed >= 0) {
        config.seed = static_cast<std::uint64_t>(opts.seed);
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sonolattice: periodic particle arrangements in standing acoustic waves"};
    app.require_subcommand(1);

    CommonOptions opts;
    CLI::App* coeffs = app.add_subcommand("coeffs", "Derive and print the potential coefficients");
    CLI::App* design = app.add_subcommand("design", "Design wavevectors for a Bravais class");
    CLI::App* predict = app.add_subcommand("predict", "Classify the minima of the potential");
    CLI::App* sample = app.add_subcommand("sample", "Evaluate the potential on a grid");
    CLI::App* verify = app.add_subcommand("verify", "Check predictions against the sampled field");
    CLI::App* relax = app.add_subcommand("relax", "Relax particles down the potential gradient");
    for (CLI::App* cmd : {coeffs, design, predict, sample, verify, relax}) {
        add_common(cmd, opts);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const sono::RunConfig config = load(opts);
        const std::filesystem::path out_dir = config.output;
        if (coeffs->parsed()) {
            return sono::cmd_coeffs(config, std::cout, std::cerr);
        }
        if (design->parsed()) {
            return sono::cmd_design(config, out_dir, std::cout, std::cerr);
        }
        if (predict->parsed()) {
            return sono::cmd_predict(config, out_dir, std::cout, std::cerr);
        }
        if (sample->parsed()) {
            return sono::cmd_sample(config, out_dir, std::cout, std::cerr);
        }
        if (verify->parsed()) {
            return sono::cmd_verify(config, out_dir, std::cout, std::cerr);
        }
        if (relax->parsed()) {
            return sono::cmd_relax(config, out_dir, std::cout, std::cerr);
        }
    } catch (const sono::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
