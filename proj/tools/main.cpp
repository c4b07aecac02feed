#include <CLI11.hpp>

#include <string>

#include "waveshell/run.hpp"
#include "waveshell/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"waveshell: restricted-data Strichartz measurements on R^m x T^n grids"};
    app.set_version_flag("--version", waveshell::kVersion);
    app.require_subcommand(1);

    waveshell::RunOptions opt;
    std::string config, out, preset;
    bool full = false;
    std::uint64_t seed = 0;
    bool seed_given = false;

    const auto add_common = [&](CLI::App* sub, bool takes_preset) {
        sub->add_option("--config", config, "key=value configuration file");
        sub->add_option("--out", out, "output directory (default: out)");
        if (takes_preset)
            sub->add_option("--preset", preset, "geometry preset: r2t|rt2|t3|euclid2|euclid3");
        sub->add_flag("--full-resolution", full, "use the full-size grids instead of the reduced ones");
        sub->add_option("--seed", seed, "base seed override")->each([&](const std::string&) {
            seed_given = true;
        });
    };

    add_common(app.add_subcommand("scaling", "shell-data L4/L2 scaling sweep over N"), true);
    add_common(app.add_subcommand("decay", "sup-norm decay of a strip-restricted packet"), true);
    add_common(app.add_subcommand("mixed", "mixed-norm boundedness for translated strip data"), true);
    add_common(app.add_subcommand("measure", "quadric-shell measure and slice-sum bounds"), false);
    add_common(app.add_subcommand("weyl", "exponential-sum moment growth"), false);
    add_common(app.add_subcommand("counterexample", "indicator data and its factorized lower bound"),
               false);
    add_common(app.add_subcommand("selftest", "quick identity checks"), false);

    CLI11_PARSE(app, argc, argv);

    opt.subcommand = app.get_subcommands().front()->get_name();
    opt.config_path = config;
    opt.out_dir = out;
    opt.preset = preset;
    opt.full_resolution = full;
    opt.has_seed = seed_given;
    opt.seed = seed;
    return waveshell::run(opt);
}
