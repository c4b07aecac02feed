#pragma once

#include <cstdint>
#include <string>

#include "waveshell/config.hpp"

namespace waveshell {

/// Parsed command line for one batch run.
struct RunOptions {
    std::string subcommand;        ///< scaling|decay|mixed|measure|weyl|counterexample|selftest
    std::string config_path;       ///< optional key=value file
    std::string out_dir;           ///< optional; CLI --out wins over [output] out_dir
    std::string preset;            ///< r2t|rt2|t3|euclid2|euclid3 (where applicable)
    bool full_resolution = false;  ///< switch scaling presets to the full grids
    bool has_seed = false;
    std::uint64_t seed = 0;
};

/// Execute a subcommand: resolve configuration (preset defaults, then config
/// file, then CLI overrides), run the driver, write CSV results, a summary
/// and a manifest into the output directory.
/// Exit status: 0 success, 1 acceptance-band failure, 2 configuration or
/// precondition error.
int run(const RunOptions& options);

/// Fully-populated defaults for a preset + subcommand combination.
Config preset_config(const std::string& subcommand, const std::string& preset, bool full_resolution);

}  // namespace waveshell
