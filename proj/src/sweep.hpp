#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace fockpulse {

struct SweepSpec {
    std::string param_path;      // dot path into the config, e.g. "params.omega1"
    std::vector<double> values;  // non-empty grid
    int threads = 0;             // 0 = hardware concurrency
};

struct SweepRow {
    double value = 0.0;
    double n_out_infinity = 0.0;
    double peak_flux = 0.0;
    double r_sn = 0.0;
    std::vector<std::pair<std::string, bool>> validity;  // (condition, pass)
};

// Runs one simulation per grid value with spec.param_path overridden; rows
// come back in grid order regardless of completion order. Parallelism is
// capped by the FOCKPULSE_THREADS environment variable when set.
std::vector<SweepRow> run_sweep(const std::string& base_config_json, const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace fockpulse
