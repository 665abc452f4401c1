#pragma once

#include <string>

#include "output.hpp"
#include "svg.hpp"

namespace fockpulse {

enum class RunKind { simulate, train, analytic };

// A finished run with everything the writers need.
struct RunArtifacts {
    RunKind kind = RunKind::simulate;
    RunConfig config;
    int cycles = 1;
    SimulationResult sim;   // simulate / train
    AnalyticSeries ana;     // analytic
    OrderedJson summary;
};

RunArtifacts run_simulate(const std::string& config_json);
RunArtifacts run_train(const std::string& config_json, int cycles);

// Closed-form distribution trajectory. Accepts either a full run config
// (theta follows the configured pulse) or a bare request
// {"F": ..., "theta_max": ..., "points": ...} mapped over a linear ramp.
RunArtifacts run_analytic(const std::string& config_json);

// Kind-appropriate CSV (timeseries for simulate/train, distribution for
// analytic) and figure.
std::string primary_csv(const RunArtifacts& art);
std::string figure_svg(const RunArtifacts& art);

} // namespace fockpulse
