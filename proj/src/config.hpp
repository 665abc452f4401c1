#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynamics.hpp"

namespace fockpulse {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// A fully resolved run configuration. Frequencies arrive in MHz with a
// mandatory times_2pi flag and are stored internally in rad/us; the raw
// input values are kept for the config echo.
struct RunConfig {
    AtomSpec atom;
    std::optional<std::string> atom_preset;

    PhysicalParams params;  // rad/us
    bool times_2pi = true;
    double g_in = 0.0, k_in = 0.0, gamma_sp_in = 0.0, omega1_in = 0.0, delta_in = 0.0;
    std::optional<double> omega2_in;

    std::vector<ScheduledPulse> pulses;  // first center fixed; delays resolved
    double train_delay = 0.0;            // delay used when replicating into a train
    bool explicit_pulse_list = false;

    ModeFlags mode;
    InitialState initial;
    IntegratorOptions integrator;

    // Effective configuration (defaults applied) in the input schema.
    OrderedJson echo() const;
};

RunConfig parse_run_config(const Json& doc);
RunConfig parse_run_config_text(const std::string& text);

// Schedule for a run; cycles > 1 replicates a single-pulse configuration
// into an alternating-polarization train separated by train_delay.
PulseSchedule build_schedule(const RunConfig& config, int cycles);

// Sets root[dotted.path] = value, creating intermediate objects. Paths
// address object keys only ("params.omega1", "pulse.T").
void set_json_path(Json& root, const std::string& dotted_path, const Json& value);

// Half-integer from a JSON number or string ("2", "-3/2", 1.5).
HalfInt half_int_from_json(const Json& v, const std::string& field);

} // namespace fockpulse
