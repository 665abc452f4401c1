#pragma once

#include <complex>
#include <vector>

#include "atom.hpp"
#include "pulse.hpp"

namespace fockpulse {

// Time-independent parts of the rate equations for one pump polarization;
// every rate is multiplied by the pulse intensity envelope f(t) at use.
struct RateSet {
    int direction = +1;              // index step per pump cycle (+1 sigma+, -1 sigma-)
    std::vector<double> alpha;       // photon-generating step rate per sublevel
    std::vector<double> op1, op2;    // optical pumping one/two sublevels ahead
    double alpha_bare = 0.0;         // uniform-model alpha1
    double gamma1 = 0.0;             // coherence decay (Omega/Delta)^2 gamma_sp; 0 if losses off
};

RateSet make_rate_set(const CouplingTable& table, const PhysicalParams& params,
                      bool spontaneous_emission);

// Zeeman ground-state populations plus the (m, m+1) coherences.
struct PopulationState {
    std::vector<double> populations;              // index i <-> m = -F + i
    std::vector<std::complex<double>> coherences; // pair (i, i+1)
    double time = 0.0;
};

// Right-hand side of the population/coherence equations for one channel at
// envelope value f = f(t). Gains arrive from one and two sublevels behind;
// losses leave through the pump step and the two-step optical pumping.
PopulationState rate_derivatives(const PopulationState& state, const RateSet& rates,
                                 double envelope);

// Outgoing photon flux for one channel: f(t) * sum_m alpha_m <sigma_m>.
double flux_at(const PopulationState& state, const RateSet& rates, double envelope);

struct ModeFlags {
    bool uniform_couplings = false;
    bool spontaneous_emission = true;
};

struct InitialState {
    std::optional<HalfInt> m_f;               // pure sublevel (default -F)
    std::optional<std::vector<double>> populations;  // or explicit vector
};

struct IntegratorOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    double max_step = 0.0;        // 0 = no cap beyond the output grid
    int grid_per_duration = 2000; // output samples per pulse duration
};

struct PulseWindowCount {
    int index = 0;
    double t_begin = 0.0;
    double t_end = 0.0;
    double photons = 0.0;
    Polarization polarization = Polarization::sigma_plus;
};

struct SimulationResult {
    std::vector<double> time;
    int level_count = 0;
    std::vector<double> populations;  // sample-major, [sample * level_count + i]
    std::vector<double> flux;         // photons/us
    std::vector<double> n_out;        // cumulative
    std::vector<PulseWindowCount> per_pulse;
    ValidityReport validity;
    double max_population_sum_error = 0.0;
    double max_abs_coherence = 0.0;

    // run description, for writers and comparisons
    AtomSpec atom;
    PhysicalParams params;
    PulseSchedule schedule;
    ModeFlags mode;
    int initial_index = 0;
    double alpha_bare = 0.0;  // sigma+ uniform-model alpha1
    double r_sn = 0.0;

    double population(int sample, int level) const {
        return populations[static_cast<size_t>(sample) * level_count + level];
    }
    double n_out_final() const { return n_out.empty() ? 0.0 : n_out.back(); }
    int sample_count() const { return static_cast<int>(time.size()); }
};

// Integrates the rate equations over the full schedule with an adaptive
// embedded Runge-Kutta 4(5) pair, recording on a uniform grid; per-pulse
// photon counts are taken at the window boundaries between pulses.
SimulationResult integrate(const AtomSpec& atom, const PhysicalParams& params,
                           const PulseSchedule& schedule, const ModeFlags& mode,
                           const InitialState& initial, const IntegratorOptions& options);

// Same as integrate, but requires an alternating-polarization schedule.
SimulationResult run_train(const AtomSpec& atom, const PhysicalParams& params,
                           const PulseSchedule& schedule, const ModeFlags& mode,
                           const InitialState& initial, const IntegratorOptions& options);

} // namespace fockpulse
