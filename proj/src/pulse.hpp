#pragma once

#include <string>
#include <utility>
#include <vector>

#include "atom.hpp"

namespace fockpulse {

enum class PulseKind { gaussian, flat_top, tabulated };

std::string pulse_kind_name(PulseKind k);
PulseKind pulse_kind_from_name(const std::string& name);

// Normalized intensity envelope f(t) in [0, 1] with peak 1; the peak Rabi
// frequency is carried separately by PhysicalParams.
struct PulseShape {
    PulseKind kind = PulseKind::gaussian;
    double duration = 1.0;  // T (us); 1/e half-width for gaussian, full width for flat_top
    double center = 0.0;    // t0 (us)
    std::vector<std::pair<double, double>> samples;  // (t, f), tabulated only

    // Gaussian: exp(-((t-t0)/T)^2), truncated where it falls below 2.4e-16.
    double envelope(double t) const;
    double support_begin() const;
    double support_end() const;

    void validate() const;  // ConfigError on bad duration/samples
};

// Gaussian intensity envelopes are cut off at |t - t0| <= 6T.
inline constexpr double kGaussianSupportWidths = 6.0;

struct ScheduledPulse {
    PulseShape shape;
    Polarization polarization = Polarization::sigma_plus;
    double delay = 0.0;  // gap after the previous pulse's nominal end (us)
};

// An ordered train of non-overlapping polarized pulses with resolved centers.
class PulseSchedule {
public:
    // Builds a schedule from pulse templates: the first pulse keeps its
    // center; each following center is previous_center + T_prev + delay + T.
    // Throws ConfigError for empty input, delay < T_prev, or overlapping
    // pulse windows.
    static PulseSchedule build(std::vector<ScheduledPulse> pulses);

    // n_cycles copies of one template with alternating polarization.
    static PulseSchedule train(const ScheduledPulse& first, int n_cycles);

    const std::vector<ScheduledPulse>& pulses() const { return pulses_; }
    int size() const { return static_cast<int>(pulses_.size()); }

    double begin() const;  // support start of the first pulse
    double end() const;    // support end of the last pulse
    double min_duration() const;

    // Summed envelope of all pulses with the given polarization at time t.
    double envelope(Polarization p, double t) const;
    bool uses(Polarization p) const;
    bool alternating() const;  // consecutive polarizations all differ

    // Attribution boundaries between consecutive pulses (midpoints of the
    // support gaps), for per-pulse photon counting: size() + 1 values from
    // begin() to end().
    std::vector<double> window_boundaries() const;

private:
    std::vector<ScheduledPulse> pulses_;
};

// Accumulated pump area theta(t) = integral of alpha1 * f(t') dt' from the
// start of the pulse support, by composite Simpson quadrature with step
// duration/steps_per_duration.
double theta_of_t(const PulseShape& shape, double alpha1, double t,
                  int steps_per_duration = 2000);

// Cumulative theta at each grid time (grid must be nondecreasing).
std::vector<double> theta_profile(const PulseShape& shape, double alpha1,
                                  const std::vector<double>& grid,
                                  int steps_per_duration = 2000);

// Loads a two-column CSV (t, f) as a tabulated pulse shape.
PulseShape tabulated_from_csv(const std::string& path);

} // namespace fockpulse
