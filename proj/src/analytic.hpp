#pragma once

#include <string>
#include <vector>

#include "dynamics.hpp"
#include "half_int.hpp"

namespace fockpulse {

// Photon-number distribution P_j, j = 0..2F, at a given pump area theta.
struct FockDistribution {
    std::vector<double> p;
    double operator[](int j) const { return p[j]; }
    int max_photons() const { return static_cast<int>(p.size()) - 1; }
};

// Lossless uniform-coupling solution with the atom starting in m = -F:
// P_j = exp(-theta) theta^j / j! for j < 2F, and P_{2F} is the complement,
// so the distribution sums to one by construction.
FockDistribution closed_form_distribution(double theta, HalfInt f);

// Mean photon number theta - integral_0^theta P_{2F}(x) dx, evaluated by
// adaptive Simpson quadrature (absolute tolerance 1e-10).
double n_out_closed_form(double theta, HalfInt f);

// Deviations between an integrated run and the closed forms, mapped through
// theta(t) of the run's pulse. Runs with losses, per-transition couplings,
// multiple pulses, or an initial state other than -F are flagged
// incomparable instead of raising.
struct ComparisonReport {
    bool comparable = false;
    std::string reason;
    std::vector<double> max_abs_per_level;
    std::vector<double> l2_per_level;
    double max_abs = 0.0;
    double n_out_max_abs = 0.0;
};

ComparisonReport compare(const SimulationResult& numeric);

} // namespace fockpulse
