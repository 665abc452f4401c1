#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "half_int.hpp"
#include "wigner.hpp"

namespace fockpulse {

// Hyperfine transition chain F <-> F' on a fine-structure line J <-> J'
// with nuclear spin I.
struct AtomSpec {
    HalfInt j_ground;   // J
    HalfInt j_excited;  // J'
    HalfInt nuclear_i;  // I
    HalfInt f_ground;   // F
    HalfInt f_excited;  // F'
    std::string label;

    int ground_level_count() const { return f_ground.twice() + 1; } // 2F+1
    int max_photon_number() const { return f_ground.twice(); }      // 2F

    // Throws ConfigError if F is not in the triangle of (J, I), F' not in
    // (J', I), or the F <-> F' step is not dipole-allowed.
    void validate() const;
};

// Named presets: "rb87_f2" (F=2 -> F'=3), "cs_f4" (F=4 -> F'=5),
// "cs_f3" (F=3 -> F'=2). Throws ConfigError for unknown names.
AtomSpec atom_preset(const std::string& name);
std::vector<std::string> atom_preset_names();

enum class Polarization { sigma_plus, sigma_minus };

inline int polarization_q(Polarization p) {
    return p == Polarization::sigma_plus ? +1 : -1;
}
std::string polarization_name(Polarization p);

// Scalar field/cavity rates, all angular frequencies in rad/us.
struct PhysicalParams {
    double g = 0.0;         // atom-cavity coupling
    double k = 0.0;         // cavity field decay
    double gamma_sp = 0.0;  // atomic spontaneous decay
    double omega1 = 0.0;    // sigma+ pump peak Rabi frequency
    std::optional<double> omega2;  // sigma- pump; defaults to omega1
    double delta = 0.0;     // one-photon detuning

    double omega_for(Polarization p) const {
        return p == Polarization::sigma_plus ? omega1 : omega2.value_or(omega1);
    }
    void validate() const;  // strict positivity -> ConfigError
};

// One tabulated coefficient; exact_zero marks selection-rule zeros.
struct Coef {
    double value = 0.0;
    bool exact_zero = true;
};

// Per-Zeeman-transition coefficients for one pump polarization.
//
// Ground sublevels are indexed i = 0..2F, with two_m = -2F + 2i. The pump
// drives |F,m> -> |F',m+q>; the cavity (pi) step returns to |F,m+q>, so the
// photon-generating chain moves by q per step.
class CouplingTable {
public:
    CouplingTable(const AtomSpec& atom, const PhysicalParams& params,
                  Polarization pol, bool uniform_couplings);

    const AtomSpec& atom() const { return atom_; }
    Polarization polarization() const { return pol_; }
    bool uniform() const { return uniform_; }
    int level_count() const { return atom_.ground_level_count(); }
    int direction() const { return polarization_q(pol_); }

    int index_of(HalfInt m) const;          // ground sublevel index
    HalfInt m_of(int index) const;

    // Pump Rabi frequency Omega_{m, m+q} into the excited state (rad/us).
    Coef rabi(int i) const { return rabi_[i]; }
    // Cavity coupling g_{m,m} (rad/us).
    Coef cavity(int i) const { return cavity_[i]; }
    // Effective Raman coupling G for the two-photon step m -> m+q (rad/us):
    // cavity coefficient of the destination sublevel times the pump
    // coefficient of the origin, over the detuning.
    Coef effective_coupling(int i) const { return effective_[i]; }
    // Photon generation rate alpha = 4 G^2 / k for the step m -> m+q.
    Coef alpha(int i) const { return alpha_[i]; }
    // Optical-pumping rate coefficient from sublevel i to i + step*q for
    // step in {0, 1, 2}; multiply by the pulse intensity envelope f(t).
    // step = 0 returns population to the origin and does not enter the
    // rate equations.
    Coef op_rate(int i, int step) const { return op_rate_[i][step]; }

    // Partial spontaneous decay rate of excited |F',m'> to ground
    // |F, m'+q_emit>, q_emit in {-1,0,+1} (rad/us). Zero outside range.
    Coef partial_decay(HalfInt m_excited, int q_emit) const;
    int excited_level_count() const { return atom_.f_excited.twice() + 1; }
    HalfInt excited_m_of(int index) const;

    // Number of photon-generating pump steps (nonzero alpha entries).
    int photon_step_count() const;

private:
    AtomSpec atom_;
    Polarization pol_;
    bool uniform_;
    std::vector<Coef> rabi_, cavity_, effective_, alpha_;
    std::vector<std::array<Coef, 3>> op_rate_;
    std::vector<std::array<Coef, 3>> decay_;  // [excited index][q_emit + 1]
};

// Scalar rates derived from a coupling table (Eq.-level quantities that the
// dynamics and reports consume).
struct DerivedRates {
    std::vector<double> effective_coupling;  // G per step (rad/us)
    std::vector<double> alpha;               // 4 G^2 / k per step (rad/us)
    double gamma1_factor = 0.0;              // (Omega/Delta)^2, dimensionless
    double r_sn = 0.0;                       // 4 g^2 / (k gamma_sp)
    double alpha_bare = 0.0;                 // 4 (g Omega / Delta)^2 / k
};

DerivedRates derived_rates(const CouplingTable& table, const PhysicalParams& params);

// One validity condition with its measured ratio; never aborts a run.
struct ValidityCondition {
    std::string name;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass_if_greater = true;  // measured >= threshold passes (else <=)
    bool pass = false;
};

struct ValidityReport {
    std::vector<ValidityCondition> conditions;
    bool all_pass() const;
};

// Checks the far-detuning, adiabatic-elimination, cavity-bandwidth and
// signal-to-noise conditions for a run with pulse duration T (us).
ValidityReport validity_report(const PhysicalParams& params,
                               const DerivedRates& rates, double pulse_duration);

} // namespace fockpulse
