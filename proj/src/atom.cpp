#include "atom.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "error.hpp"

namespace fockpulse {

void AtomSpec::validate() const {
    for (const auto& [v, name] :
         {std::pair{j_ground, "J"}, {j_excited, "J_excited"}, {nuclear_i, "I"},
          {f_ground, "F"}, {f_excited, "F_excited"}}) {
        if (v.twice() < 0) {
            throw ConfigError(std::string("atom.") + name + " must be non-negative");
        }
    }
    if (!triangle_ok(j_ground, nuclear_i, f_ground)) {
        throw ConfigError("atom: F=" + f_ground.str() + " is not in the triangle of (J=" +
                          j_ground.str() + ", I=" + nuclear_i.str() + ")");
    }
    if (!triangle_ok(j_excited, nuclear_i, f_excited)) {
        throw ConfigError("atom: F_excited=" + f_excited.str() +
                          " is not in the triangle of (J_excited=" + j_excited.str() +
                          ", I=" + nuclear_i.str() + ")");
    }
    if (!triangle_ok(f_ground, HalfInt::from_int(1), f_excited)) {
        throw ConfigError("atom: F=" + f_ground.str() + " <-> F_excited=" +
                          f_excited.str() + " is not dipole-allowed");
    }
}

AtomSpec atom_preset(const std::string& name) {
    const auto half = [](int n) { return HalfInt::from_twice(n); };
    if (name == "rb87_f2") {
        return {half(1), half(3), half(3), half(4), half(6), "87Rb 5S1/2(F=2) -> 5P3/2(F'=3)"};
    }
    if (name == "cs_f4") {
        return {half(1), half(3), half(7), half(8), half(10), "133Cs 6S1/2(F=4) -> 6P3/2(F'=5)"};
    }
    if (name == "cs_f3") {
        return {half(1), half(3), half(7), half(6), half(4), "133Cs 6S1/2(F=3) -> 6P3/2(F'=2)"};
    }
    throw ConfigError("unknown atom preset '" + name +
                      "' (available: rb87_f2, cs_f4, cs_f3)");
}

std::vector<std::string> atom_preset_names() { return {"rb87_f2", "cs_f4", "cs_f3"}; }

std::string polarization_name(Polarization p) {
    return p == Polarization::sigma_plus ? "sigma_plus" : "sigma_minus";
}

void PhysicalParams::validate() const {
    for (const auto& [v, name] : {std::pair{g, "g"}, {k, "k"},
                                  {gamma_sp, "gamma_sp"}, {delta, "delta"}}) {
        if (!(v > 0.0)) {
            throw ConfigError(std::string("params.") + name + " must be > 0");
        }
    }
    if (!(omega1 >= 0.0)) throw ConfigError("params.omega1 must be >= 0");
    if (omega2 && !(*omega2 >= 0.0)) throw ConfigError("params.omega2 must be >= 0");
}

namespace {

// Common angular prefactor of the pump and cavity Rabi coefficients.
double coupling_prefactor(const AtomSpec& a) {
    return std::sqrt(double((a.f_ground.twice() + 1) * (a.f_excited.twice() + 1) *
                            (a.j_ground.twice() + 1)));
}

} // namespace

CouplingTable::CouplingTable(const AtomSpec& atom, const PhysicalParams& params,
                             Polarization pol, bool uniform_couplings)
    : atom_(atom), pol_(pol), uniform_(uniform_couplings) {
    atom_.validate();
    params.validate();

    const HalfInt one = HalfInt::from_int(1);
    const HalfInt f = atom_.f_ground;
    const HalfInt fx = atom_.f_excited;
    const int q = polarization_q(pol_);
    const HalfInt hq = HalfInt::from_twice(2 * q);
    const double omega = params.omega_for(pol_);

    const SymbolValue six = wigner_6j(atom_.j_ground, atom_.j_excited, one,
                                      fx, f, atom_.nuclear_i);
    const double pref = coupling_prefactor(atom_);
    // sign factor (-1)^(m+J+I) of the published coefficient form; kept for
    // fidelity even though only squares enter the dynamics
    const auto sign_of = [&](HalfInt m) {
        const int e2 = m.twice() + atom_.j_ground.twice() + atom_.nuclear_i.twice();
        return (e2 / 2) % 2 == 0 ? 1.0 : -1.0;
    };

    const int n = level_count();
    rabi_.resize(n);
    cavity_.resize(n);
    effective_.resize(n);
    alpha_.resize(n);
    op_rate_.resize(n);

    // Partial decay rates, excited |F',m'> -> ground |F, m'+q_emit>.
    const int nx = excited_level_count();
    decay_.resize(nx);
    const double decay_scale = double((f.twice() + 1) * (fx.twice() + 1) *
                                      (atom_.j_excited.twice() + 1));
    for (int ix = 0; ix < nx; ++ix) {
        const HalfInt mx = excited_m_of(ix);
        for (int q_emit = -1; q_emit <= 1; ++q_emit) {
            Coef& c = decay_[ix][q_emit + 1];
            const HalfInt mg = mx + HalfInt::from_twice(2 * q_emit);
            if (std::abs(mg.twice()) > f.twice()) {
                c = {0.0, true};
                continue;
            }
            const SymbolValue tj =
                wigner_3j(f, one, fx, mg, HalfInt::from_twice(-2 * q_emit), -mx);
            const double factor = tj.value * six.value;
            c.value = decay_scale * factor * factor * params.gamma_sp;
            c.exact_zero = tj.is_exact_zero || six.is_exact_zero;
        }
    }

    for (int i = 0; i < n; ++i) {
        const HalfInt m = m_of(i);
        const HalfInt m_up = m + hq;  // excited sublevel reached by the pump

        // Pump coefficient Omega_{m, m+q}.
        if (std::abs(m_up.twice()) <= fx.twice()) {
            if (uniform_) {
                rabi_[i] = {omega, omega == 0.0};
            } else {
                const SymbolValue tj = wigner_3j(f, one, fx, m, hq, -m_up);
                rabi_[i].value = sign_of(m) * pref * tj.value * six.value * omega;
                rabi_[i].exact_zero = tj.is_exact_zero || six.is_exact_zero || omega == 0.0;
            }
        } else {
            rabi_[i] = {0.0, true};
        }

        // Cavity coefficient g_{m,m}.
        if (std::abs(m.twice()) <= fx.twice()) {
            if (uniform_) {
                cavity_[i] = {params.g, false};
            } else {
                const SymbolValue tj = wigner_3j(f, one, fx, m, HalfInt::from_int(0), -m);
                cavity_[i].value = sign_of(m) * pref * tj.value * six.value * params.g;
                cavity_[i].exact_zero = tj.is_exact_zero || six.is_exact_zero;
            }
        } else {
            cavity_[i] = {0.0, true};
        }
    }

    for (int i = 0; i < n; ++i) {
        const int dest = i + q;
        if (dest >= 0 && dest < n && !rabi_[i].exact_zero && !cavity_[dest].exact_zero) {
            const double g_eff = cavity_[dest].value * rabi_[i].value / params.delta;
            effective_[i] = {g_eff, false};
            alpha_[i] = {4.0 * g_eff * g_eff / params.k, false};
        } else {
            effective_[i] = {0.0, true};
            alpha_[i] = {0.0, true};
        }

        // Optical pumping from sublevel m through the excited |F', m+q>:
        // decay channels land on m, m+q, m+2q (step 0, 1, 2).
        const HalfInt m = m_of(i);
        const HalfInt m_up = m + hq;
        const double pump_sq = rabi_[i].value * rabi_[i].value / (params.delta * params.delta);
        for (int step = 0; step <= 2; ++step) {
            const int target = i + step * q;
            if (rabi_[i].exact_zero || target < 0 || target >= n) {
                op_rate_[i][step] = {0.0, true};
                continue;
            }
            const Coef d = partial_decay(m_up, (step - 1) * q);
            op_rate_[i][step].value = pump_sq * d.value;
            op_rate_[i][step].exact_zero = d.exact_zero;
        }
    }
}

int CouplingTable::index_of(HalfInt m) const {
    const int i = (m.twice() + atom_.f_ground.twice()) / 2;
    if ((m.twice() + atom_.f_ground.twice()) % 2 != 0 || i < 0 || i >= level_count()) {
        throw DomainError("m=" + m.str() + " is not a ground sublevel of F=" +
                          atom_.f_ground.str());
    }
    return i;
}

HalfInt CouplingTable::m_of(int index) const {
    return HalfInt::from_twice(-atom_.f_ground.twice() + 2 * index);
}

HalfInt CouplingTable::excited_m_of(int index) const {
    return HalfInt::from_twice(-atom_.f_excited.twice() + 2 * index);
}

Coef CouplingTable::partial_decay(HalfInt m_excited, int q_emit) const {
    if (std::abs(q_emit) > 1) throw DomainError("decay polarization q must be 0 or +-1");
    const int ix = (m_excited.twice() + atom_.f_excited.twice()) / 2;
    if (ix < 0 || ix >= excited_level_count() ||
        (m_excited.twice() + atom_.f_excited.twice()) % 2 != 0) {
        return {0.0, true};
    }
    return decay_[ix][q_emit + 1];
}

int CouplingTable::photon_step_count() const {
    return static_cast<int>(
        std::count_if(alpha_.begin(), alpha_.end(),
                      [](const Coef& c) { return !c.exact_zero && c.value > 0.0; }));
}

DerivedRates derived_rates(const CouplingTable& table, const PhysicalParams& params) {
    DerivedRates r;
    const int n = table.level_count();
    r.effective_coupling.resize(n);
    r.alpha.resize(n);
    for (int i = 0; i < n; ++i) {
        r.effective_coupling[i] = table.effective_coupling(i).value;
        r.alpha[i] = table.alpha(i).value;
    }
    const double omega = params.omega_for(table.polarization());
    r.gamma1_factor = (omega / params.delta) * (omega / params.delta);
    r.r_sn = 4.0 * params.g * params.g / (params.k * params.gamma_sp);
    const double g_bare = params.g * omega / params.delta;
    r.alpha_bare = 4.0 * g_bare * g_bare / params.k;
    return r;
}

bool ValidityReport::all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const ValidityCondition& c) { return c.pass; });
}

ValidityReport validity_report(const PhysicalParams& params, const DerivedRates& rates,
                               double pulse_duration) {
    ValidityReport rep;
    const double omega_max = std::max(params.omega1, params.omega2.value_or(0.0));
    const double fast = std::max({params.k, params.gamma_sp, omega_max});
    rep.conditions.push_back(
        {"far_detuning", fast > 0 ? params.delta / fast : 0.0, 10.0, true, false});

    double g_max = 0.0;
    for (const double g_eff : rates.effective_coupling) {
        g_max = std::max(g_max, std::abs(g_eff));
    }
    rep.conditions.push_back({"adiabatic_elimination", g_max / params.k, 0.3, false, false});
    rep.conditions.push_back(
        {"cavity_bandwidth", params.k * pulse_duration, 10.0, true, false});
    rep.conditions.push_back({"signal_to_noise", rates.r_sn, 10.0, true, false});

    for (auto& c : rep.conditions) {
        c.pass = c.pass_if_greater ? c.measured >= c.threshold : c.measured <= c.threshold;
    }
    return rep;
}

} // namespace fockpulse
