#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace fockpulse {

RateSet make_rate_set(const CouplingTable& table, const PhysicalParams& params,
                      bool spontaneous_emission) {
    RateSet rs;
    rs.direction = table.direction();
    const int n = table.level_count();
    rs.alpha.resize(n);
    rs.op1.assign(n, 0.0);
    rs.op2.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        rs.alpha[i] = table.alpha(i).value;
        if (spontaneous_emission) {
            rs.op1[i] = table.op_rate(i, 1).value;
            rs.op2[i] = table.op_rate(i, 2).value;
        }
    }
    const double omega = params.omega_for(table.polarization());
    const double g_bare = params.g * omega / params.delta;
    rs.alpha_bare = 4.0 * g_bare * g_bare / params.k;
    rs.gamma1 = spontaneous_emission
                    ? (omega / params.delta) * (omega / params.delta) * params.gamma_sp
                    : 0.0;
    return rs;
}

namespace {

// Population flow kernel shared by the public derivative function and the
// integrator. Writes this channel's contribution into dpops; flows are added
// and subtracted as the same product so the total is conserved exactly.
void add_population_flows(const double* pops, int n, const RateSet& rs, double f,
                          double* dpops) {
    if (f == 0.0) return;
    const int d = rs.direction;
    for (int i = 0; i < n; ++i) {
        const int one_ahead = i + d;
        if (one_ahead >= 0 && one_ahead < n) {
            const double rate = rs.alpha[i] + rs.op1[i];
            if (rate != 0.0) {
                const double flow = f * rate * pops[i];
                dpops[i] -= flow;
                dpops[one_ahead] += flow;
            }
        }
        const int two_ahead = i + 2 * d;
        if (two_ahead >= 0 && two_ahead < n && rs.op2[i] != 0.0) {
            const double flow = f * rs.op2[i] * pops[i];
            dpops[i] -= flow;
            dpops[two_ahead] += flow;
        }
    }
}

double channel_flux(const double* pops, int n, const RateSet& rs, double f) {
    if (f == 0.0) return 0.0;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += rs.alpha[i] * pops[i];
    return f * s;
}

} // namespace

PopulationState rate_derivatives(const PopulationState& state, const RateSet& rates,
                                 double envelope) {
    PopulationState d;
    d.time = state.time;
    d.populations.assign(state.populations.size(), 0.0);
    add_population_flows(state.populations.data(),
                         static_cast<int>(state.populations.size()), rates, envelope,
                         d.populations.data());
    d.coherences.resize(state.coherences.size());
    const double decay = 0.5 * envelope * (rates.alpha_bare + rates.gamma1);
    for (size_t i = 0; i < state.coherences.size(); ++i) {
        d.coherences[i] = -decay * state.coherences[i];
    }
    return d;
}

double flux_at(const PopulationState& state, const RateSet& rates, double envelope) {
    return channel_flux(state.populations.data(),
                        static_cast<int>(state.populations.size()), rates, envelope);
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kErr[7] = {35.0 / 384 - 5179.0 / 57600,
                            0.0,
                            500.0 / 1113 - 7571.0 / 16695,
                            125.0 / 192 - 393.0 / 640,
                            -2187.0 / 6784 + 92097.0 / 339200,
                            11.0 / 84 - 187.0 / 2100,
                            -1.0 / 40};

struct Channel {
    RateSet rates;
    Polarization polarization;
};

// Flat ODE state: populations (n), coherences (2 per pair), n_out (1).
class RateSystem {
public:
    RateSystem(const PulseSchedule& schedule, std::vector<Channel> channels, int levels)
        : schedule_(schedule), channels_(std::move(channels)), levels_(levels) {}

    int dim() const { return levels_ + 2 * (levels_ - 1) + 1; }

    void operator()(double t, const double* y, double* dy) const {
        std::fill(dy, dy + dim(), 0.0);
        for (const auto& ch : channels_) {
            const double f = schedule_.envelope(ch.polarization, t);
            if (f == 0.0) continue;
            add_population_flows(y, levels_, ch.rates, f, dy);
            const double decay = 0.5 * f * (ch.rates.alpha_bare + ch.rates.gamma1);
            for (int p = 0; p < levels_ - 1; ++p) {
                dy[levels_ + 2 * p] -= decay * y[levels_ + 2 * p];
                dy[levels_ + 2 * p + 1] -= decay * y[levels_ + 2 * p + 1];
            }
            dy[dim() - 1] += channel_flux(y, levels_, ch.rates, f);
        }
    }

    double total_flux(double t, const double* y) const {
        double s = 0.0;
        for (const auto& ch : channels_) {
            s += channel_flux(y, levels_, ch.rates, schedule_.envelope(ch.polarization, t));
        }
        return s;
    }

private:
    const PulseSchedule& schedule_;
    std::vector<Channel> channels_;
    int levels_;
};

// One adaptive Dormand-Prince step attempt; returns the scaled error norm.
class DormandPrince {
public:
    DormandPrince(const RateSystem& sys, double abs_tol, double rel_tol)
        : sys_(sys), atol_(abs_tol), rtol_(rel_tol), n_(sys.dim()) {
        for (auto& k : k_) k.resize(n_);
        y_stage_.resize(n_);
        y_next_.resize(n_);
        first_ = true;
    }

    // Advances y from t by h; on acceptance y is updated in place.
    bool try_step(double t, double h, std::vector<double>& y, double& err_out) {
        if (first_) {
            sys_(t, y.data(), k_[0].data());
            first_ = false;
        }
        for (int s = 1; s < 7; ++s) {
            for (int i = 0; i < n_; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += kA[s][j] * k_[j][i];
                y_stage_[i] = y[i] + h * acc;
            }
            sys_(t + kC[s] * h, y_stage_.data(), k_[s].data());
        }
        double err = 0.0;
        for (int i = 0; i < n_; ++i) {
            double de = 0.0, yn = 0.0;
            for (int s = 0; s < 7; ++s) {
                de += kErr[s] * k_[s][i];
                yn += kB5[s] * k_[s][i];
            }
            y_next_[i] = y[i] + h * yn;
            const double scale = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y_next_[i]));
            err = std::max(err, std::abs(h * de) / scale);
        }
        err_out = err;
        if (err <= 1.0) {
            y.swap(y_next_);
            k_[0].swap(k_[6]);  // FSAL: stage 7 is the derivative at the new point
            return true;
        }
        return false;  // k_[0] still holds the derivative at (t, y)
    }

private:
    const RateSystem& sys_;
    double atol_, rtol_;
    int n_;
    std::array<std::vector<double>, 7> k_;
    std::vector<double> y_stage_, y_next_;
    bool first_ = true;
};

std::vector<double> initial_vector(const AtomSpec& atom, const InitialState& initial,
                                   int levels) {
    std::vector<double> pops(levels, 0.0);
    if (initial.populations) {
        if (static_cast<int>(initial.populations->size()) != levels) {
            throw ConfigError("initial.populations must have " + std::to_string(levels) +
                              " entries");
        }
        double sum = 0.0;
        for (const double p : *initial.populations) {
            if (p < 0.0) throw ConfigError("initial populations must be non-negative");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw ConfigError("initial populations must sum to 1");
        }
        pops = *initial.populations;
        return pops;
    }
    const HalfInt m0 = initial.m_f.value_or(-atom.f_ground);
    const int idx = (m0.twice() + atom.f_ground.twice()) / 2;
    if ((m0.twice() + atom.f_ground.twice()) % 2 != 0 || idx < 0 || idx >= levels) {
        throw ConfigError("initial.m_F=" + m0.str() + " is not a ground sublevel of F=" +
                          atom.f_ground.str());
    }
    pops[idx] = 1.0;
    return pops;
}

} // namespace

SimulationResult integrate(const AtomSpec& atom, const PhysicalParams& params,
                           const PulseSchedule& schedule, const ModeFlags& mode,
                           const InitialState& initial, const IntegratorOptions& options) {
    if (schedule.size() == 0) throw ConfigError("schedule contains no pulses");
    if (!(options.abs_tol > 0.0) || !(options.rel_tol > 0.0)) {
        throw ConfigError("integrator tolerances must be positive");
    }
    if (options.grid_per_duration < 2) {
        throw ConfigError("integrator.grid_per_duration must be at least 2");
    }

    atom.validate();
    params.validate();
    const int levels = atom.ground_level_count();

    std::vector<Channel> channels;
    double alpha_bare_plus = 0.0;
    double g_eff_max = 0.0;
    DerivedRates drates_any{};
    for (const Polarization pol : {Polarization::sigma_plus, Polarization::sigma_minus}) {
        if (!schedule.uses(pol)) continue;
        const CouplingTable table(atom, params, pol, mode.uniform_couplings);
        const DerivedRates dr = derived_rates(table, params);
        drates_any = dr;
        for (const double ge : dr.effective_coupling) {
            g_eff_max = std::max(g_eff_max, std::abs(ge));
        }
        channels.push_back({make_rate_set(table, params, mode.spontaneous_emission), pol});
        if (pol == Polarization::sigma_plus) alpha_bare_plus = dr.alpha_bare;
    }
    if (alpha_bare_plus == 0.0 && !channels.empty()) {
        alpha_bare_plus = channels.front().rates.alpha_bare;
    }

    const RateSystem sys(schedule, channels, levels);

    // Uniform output grid plus the per-pulse attribution boundaries.
    const double t0 = schedule.begin();
    const double t1 = schedule.end();
    const double span = t1 - t0;
    const int grid_n =
        std::max(2, static_cast<int>(std::ceil(span / schedule.min_duration() *
                                               options.grid_per_duration)) + 1);
    struct Stop {
        double t;
        bool is_grid;
        int boundary = -1;  // index into window boundaries, or -1
    };
    std::vector<Stop> stops;
    stops.reserve(grid_n + schedule.size() + 1);
    for (int i = 0; i < grid_n; ++i) {
        stops.push_back({t0 + span * i / (grid_n - 1), true, -1});
    }
    const std::vector<double> boundaries = schedule.window_boundaries();
    const double snap = span / (grid_n - 1) * 1e-6;
    for (size_t b = 0; b < boundaries.size(); ++b) {
        const double tb = boundaries[b];
        auto it = std::lower_bound(stops.begin(), stops.end(), tb,
                                   [](const Stop& s, double v) { return s.t < v; });
        if (it != stops.end() && std::abs(it->t - tb) <= snap) {
            it->boundary = static_cast<int>(b);
        } else if (it != stops.begin() && std::abs((it - 1)->t - tb) <= snap) {
            (it - 1)->boundary = static_cast<int>(b);
        } else {
            stops.insert(it, {tb, false, static_cast<int>(b)});
        }
    }

    // State: populations, coherences (zero), accumulated n_out.
    std::vector<double> y(sys.dim(), 0.0);
    const std::vector<double> pops0 = initial_vector(atom, initial, levels);
    std::copy(pops0.begin(), pops0.end(), y.begin());

    SimulationResult res;
    res.level_count = levels;
    res.atom = atom;
    res.params = params;
    res.schedule = schedule;
    res.mode = mode;
    res.alpha_bare = alpha_bare_plus;
    res.r_sn = drates_any.r_sn;
    {
        // locate the initial index for reporting
        int idx = 0;
        for (int i = 0; i < levels; ++i) {
            if (pops0[i] > pops0[idx]) idx = i;
        }
        res.initial_index = idx;
    }
    res.time.reserve(grid_n);
    res.populations.reserve(static_cast<size_t>(grid_n) * levels);
    res.flux.reserve(grid_n);
    res.n_out.reserve(grid_n);

    std::vector<double> boundary_n_out(boundaries.size(), 0.0);

    DormandPrince stepper(sys, options.abs_tol, options.rel_tol);
    double t = stops.front().t;
    const double h_floor = std::max(span * 1e-15, 1e-300);
    double h = schedule.min_duration() / options.grid_per_duration;

    auto record = [&](const Stop& stop) {
        if (stop.is_grid) {
            res.time.push_back(stop.t);
            double sum = 0.0;
            for (int i = 0; i < levels; ++i) {
                res.populations.push_back(y[i]);
                sum += y[i];
            }
            res.flux.push_back(sys.total_flux(stop.t, y.data()));
            res.n_out.push_back(y[sys.dim() - 1]);
            res.max_population_sum_error =
                std::max(res.max_population_sum_error, std::abs(sum - 1.0));
            for (int p = 0; p < levels - 1; ++p) {
                const double re = y[levels + 2 * p];
                const double im = y[levels + 2 * p + 1];
                res.max_abs_coherence =
                    std::max(res.max_abs_coherence, std::hypot(re, im));
            }
        }
        if (stop.boundary >= 0) {
            boundary_n_out[stop.boundary] = y[sys.dim() - 1];
        }
    };

    record(stops.front());
    for (size_t s = 1; s < stops.size(); ++s) {
        const double target = stops[s].t;
        while (t < target) {
            double h_try = std::min(h, target - t);
            if (options.max_step > 0.0) h_try = std::min(h_try, options.max_step);
            double err = 0.0;
            if (stepper.try_step(t, h_try, y, err)) {
                t += h_try;
                const double grow =
                    std::isfinite(err) && err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h = h_try * std::clamp(grow, 0.2, 5.0);
            } else {
                const double shrink = std::isfinite(err) && err > 0.0
                                          ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0)
                                          : 0.2;
                h = h_try * shrink;
                if (h < h_floor) {
                    throw NumericError(
                        "integrator step underflow at t=" + std::to_string(t) +
                        " us (error estimate " + std::to_string(err) + ")");
                }
            }
        }
        t = target;
        record(stops[s]);
    }

    const auto& pulses = schedule.pulses();
    for (size_t p = 0; p < pulses.size(); ++p) {
        PulseWindowCount c;
        c.index = static_cast<int>(p);
        c.t_begin = boundaries[p];
        c.t_end = boundaries[p + 1];
        c.photons = boundary_n_out[p + 1] - boundary_n_out[p];
        c.polarization = pulses[p].polarization;
        res.per_pulse.push_back(c);
    }

    res.validity = validity_report(params, drates_any, schedule.min_duration());
    // report the adiabaticity over all channels actually driven
    for (auto& cond : res.validity.conditions) {
        if (cond.name == "adiabatic_elimination") {
            cond.measured = g_eff_max / params.k;
            cond.pass = cond.measured <= cond.threshold;
        }
    }
    return res;
}

SimulationResult run_train(const AtomSpec& atom, const PhysicalParams& params,
                           const PulseSchedule& schedule, const ModeFlags& mode,
                           const InitialState& initial, const IntegratorOptions& options) {
    if (!schedule.alternating()) {
        throw ConfigError("train schedules must alternate sigma+ / sigma- polarization");
    }
    return integrate(atom, params, schedule, mode, initial, options);
}

} // namespace fockpulse
