#include "run.hpp"

#include <cmath>

#include "error.hpp"

namespace fockpulse {

namespace {

RunArtifacts run_schedule(const std::string& config_json, int cycles, RunKind kind) {
    RunArtifacts art;
    art.kind = kind;
    art.cycles = cycles;
    art.config = parse_run_config_text(config_json);
    const PulseSchedule schedule = build_schedule(art.config, cycles);
    if (kind == RunKind::train) {
        art.sim = fockpulse::run_train(art.config.atom, art.config.params, schedule,
                                       art.config.mode, art.config.initial,
                                       art.config.integrator);
    } else {
        art.sim = integrate(art.config.atom, art.config.params, schedule, art.config.mode,
                            art.config.initial, art.config.integrator);
    }
    art.summary = summary_json(kind == RunKind::train ? "train" : "simulate", art.sim,
                               art.config);
    return art;
}

// P_{2F} value used by the cumulative photon-number integral.
double top_population(const FockDistribution& d) { return d.p.back(); }

AnalyticSeries analytic_over_grid(HalfInt f, const std::vector<double>& t,
                                  const std::vector<double>& theta,
                                  const std::vector<double>& envelope) {
    AnalyticSeries series;
    series.f = f;
    series.t = t;
    series.theta = theta;
    series.envelope = envelope;
    const int levels = f.twice() + 1;
    series.p.assign(levels, std::vector<double>(t.size(), 0.0));
    series.n_out.assign(t.size(), 0.0);
    double integral = 0.0;
    FockDistribution prev;
    for (size_t s = 0; s < t.size(); ++s) {
        const FockDistribution dist = closed_form_distribution(theta[s], f);
        for (int j = 0; j < levels; ++j) series.p[j][s] = dist.p[j];
        if (s > 0) {
            const double h = theta[s] - theta[s - 1];
            const double mid = top_population(
                closed_form_distribution(0.5 * (theta[s] + theta[s - 1]), f));
            integral += h / 6.0 * (top_population(prev) + 4.0 * mid + top_population(dist));
        }
        series.n_out[s] = theta[s] - integral;
        prev = dist;
    }
    return series;
}

} // namespace

RunArtifacts run_simulate(const std::string& config_json) {
    return run_schedule(config_json, 1, RunKind::simulate);
}

RunArtifacts run_train(const std::string& config_json, int cycles) {
    return run_schedule(config_json, cycles, RunKind::train);
}

RunArtifacts run_analytic(const std::string& config_json) {
    Json doc;
    try {
        doc = Json::parse(config_json);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunArtifacts art;
    art.kind = RunKind::analytic;

    if (doc.is_object() && doc.contains("params")) {
        art.config = parse_run_config(doc);
        if (art.config.pulses.size() != 1) {
            throw ConfigError("analytic runs use a single-pulse configuration");
        }
        const PulseShape& shape = art.config.pulses.front().shape;
        const int n = std::max(
            2, static_cast<int>(std::ceil(
                   (shape.support_end() - shape.support_begin()) / shape.duration *
                   art.config.integrator.grid_per_duration)) +
                   1);
        std::vector<double> t(n), envelope(n);
        for (int i = 0; i < n; ++i) {
            t[i] = shape.support_begin() +
                   (shape.support_end() - shape.support_begin()) * i / (n - 1);
            envelope[i] = shape.envelope(t[i]);
        }
        const CouplingTable table(art.config.atom, art.config.params,
                                  Polarization::sigma_plus, true);
        const DerivedRates rates = derived_rates(table, art.config.params);
        const std::vector<double> theta = theta_profile(shape, rates.alpha_bare, t);
        art.ana = analytic_over_grid(art.config.atom.f_ground, t, theta, envelope);

        OrderedJson summary;
        summary["command"] = "analytic";
        summary["atom_label"] = art.config.atom.label;
        summary["F"] = art.config.atom.f_ground.str();
        summary["alpha1_bare"] = rates.alpha_bare;
        summary["theta_infinity"] = theta.back();
        summary["n_out_infinity"] = art.ana.n_out.back();
        summary["config"] = art.config.echo();
        art.summary = summary;
        return art;
    }

    // bare request: {"F": ..., "theta_max": ..., "points": ...}
    if (!doc.is_object() || !doc.contains("F") || !doc.contains("theta_max")) {
        throw ConfigError("analytic request needs either a full run config or F and theta_max");
    }
    for (const auto& [key, _] : doc.items()) {
        if (key != "F" && key != "theta_max" && key != "points") {
            throw ConfigError("invalid config at " + key + ": unknown field");
        }
    }
    const HalfInt f = half_int_from_json(doc.at("F"), "F");
    if (f.twice() < 0) throw ConfigError("F must be >= 0");
    const double theta_max = doc.at("theta_max").get<double>();
    if (!(theta_max > 0.0)) throw ConfigError("theta_max must be > 0");
    int points = 1001;
    if (doc.contains("points")) points = doc.at("points").get<int>();
    if (points < 2) throw ConfigError("points must be >= 2");

    // linear theta ramp over one unit of time, flat envelope
    std::vector<double> t(points), theta(points), envelope(points, 1.0);
    for (int i = 0; i < points; ++i) {
        t[i] = static_cast<double>(i) / (points - 1);
        theta[i] = theta_max * t[i];
    }
    art.ana = analytic_over_grid(f, t, theta, envelope);

    OrderedJson summary;
    summary["command"] = "analytic";
    summary["F"] = f.str();
    summary["theta_max"] = theta_max;
    summary["n_out_infinity"] = art.ana.n_out.back();
    art.summary = summary;
    return art;
}

std::string primary_csv(const RunArtifacts& art) {
    if (art.kind == RunKind::analytic) return distribution_csv(art.ana);
    return timeseries_csv(art.sim);
}

namespace {

std::vector<double> level_series(const SimulationResult& sim, int level) {
    std::vector<double> v(sim.sample_count());
    for (int s = 0; s < sim.sample_count(); ++s) v[s] = sim.population(s, level);
    return v;
}

const char* kPalette[] = {"#1f6fb2", "#d1495b", "#3d8f5f", "#8a5fbf", "#c77f2e",
                          "#2ca6a4", "#b04a8f", "#6b7f2e", "#704f3d"};

} // namespace

std::string figure_svg(const RunArtifacts& art) {
    if (art.kind == RunKind::analytic) {
        SvgPanel panel;
        panel.y_label = "P_j";
        for (size_t j = 0; j < art.ana.p.size(); ++j) {
            SvgSeries s;
            s.label = "P_" + std::to_string(j);
            s.color = kPalette[j % std::size(kPalette)];
            s.x = art.ana.t;
            s.y = art.ana.p[j];
            panel.series.push_back(std::move(s));
        }
        SvgSeries env;
        env.label = "envelope";
        env.color = "#666666";
        env.dashed = true;
        env.x = art.ana.t;
        env.y = art.ana.envelope;
        panel.series.push_back(std::move(env));
        return render_svg("photon-number distribution", "t (us)", {panel});
    }

    const SimulationResult& sim = art.sim;
    std::vector<double> env(sim.sample_count());
    for (int s = 0; s < sim.sample_count(); ++s) {
        env[s] = sim.schedule.envelope(Polarization::sigma_plus, sim.time[s]) +
                 sim.schedule.envelope(Polarization::sigma_minus, sim.time[s]);
    }

    SvgPanel top;
    top.y_label = "n_out";
    top.series.push_back({"n_out", "#1f6fb2", false, sim.time, sim.n_out});
    {
        std::vector<double> env_scaled(env.size());
        const double n_max = sim.n_out.empty() ? 1.0 : sim.n_out.back();
        for (size_t i = 0; i < env.size(); ++i) env_scaled[i] = env[i] * std::max(n_max, 1.0);
        top.series.push_back({"envelope (scaled)", "#666666", true, sim.time,
                              std::move(env_scaled)});
    }

    SvgPanel bottom;
    bottom.y_label = "flux / k";
    std::vector<double> flux_over_k(sim.flux.size());
    for (size_t i = 0; i < sim.flux.size(); ++i) flux_over_k[i] = sim.flux[i] / sim.params.k;
    double fmax = 0.0;
    for (const double v : flux_over_k) fmax = std::max(fmax, v);
    bottom.series.push_back({"flux / k", "#d1495b", false, sim.time, std::move(flux_over_k)});
    {
        std::vector<double> env_scaled(env.size());
        for (size_t i = 0; i < env.size(); ++i) env_scaled[i] = env[i] * std::max(fmax, 1e-30);
        bottom.series.push_back({"envelope (scaled)", "#666666", true, sim.time,
                                 std::move(env_scaled)});
    }

    SvgPanel pops;
    pops.y_label = "populations";
    const int f2 = sim.atom.f_ground.twice();
    for (int i = 0; i < sim.level_count; ++i) {
        SvgSeries s;
        s.label = "sigma_" + HalfInt::from_twice(-f2 + 2 * i).str();
        s.color = kPalette[i % std::size(kPalette)];
        s.x = sim.time;
        s.y = level_series(sim, i);
        pops.series.push_back(std::move(s));
    }

    return render_svg(art.kind == RunKind::train ? "pulse train" : "single pulse",
                      "t (us)", {top, bottom, pops});
}

} // namespace fockpulse
