#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "error.hpp"
#include "pulse.hpp"

namespace fockpulse {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string timeseries_csv(const SimulationResult& result) {
    std::string s = "t";
    const int f2 = result.atom.f_ground.twice();
    for (int i = 0; i < result.level_count; ++i) {
        s += ",sigma_" + HalfInt::from_twice(-f2 + 2 * i).str();
    }
    s += ",flux,flux_over_k,n_out\n";
    const double inv_k = 1.0 / result.params.k;
    for (int row = 0; row < result.sample_count(); ++row) {
        s += format_number(result.time[row]);
        for (int i = 0; i < result.level_count; ++i) {
            s += ',';
            s += format_number(result.population(row, i));
        }
        s += ',';
        s += format_number(result.flux[row]);
        s += ',';
        s += format_number(result.flux[row] * inv_k);
        s += ',';
        s += format_number(result.n_out[row]);
        s += '\n';
    }
    return s;
}

std::string per_cycle_csv(const SimulationResult& result) {
    std::string s = "cycle,polarization,t_begin,t_end,photons\n";
    for (const auto& c : result.per_pulse) {
        s += std::to_string(c.index + 1);
        s += ',';
        s += polarization_name(c.polarization);
        s += ',';
        s += format_number(c.t_begin);
        s += ',';
        s += format_number(c.t_end);
        s += ',';
        s += format_number(c.photons);
        s += '\n';
    }
    return s;
}

std::string distribution_csv(const AnalyticSeries& series) {
    std::string s = "theta,t,envelope";
    for (size_t j = 0; j < series.p.size(); ++j) {
        s += ",P_" + std::to_string(j);
    }
    s += ",n_out\n";
    for (size_t row = 0; row < series.theta.size(); ++row) {
        s += format_number(series.theta[row]);
        s += ',';
        s += format_number(series.t[row]);
        s += ',';
        s += format_number(series.envelope[row]);
        for (const auto& pj : series.p) {
            s += ',';
            s += format_number(pj[row]);
        }
        s += ',';
        s += format_number(series.n_out[row]);
        s += '\n';
    }
    return s;
}

std::string coeffs_csv(const CouplingTable& table) {
    std::string s = "kind,m_from,m_to,value,exact_zero\n";
    const auto row = [&s](const std::string& kind, HalfInt from, HalfInt to, Coef c) {
        s += kind;
        s += ',';
        s += from.str();
        s += ',';
        s += to.str();
        s += ',';
        s += format_number(c.value);
        s += ',';
        s += c.exact_zero ? "true" : "false";
        s += '\n';
    };

    const int n = table.level_count();
    const int d = table.direction();
    const HalfInt step = HalfInt::from_twice(2 * d);
    const int fx2 = table.atom().f_excited.twice();

    for (int i = 0; i < n; ++i) {
        const HalfInt m = table.m_of(i);
        if (std::abs(m.twice()) <= fx2) row("cavity", m, m, table.cavity(i));
    }
    for (int i = 0; i < n; ++i) {
        const HalfInt m = table.m_of(i);
        const int dest = i + d;
        if (std::abs((m + step).twice()) > fx2) continue;
        if (dest >= 0 && dest < n) {
            row("pump", m, m + step, table.rabi(i));
            row("effective_g", m, m + step, table.effective_coupling(i));
            row("alpha", m, m + step, table.alpha(i));
        } else {
            // drive into the excited state with no ground destination
            row("cycling_drive", m, m + step, table.rabi(i));
        }
    }
    for (int i = 0; i < n; ++i) {
        const HalfInt m = table.m_of(i);
        for (int op_step = 0; op_step <= 2; ++op_step) {
            const int target = i + op_step * d;
            if (target < 0 || target >= n) continue;
            if (std::abs((m + step).twice()) > fx2) continue;
            row("op_rate", m, table.m_of(target), table.op_rate(i, op_step));
        }
    }
    for (int ix = 0; ix < table.excited_level_count(); ++ix) {
        const HalfInt mx = table.excited_m_of(ix);
        for (int q = -1; q <= 1; ++q) {
            const HalfInt mg = mx + HalfInt::from_twice(2 * q);
            if (std::abs(mg.twice()) > table.atom().f_ground.twice()) continue;
            row("decay", mx, mg, table.partial_decay(mx, q));
        }
    }
    return s;
}

OrderedJson summary_json(const std::string& command, const SimulationResult& result,
                         const RunConfig& config) {
    OrderedJson doc;
    doc["command"] = command;
    doc["atom_label"] = result.atom.label;
    doc["initial_m_F"] =
        HalfInt::from_twice(-result.atom.f_ground.twice() + 2 * result.initial_index).str();
    doc["n_out_infinity"] = result.n_out_final();

    OrderedJson per_pulse = OrderedJson::array();
    double spread = 0.0;
    for (const auto& c : result.per_pulse) {
        OrderedJson p;
        p["cycle"] = c.index + 1;
        p["polarization"] = polarization_name(c.polarization);
        p["t_begin"] = c.t_begin;
        p["t_end"] = c.t_end;
        p["photons"] = c.photons;
        per_pulse.push_back(p);
        for (const auto& other : result.per_pulse) {
            spread = std::max(spread, std::abs(c.photons - other.photons));
        }
    }
    doc["per_pulse"] = per_pulse;
    if (result.per_pulse.size() > 1) doc["per_pulse_max_spread"] = spread;

    doc["r_sn"] = result.r_sn;
    doc["alpha1_bare"] = result.alpha_bare;
    if (result.schedule.size() == 1) {
        const auto& shape = result.schedule.pulses().front().shape;
        doc["theta_infinity"] =
            theta_of_t(shape, result.alpha_bare, shape.support_end());
    }
    doc["peak_flux"] = result.flux.empty()
                           ? 0.0
                           : *std::max_element(result.flux.begin(), result.flux.end());
    doc["max_population_sum_error"] = result.max_population_sum_error;
    doc["max_abs_coherence"] = result.max_abs_coherence;

    OrderedJson validity;
    validity["all_pass"] = result.validity.all_pass();
    OrderedJson conds = OrderedJson::array();
    for (const auto& c : result.validity.conditions) {
        OrderedJson jc;
        jc["name"] = c.name;
        jc["measured"] = c.measured;
        jc["threshold"] = c.threshold;
        jc["direction"] = c.pass_if_greater ? ">=" : "<=";
        jc["status"] = c.pass ? "pass" : "warn";
        conds.push_back(jc);
    }
    validity["conditions"] = conds;
    doc["validity"] = validity;

    doc["config"] = config.echo();
    return doc;
}

} // namespace fockpulse
