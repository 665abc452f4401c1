#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "config.hpp"

namespace fockpulse {

// Fixed CSV number format: 12 significant digits, lowercase scientific.
std::string format_number(double v);

// Opens path for writing, throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

// t, sigma_{-F}..sigma_{+F}, flux, flux_over_k, n_out
std::string timeseries_csv(const SimulationResult& result);

// cycle, polarization, t_begin, t_end, photons
std::string per_cycle_csv(const SimulationResult& result);

// Analytic distribution trajectory.
struct AnalyticSeries {
    HalfInt f;
    std::vector<double> theta;
    std::vector<double> t;
    std::vector<double> envelope;
    std::vector<std::vector<double>> p;  // [j][sample], j = 0..2F
    std::vector<double> n_out;
};

// theta, t, envelope, P_0..P_{2F}
std::string distribution_csv(const AnalyticSeries& series);

// kind, m_from, m_to, value, exact_zero
std::string coeffs_csv(const CouplingTable& table);

// Structured run summary (n_out, per-pulse counts, R_sn, validity report,
// effective config echo).
OrderedJson summary_json(const std::string& command, const SimulationResult& result,
                         const RunConfig& config);

} // namespace fockpulse
