// Exercises the shared-library C surface end to end: status codes, handle
// accessors, writers and the thread-local error message.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockpulse.h"

namespace {

const char* kFig2 = R"({
  "atom": {"preset": "rb87_f2"},
  "params": {"unit": "MHz", "times_2pi": true, "g": 10, "k": 3, "gamma_sp": 5.87,
             "omega1": 10, "delta": 100},
  "pulse": {"kind": "gaussian", "T": 1.0, "center": 0.0},
  "mode": {"uniform_couplings": true, "spontaneous_emission": false},
  "initial": {"m_F": -2}
})";

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("version and wigner entry points") {
    CHECK(std::string(fp_version()).find('.') != std::string::npos);

    double value = 0.0;
    int zero = 0;
    CHECK(fp_wigner_3j(2, 2, 0, 0, 0, 0, &value, &zero) == FP_OK);
    CHECK(value == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(zero == 0);

    CHECK(fp_wigner_3j(2, 2, 2, 2, 2, 2, &value, &zero) == FP_OK);
    CHECK(zero == 1);
    CHECK(value == 0.0);

    CHECK(fp_wigner_6j(1, 3, 2, 6, 4, 3, &value, &zero) == FP_OK);
    CHECK(value == doctest::Approx(std::sqrt(5.0) / 10.0).epsilon(1e-14));

    // domain error: |m| > j
    CHECK(fp_wigner_3j(2, 2, 2, 4, -2, -2, &value, &zero) == FP_ERR_DOMAIN);
    CHECK(std::string(fp_last_error()).find("m") != std::string::npos);
    CHECK(fp_wigner_3j(2, 2, 2, 0, 0, 0, nullptr, &zero) == FP_ERR_ARG);
}

TEST_CASE("simulate through the C API") {
    fp_run* run = nullptr;
    REQUIRE(fp_run_simulate(kFig2, &run) == FP_OK);
    REQUIRE(run != nullptr);

    const size_t n = fp_run_sample_count(run);
    CHECK(n > 1000);
    CHECK(fp_run_level_count(run) == 5);
    CHECK(fp_run_pulse_count(run) == 1);

    std::vector<double> t(n), flux(n), nout(n), top(n);
    CHECK(fp_run_times(run, t.data(), n) == FP_OK);
    CHECK(fp_run_flux(run, flux.data(), n) == FP_OK);
    CHECK(fp_run_photon_number(run, nout.data(), n) == FP_OK);
    CHECK(fp_run_population(run, 4, top.data(), n) == FP_OK);  // m = +2

    CHECK(t.front() == doctest::Approx(-6.0));
    CHECK(t.back() == doctest::Approx(6.0));
    CHECK(nout.back() == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(top.back() > 0.999);

    // buffer too small and bad sublevels are argument errors
    CHECK(fp_run_times(run, t.data(), 3) == FP_ERR_ARG);
    CHECK(fp_run_population(run, 7, top.data(), n) == FP_ERR_DOMAIN);

    const nlohmann::json summary = nlohmann::json::parse(fp_run_summary_json(run));
    CHECK(summary["command"] == "simulate");
    CHECK(summary["n_out_infinity"].get<double>() == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(summary["r_sn"].get<double>() == doctest::Approx(22.714).epsilon(1e-3));
    CHECK(summary.contains("validity"));
    CHECK(summary["config"]["params"]["times_2pi"].get<bool>());

    const std::string csv = temp_path("fp_capi_timeseries.csv");
    CHECK(fp_run_write_csv(run, csv.c_str()) == FP_OK);
    const std::string text = slurp(csv);
    CHECK(text.rfind("t,sigma_-2,sigma_-1,sigma_0,sigma_1,sigma_2,flux,flux_over_k,n_out\n",
                     0) == 0);
    const std::string svg = temp_path("fp_capi_plot.svg");
    CHECK(fp_run_write_svg(run, svg.c_str()) == FP_OK);
    CHECK(slurp(svg).rfind("<svg", 0) == 0);

    CHECK(fp_run_write_csv(run, "/nonexistent_dir_xyz/out.csv") == FP_ERR_IO);

    fp_run_free(run);
}

TEST_CASE("train and analytic handles") {
    nlohmann::json doc = nlohmann::json::parse(kFig2);
    doc["schedule"]["delay"] = 10.0;
    const std::string cfg = doc.dump();

    fp_run* train = nullptr;
    REQUIRE(fp_run_train(cfg.c_str(), 2, &train) == FP_OK);
    CHECK(fp_run_pulse_count(train) == 2);
    double counts[2] = {0, 0};
    CHECK(fp_run_per_pulse_counts(train, counts, 2) == FP_OK);
    CHECK(counts[0] == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(counts[1] == doctest::Approx(4.0).epsilon(1e-3));
    const std::string pc = temp_path("fp_capi_per_cycle.csv");
    CHECK(fp_run_write_per_cycle_csv(train, pc.c_str()) == FP_OK);
    CHECK(slurp(pc).rfind("cycle,polarization,t_begin,t_end,photons\n", 0) == 0);
    fp_run_free(train);

    fp_run* ana = nullptr;
    REQUIRE(fp_run_analytic(R"({"F": 2, "theta_max": 20, "points": 101})", &ana) == FP_OK);
    CHECK(fp_run_sample_count(ana) == 101);
    CHECK(fp_run_level_count(ana) == 5);
    std::vector<double> p4(101);
    CHECK(fp_run_population(ana, 4, p4.data(), 101) == FP_OK);
    CHECK(p4.back() > 0.99);
    const std::string dist = temp_path("fp_capi_distribution.csv");
    CHECK(fp_run_write_csv(ana, dist.c_str()) == FP_OK);
    CHECK(slurp(dist).rfind("theta,t,envelope,P_0,P_1,P_2,P_3,P_4,n_out\n", 0) == 0);
    fp_run_free(ana);

    // analytic runs also accept a full config
    fp_run* ana2 = nullptr;
    REQUIRE(fp_run_analytic(kFig2, &ana2) == FP_OK);
    std::vector<double> nout(fp_run_sample_count(ana2));
    CHECK(fp_run_photon_number(ana2, nout.data(), nout.size()) == FP_OK);
    CHECK(nout.back() == doctest::Approx(4.0).epsilon(1e-3));
    fp_run_free(ana2);
}

TEST_CASE("configuration and argument failures") {
    fp_run* run = nullptr;
    CHECK(fp_run_simulate("{ not json", &run) == FP_ERR_CONFIG);
    CHECK(std::string(fp_last_error()).find("JSON") != std::string::npos);

    CHECK(fp_run_simulate(R"({"atom": {"preset": "rb87_f2"}})", &run) == FP_ERR_CONFIG);
    CHECK(fp_run_simulate(nullptr, &run) == FP_ERR_ARG);
    CHECK(fp_run_train(kFig2, 0, &run) == FP_ERR_CONFIG);

    // times_2pi is mandatory
    nlohmann::json doc = nlohmann::json::parse(kFig2);
    doc["params"].erase("times_2pi");
    CHECK(fp_run_simulate(doc.dump().c_str(), &run) == FP_ERR_CONFIG);
    CHECK(std::string(fp_last_error()).find("times_2pi") != std::string::npos);
}

TEST_CASE("coeffs and sweep writers") {
    const std::string coeffs = temp_path("fp_capi_coeffs.csv");
    REQUIRE(fp_write_coeffs_csv(kFig2, "sigma_plus", coeffs.c_str()) == FP_OK);
    const std::string text = slurp(coeffs);
    CHECK(text.rfind("kind,m_from,m_to,value,exact_zero\n", 0) == 0);
    CHECK(text.find("cavity") != std::string::npos);
    CHECK(text.find("decay") != std::string::npos);
    CHECK(fp_write_coeffs_csv(kFig2, "linear", coeffs.c_str()) == FP_ERR_CONFIG);

    const std::string sweep = temp_path("fp_capi_sweep.csv");
    const double values[2] = {5.0, 10.0};
    REQUIRE(fp_run_sweep_csv(kFig2, "params.omega1", values, 2, 2, sweep.c_str()) == FP_OK);
    const std::string rows = slurp(sweep);
    CHECK(rows.rfind("value,n_out_infinity,peak_flux,r_sn", 0) == 0);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);  // header + 2 rows

    CHECK(fp_run_sweep_csv(kFig2, "params.nope", values, 2, 1, sweep.c_str()) ==
          FP_ERR_CONFIG);
    CHECK(fp_run_sweep_csv(kFig2, "params.omega1", values, 0, 1, sweep.c_str()) ==
          FP_ERR_CONFIG);
}
