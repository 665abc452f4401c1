// Command-line front end for the fockpulse shared library. All physics goes
// through the C API; this file only handles flags, config overrides and
// output paths.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fockpulse.h"

namespace {

using nlohmann::json;

// CLI exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 I/O error.
int exit_code_for(fp_status status) {
    switch (status) {
        case FP_OK: return 0;
        case FP_ERR_NUMERIC: return 3;
        case FP_ERR_IO: return 4;
        default: return 2;
    }
}

[[noreturn]] void fail(fp_status status) {
    std::cerr << "error: " << fp_last_error() << "\n";
    std::exit(exit_code_for(status));
}

[[noreturn]] void fail_config(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(2);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config file '" << path << "'\n";
        std::exit(4);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Applies --set key.path=value overrides; values parse as JSON when
// possible and fall back to strings ("gaussian" needs no quoting).
std::string apply_overrides(const std::string& config_text,
                            const std::vector<std::string>& sets) {
    json doc;
    try {
        doc = json::parse(config_text);
    } catch (const json::parse_error& e) {
        fail_config(std::string("config is not valid JSON: ") + e.what());
    }
    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            fail_config("--set expects key.path=value, got '" + kv + "'");
        }
        const std::string path = kv.substr(0, eq);
        const std::string raw = kv.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;
        }
        json* node = &doc;
        size_t pos = 0;
        while (true) {
            const size_t dot = path.find('.', pos);
            const std::string key = path.substr(pos, dot - pos);
            if (key.empty()) fail_config("malformed --set path '" + path + "'");
            if (dot == std::string::npos) {
                (*node)[key] = value;
                break;
            }
            if (!node->contains(key) || !(*node)[key].is_object()) {
                (*node)[key] = json::object();
            }
            node = &(*node)[key];
            pos = dot + 1;
        }
    }
    return doc.dump();
}

std::string out_path(const std::string& dir, const char* name) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    return (std::filesystem::path(dir) / name).string();
}

void write_run_outputs(fp_run* run, const std::string& out_dir, const char* csv_name,
                       bool per_cycle, bool svg) {
    fp_status st = fp_run_write_csv(run, out_path(out_dir, csv_name).c_str());
    if (st != FP_OK) fail(st);
    st = fp_run_write_summary_json(run, out_path(out_dir, "summary.json").c_str());
    if (st != FP_OK) fail(st);
    if (per_cycle) {
        st = fp_run_write_per_cycle_csv(run, out_path(out_dir, "per_cycle.csv").c_str());
        if (st != FP_OK) fail(st);
    }
    if (svg) {
        st = fp_run_write_svg(run, out_path(out_dir, "plot.svg").c_str());
        if (st != FP_OK) fail(st);
    }
}

void print_brief(fp_run* run) {
    const json summary = json::parse(fp_run_summary_json(run));
    if (summary.contains("n_out_infinity")) {
        std::printf("n_out(+inf) = %.6f\n", summary["n_out_infinity"].get<double>());
    }
    if (summary.contains("per_pulse") && summary["per_pulse"].size() > 1) {
        std::printf("per-cycle photons:");
        for (const auto& p : summary["per_pulse"]) {
            std::printf(" %.6f", p["photons"].get<double>());
        }
        std::printf("\n");
    }
    if (summary.contains("validity")) {
        std::printf("validity: %s\n",
                    summary["validity"]["all_pass"].get<bool>() ? "all pass" : "warnings");
    }
}

// "3/2", "-2", "1.5" -> twice-value
int parse_two_j(const std::string& s) {
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            const int num = std::stoi(s.substr(0, slash));
            const int den = std::stoi(s.substr(slash + 1));
            if (den == 2) return num;
            if (den == 1) return 2 * num;
            fail_config("half-integers use denominator 2: '" + s + "'");
        }
        const double v = std::stod(s);
        const double twice = 2.0 * v;
        if (std::abs(twice - std::round(twice)) > 1e-9) {
            fail_config("'" + s + "' is not an integer or half-integer");
        }
        return static_cast<int>(std::round(twice));
    } catch (const std::invalid_argument&) {
        fail_config("cannot parse '" + s + "' as a half-integer");
    } catch (const std::out_of_range&) {
        fail_config("value out of range: '" + s + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fockpulse: multi-photon Fock-state source simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(fp_version()));

    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> sets;
    bool no_svg = false;
    int cycles = 5;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("-c,--config", config_path, "run configuration (JSON)");
        if (needs_config) opt->required();
        sub->add_option("-o,--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--set", sets, "override a config value, e.g. --set params.omega1=20");
        sub->add_flag("--no-svg", no_svg, "skip the SVG figure");
    };

    auto* cmd_simulate = app.add_subcommand("simulate", "integrate one pulse schedule");
    add_common(cmd_simulate, true);

    auto* cmd_train = app.add_subcommand("train", "alternating sigma+/sigma- pulse train");
    add_common(cmd_train, true);
    cmd_train->add_option("-n,--cycles", cycles, "number of pulses in the train")
        ->capture_default_str();

    auto* cmd_analytic = app.add_subcommand("analytic", "lossless closed-form distribution");
    add_common(cmd_analytic, false);
    std::string f_str;
    double theta_max = 0.0;
    int points = 1001;
    cmd_analytic->add_option("--F", f_str, "ground-state F (used without --config)");
    cmd_analytic->add_option("--theta-max", theta_max, "pump area range without --config");
    cmd_analytic->add_option("--points", points, "grid points without --config")
        ->capture_default_str();

    auto* cmd_sweep = app.add_subcommand("sweep", "run one simulation per parameter value");
    add_common(cmd_sweep, true);
    std::string sweep_param;
    std::vector<double> sweep_values;
    int sweep_threads = 0;
    cmd_sweep->add_option("--param", sweep_param, "config dot path, e.g. params.omega1")
        ->required();
    cmd_sweep->add_option("--values", sweep_values, "grid values (comma separated)")
        ->required()
        ->delimiter(',');
    cmd_sweep->add_option("--threads", sweep_threads,
                          "max concurrent runs (0 = hardware)");

    auto* cmd_coeffs = app.add_subcommand("coeffs", "dump the coupling-coefficient table");
    add_common(cmd_coeffs, true);
    std::string pol = "sigma_plus";
    cmd_coeffs->add_option("--polarization", pol, "sigma_plus or sigma_minus")
        ->capture_default_str();

    auto* cmd_wigner = app.add_subcommand("wigner", "evaluate a 3j or 6j symbol");
    std::string sym_type;
    std::vector<std::string> sym_args;
    cmd_wigner->add_option("type", sym_type, "3j or 6j")->required();
    cmd_wigner
        ->add_option("values", sym_args,
                     "3j: j1 j2 j3 m1 m2 m3; 6j: j1..j6 (half-integers like 3/2)")
        ->required()
        ->expected(6);

    CLI11_PARSE(app, argc, argv);

    if (cmd_wigner->parsed()) {
        int t[6];
        for (int i = 0; i < 6; ++i) t[i] = parse_two_j(sym_args[i]);
        double value = 0.0;
        int exact_zero = 0;
        fp_status st;
        if (sym_type == "3j") {
            st = fp_wigner_3j(t[0], t[1], t[2], t[3], t[4], t[5], &value, &exact_zero);
        } else if (sym_type == "6j") {
            st = fp_wigner_6j(t[0], t[1], t[2], t[3], t[4], t[5], &value, &exact_zero);
        } else {
            fail_config("wigner type must be 3j or 6j");
        }
        if (st != FP_OK) fail(st);
        std::printf("%.15g%s\n", value, exact_zero ? " (exact zero)" : "");
        return 0;
    }

    const std::string config_text =
        config_path.empty() ? std::string() : apply_overrides(read_file(config_path), sets);

    if (cmd_simulate->parsed()) {
        fp_run* run = nullptr;
        const fp_status st = fp_run_simulate(config_text.c_str(), &run);
        if (st != FP_OK) fail(st);
        write_run_outputs(run, out_dir, "timeseries.csv", false, !no_svg);
        print_brief(run);
        fp_run_free(run);
        return 0;
    }

    if (cmd_train->parsed()) {
        fp_run* run = nullptr;
        const fp_status st = fp_run_train(config_text.c_str(), cycles, &run);
        if (st != FP_OK) fail(st);
        write_run_outputs(run, out_dir, "timeseries.csv", true, !no_svg);
        print_brief(run);
        fp_run_free(run);
        return 0;
    }

    if (cmd_analytic->parsed()) {
        std::string request = config_text;
        if (request.empty()) {
            if (f_str.empty() || theta_max <= 0.0) {
                fail_config("analytic needs --config, or --F with --theta-max");
            }
            json req;
            req["F"] = f_str;
            req["theta_max"] = theta_max;
            req["points"] = points;
            request = req.dump();
        }
        fp_run* run = nullptr;
        const fp_status st = fp_run_analytic(request.c_str(), &run);
        if (st != FP_OK) fail(st);
        fp_status wst = fp_run_write_csv(run, out_path(out_dir, "distribution.csv").c_str());
        if (wst != FP_OK) fail(wst);
        wst = fp_run_write_summary_json(run, out_path(out_dir, "summary.json").c_str());
        if (wst != FP_OK) fail(wst);
        if (!no_svg) {
            wst = fp_run_write_svg(run, out_path(out_dir, "plot.svg").c_str());
            if (wst != FP_OK) fail(wst);
        }
        fp_run_free(run);
        return 0;
    }

    if (cmd_sweep->parsed()) {
        const fp_status st = fp_run_sweep_csv(
            config_text.c_str(), sweep_param.c_str(), sweep_values.data(),
            sweep_values.size(), sweep_threads, out_path(out_dir, "sweep.csv").c_str());
        if (st != FP_OK) fail(st);
        std::printf("sweep: %zu rows\n", sweep_values.size());
        return 0;
    }

    if (cmd_coeffs->parsed()) {
        const fp_status st = fp_write_coeffs_csv(config_text.c_str(), pol.c_str(),
                                                 out_path(out_dir, "coeffs.csv").c_str());
        if (st != FP_OK) fail(st);
        return 0;
    }

    return 0;
}
