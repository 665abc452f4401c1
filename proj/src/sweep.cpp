#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "error.hpp"
#include "output.hpp"

namespace fockpulse {

namespace {

int sweep_thread_count(const SweepSpec& spec) {
    int n = spec.threads > 0 ? spec.threads
                             : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("FOCKPULSE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::min<int>(n, static_cast<int>(spec.values.size()));
}

SweepRow run_one(const Json& base, const SweepSpec& spec, double value) {
    Json doc = base;
    set_json_path(doc, spec.param_path, value);
    const RunConfig cfg = parse_run_config(doc);
    const SimulationResult sim = integrate(cfg.atom, cfg.params, build_schedule(cfg, 1),
                                           cfg.mode, cfg.initial, cfg.integrator);
    SweepRow row;
    row.value = value;
    row.n_out_infinity = sim.n_out_final();
    row.peak_flux =
        sim.flux.empty() ? 0.0 : *std::max_element(sim.flux.begin(), sim.flux.end());
    row.r_sn = sim.r_sn;
    for (const auto& c : sim.validity.conditions) {
        row.validity.emplace_back(c.name, c.pass);
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const std::string& base_config_json, const SweepSpec& spec) {
    if (spec.values.empty()) throw ConfigError("sweep grid is empty");
    if (spec.param_path.empty()) throw ConfigError("sweep parameter path is empty");
    Json base;
    try {
        base = Json::parse(base_config_json);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    // validate the path and the base config up front, on the first value
    run_one(base, spec, spec.values.front());

    std::vector<SweepRow> rows(spec.values.size());
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const int n_threads = sweep_thread_count(spec);
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (int w = 0; w < n_threads; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const size_t i = next.fetch_add(1);
                if (i >= spec.values.size()) return;
                try {
                    rows[i] = run_one(base, spec, spec.values[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string s = "value,n_out_infinity,peak_flux,r_sn";
    if (!rows.empty()) {
        for (const auto& [name, _] : rows.front().validity) s += ",valid_" + name;
    }
    s += '\n';
    for (const auto& row : rows) {
        s += format_number(row.value);
        s += ',';
        s += format_number(row.n_out_infinity);
        s += ',';
        s += format_number(row.peak_flux);
        s += ',';
        s += format_number(row.r_sn);
        for (const auto& [_, pass] : row.validity) {
            s += ',';
            s += pass ? "pass" : "warn";
        }
        s += '\n';
    }
    return s;
}

} // namespace fockpulse
