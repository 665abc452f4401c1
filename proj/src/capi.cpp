#include "fockpulse.h"

#include <cstring>
#include <string>

#include "error.hpp"
#include "run.hpp"
#include "sweep.hpp"

#define FP_EXPORT __attribute__((visibility("default")))

using namespace fockpulse;

struct fp_run {
    RunArtifacts art;
    std::string summary_text;
};

namespace {

thread_local std::string g_last_error;

fp_status set_error(fp_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <typename Fn>
fp_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        return set_error(FP_ERR_CONFIG, e.what());
    } catch (const DomainError& e) {
        return set_error(FP_ERR_DOMAIN, e.what());
    } catch (const NumericError& e) {
        return set_error(FP_ERR_NUMERIC, e.what());
    } catch (const IoError& e) {
        return set_error(FP_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return set_error(FP_ERR_NUMERIC, std::string("internal error: ") + e.what());
    }
}

fp_status copy_vector(const std::vector<double>& src, double* out, size_t capacity) {
    if (out == nullptr) return set_error(FP_ERR_ARG, "output buffer is null");
    if (capacity < src.size()) {
        return set_error(FP_ERR_ARG, "output buffer holds " + std::to_string(capacity) +
                                         " values, need " + std::to_string(src.size()));
    }
    std::memcpy(out, src.data(), src.size() * sizeof(double));
    return FP_OK;
}

fp_status make_run(fp_run** out_run, RunArtifacts&& art) {
    auto* run = new fp_run{std::move(art), {}};
    run->summary_text = run->art.summary.dump(2) + "\n";
    *out_run = run;
    return FP_OK;
}

const std::vector<double>& times_of(const fp_run* run) {
    return run->art.kind == RunKind::analytic ? run->art.ana.t : run->art.sim.time;
}

} // namespace

extern "C" {

FP_EXPORT const char* fp_version(void) { return "0.1.0"; }

FP_EXPORT const char* fp_last_error(void) { return g_last_error.c_str(); }

FP_EXPORT fp_status fp_wigner_3j(int two_j1, int two_j2, int two_j3,
                                 int two_m1, int two_m2, int two_m3,
                                 double* value, int* is_exact_zero) {
    if (!value || !is_exact_zero) return set_error(FP_ERR_ARG, "output pointer is null");
    return guarded([&] {
        const SymbolValue s = wigner_3j(
            HalfInt::from_twice(two_j1), HalfInt::from_twice(two_j2),
            HalfInt::from_twice(two_j3), HalfInt::from_twice(two_m1),
            HalfInt::from_twice(two_m2), HalfInt::from_twice(two_m3));
        *value = s.value;
        *is_exact_zero = s.is_exact_zero ? 1 : 0;
        return FP_OK;
    });
}

FP_EXPORT fp_status fp_wigner_6j(int two_j1, int two_j2, int two_j3,
                                 int two_j4, int two_j5, int two_j6,
                                 double* value, int* is_exact_zero) {
    if (!value || !is_exact_zero) return set_error(FP_ERR_ARG, "output pointer is null");
    return guarded([&] {
        const SymbolValue s = wigner_6j(
            HalfInt::from_twice(two_j1), HalfInt::from_twice(two_j2),
            HalfInt::from_twice(two_j3), HalfInt::from_twice(two_j4),
            HalfInt::from_twice(two_j5), HalfInt::from_twice(two_j6));
        *value = s.value;
        *is_exact_zero = s.is_exact_zero ? 1 : 0;
        return FP_OK;
    });
}

FP_EXPORT fp_status fp_run_simulate(const char* config_json, fp_run** out_run) {
    if (!config_json || !out_run) return set_error(FP_ERR_ARG, "argument is null");
    return guarded([&] { return make_run(out_run, run_simulate(config_json)); });
}

FP_EXPORT fp_status fp_run_train(const char* config_json, int n_cycles, fp_run** out_run) {
    if (!config_json || !out_run) return set_error(FP_ERR_ARG, "argument is null");
    return guarded([&] { return make_run(out_run, run_train(config_json, n_cycles)); });
}

FP_EXPORT fp_status fp_run_analytic(const char* request_json, fp_run** out_run) {
    if (!request_json || !out_run) return set_error(FP_ERR_ARG, "argument is null");
    return guarded([&] { return make_run(out_run, run_analytic(request_json)); });
}

FP_EXPORT void fp_run_free(fp_run* run) { delete run; }

FP_EXPORT size_t fp_run_sample_count(const fp_run* run) {
    return run ? times_of(run).size() : 0;
}

FP_EXPORT size_t fp_run_level_count(const fp_run* run) {
    if (!run) return 0;
    if (run->art.kind == RunKind::analytic) return run->art.ana.p.size();
    return static_cast<size_t>(run->art.sim.level_count);
}

FP_EXPORT size_t fp_run_pulse_count(const fp_run* run) {
    return run ? run->art.sim.per_pulse.size() : 0;
}

FP_EXPORT fp_status fp_run_times(const fp_run* run, double* out, size_t capacity) {
    if (!run) return set_error(FP_ERR_ARG, "run handle is null");
    return copy_vector(times_of(run), out, capacity);
}

FP_EXPORT fp_status fp_run_flux(const fp_run* run, double* out, size_t capacity) {
    if (!run) return set_error(FP_ERR_ARG, "run handle is null");
    if (run->art.kind == RunKind::analytic) {
        return set_error(FP_ERR_ARG, "analytic runs carry no flux samples");
    }
    return copy_vector(run->art.sim.flux, out, capacity);
}

FP_EXPORT fp_status fp_run_photon_number(const fp_run* run, double* out, size_t capacity) {
    if (!run) return set_error(FP_ERR_ARG, "run handle is null");
    return copy_vector(run->art.kind == RunKind::analytic ? run->art.ana.n_out
                                                          : run->art.sim.n_out,
                       out, capacity);
}

FP_EXPORT fp_status fp_run_population(const fp_run* run, int two_m_f, double* out,
                                      size_t capacity) {
    if (!run) return set_error(FP_ERR_ARG, "run handle is null");
    return guarded([&]() -> fp_status {
        if (run->art.kind == RunKind::analytic) {
            const int f2 = run->art.ana.f.twice();
            const int idx = (two_m_f + f2) / 2;
            if ((two_m_f + f2) % 2 != 0 || idx < 0 ||
                idx >= static_cast<int>(run->art.ana.p.size())) {
                return set_error(FP_ERR_DOMAIN, "no such ground sublevel");
            }
            return copy_vector(run->art.ana.p[idx], out, capacity);
        }
        const SimulationResult& sim = run->art.sim;
        const int f2 = sim.atom.f_ground.twice();
        const int idx = (two_m_f + f2) / 2;
        if ((two_m_f + f2) % 2 != 0 || idx < 0 || idx >= sim.level_count) {
            return set_error(FP_ERR_DOMAIN, "no such ground sublevel");
        }
        std::vector<double> v(sim.sample_count());
        for (int s = 0; s < sim.sample_count(); ++s) v[s] = sim.population(s, idx);
        return copy_vector(v, out, capacity);
    });
}

FP_EXPORT fp_status fp_run_per_pulse_counts(const fp_run* run, double* out, size_t capacity) {
    if (!run) return set_error(FP_ERR_ARG, "run handle is null");
    std::vector<double> counts;
    counts.reserve(run->art.sim.per_pulse.size());
    for (const auto& c : run->art.sim.per_pulse) counts.push_back(c.photons);
    return copy_vector(counts, out, capacity);
}

FP_EXPORT const char* fp_run_summary_json(const fp_run* run) {
    return run ? run->summary_text.c_str() : "";
}

FP_EXPORT fp_status fp_run_write_csv(const fp_run* run, const char* path) {
    if (!run || !path) return set_error(FP_ERR_ARG, "argument is null");
    return guarded([&] {
        write_text_file(path, primary_csv(run->art));
        return FP_OK;
    });
}

FP_EXPORT fp_status fp_run_write_per_cycle_csv(const fp_run* run, const char* path) {
    if (!run || !path) return set_error(FP_ERR_ARG, "argument is null");
    if (run->art.kind == RunKind::analytic) {
        return set_error(FP_ERR_ARG, "analytic runs have no per-cycle counts");
    }
    return guarded([&] {
        write_text_file(path, per_cycle_csv(run->art.sim));
        return FP_OK;
    });
}

FP_EXPORT fp_status fp_run_write_summary_json(const fp_run* run, const char* path) {
    if (!run || !path) return set_error(FP_ERR_ARG, "argument is null");
    return guarded([&] {
        write_text_file(path, run->summary_text);
        return FP_OK;
    });
}

FP_EXPORT fp_status fp_run_write_svg(const fp_run* run, const char* path) {
    if (!run || !path) return set_error(FP_ERR_ARG, "argument is null");
    return guarded([&] {
        write_text_file(path, figure_svg(run->art));
        return FP_OK;
    });
}

FP_EXPORT fp_status fp_write_coeffs_csv(const char* config_json, const char* polarization,
                                        const char* path) {
    if (!config_json || !polarization || !path) {
        return set_error(FP_ERR_ARG, "argument is null");
    }
    return guarded([&]() -> fp_status {
        Polarization pol;
        const std::string p = polarization;
        if (p == "sigma_plus" || p == "sigma+") {
            pol = Polarization::sigma_plus;
        } else if (p == "sigma_minus" || p == "sigma-") {
            pol = Polarization::sigma_minus;
        } else {
            return set_error(FP_ERR_CONFIG,
                             "polarization must be sigma_plus or sigma_minus");
        }
        const RunConfig cfg = parse_run_config_text(config_json);
        const CouplingTable table(cfg.atom, cfg.params, pol, cfg.mode.uniform_couplings);
        write_text_file(path, coeffs_csv(table));
        return FP_OK;
    });
}

FP_EXPORT fp_status fp_run_sweep_csv(const char* config_json, const char* param_path,
                                     const double* values, size_t n_values, int threads,
                                     const char* out_csv_path) {
    if (!config_json || !param_path || !values || !out_csv_path) {
        return set_error(FP_ERR_ARG, "argument is null");
    }
    return guarded([&] {
        SweepSpec spec;
        spec.param_path = param_path;
        spec.values.assign(values, values + n_values);
        spec.threads = threads;
        write_text_file(out_csv_path, sweep_csv(run_sweep(config_json, spec)));
        return FP_OK;
    });
}

} // extern "C"
