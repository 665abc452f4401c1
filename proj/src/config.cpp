#include "config.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "error.hpp"
#include "pulse.hpp"

namespace fockpulse {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("invalid config at " + path + ": " + msg);
}

const Json& require(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.is_object() || !obj.contains(key)) {
        fail(path.empty() ? key : path + "." + key, "missing required field");
    }
    return obj.at(key);
}

double get_number(const Json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

bool get_bool(const Json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
}

std::string get_string(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

void reject_unknown_keys(const Json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) fail(path + "." + key, "unknown field");
    }
}

Polarization polarization_from_json(const Json& v, const std::string& path) {
    const std::string s = get_string(v, path);
    if (s == "sigma_plus" || s == "sigma+") return Polarization::sigma_plus;
    if (s == "sigma_minus" || s == "sigma-") return Polarization::sigma_minus;
    fail(path, "expected sigma_plus or sigma_minus");
}

PulseShape parse_pulse_shape(const Json& p, const std::string& path) {
    reject_unknown_keys(p, path, {"kind", "T", "center", "samples", "samples_csv",
                                  "polarization", "delay"});
    PulseShape shape;
    shape.kind = pulse_kind_from_name(get_string(require(p, path, "kind"), path + ".kind"));
    if (shape.kind == PulseKind::tabulated) {
        if (p.contains("samples_csv")) {
            shape = tabulated_from_csv(get_string(p.at("samples_csv"), path + ".samples_csv"));
        } else if (p.contains("samples")) {
            const Json& samples = p.at("samples");
            if (!samples.is_array()) fail(path + ".samples", "expected an array of [t, f] pairs");
            for (const auto& s : samples) {
                if (!s.is_array() || s.size() != 2) {
                    fail(path + ".samples", "expected [t, f] pairs");
                }
                shape.samples.emplace_back(get_number(s[0], path + ".samples"),
                                           get_number(s[1], path + ".samples"));
            }
            if (!shape.samples.empty()) {
                shape.center = 0.5 * (shape.samples.front().first + shape.samples.back().first);
                shape.duration = shape.samples.back().first - shape.samples.front().first;
            }
        } else {
            fail(path, "tabulated pulse needs samples or samples_csv");
        }
    } else {
        shape.duration = get_number(require(p, path, "T"), path + ".T");
    }
    if (p.contains("center")) {
        if (shape.kind == PulseKind::tabulated) {
            fail(path + ".center", "tabulated pulses take their center from the samples");
        }
        shape.center = get_number(p.at("center"), path + ".center");
    }
    try {
        shape.validate();
    } catch (const ConfigError& e) {
        fail(path, e.what());
    }
    return shape;
}

} // namespace

HalfInt half_int_from_json(const Json& v, const std::string& field) {
    try {
        if (v.is_string()) return HalfInt::from_string(v.get<std::string>());
        if (v.is_number()) return HalfInt::from_double(v.get<double>());
    } catch (const DomainError& e) {
        fail(field, e.what());
    }
    fail(field, "expected a number or a string like \"3/2\"");
}

RunConfig parse_run_config(const Json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown_keys(doc, "config",
                        {"atom", "params", "pulse", "pulses", "schedule", "mode",
                         "initial", "integrator"});
    RunConfig cfg;

    // ---- atom ----
    const Json& atom = require(doc, "", "atom");
    if (atom.contains("preset")) {
        reject_unknown_keys(atom, "atom", {"preset"});
        cfg.atom_preset = get_string(atom.at("preset"), "atom.preset");
        cfg.atom = atom_preset(*cfg.atom_preset);
    } else {
        reject_unknown_keys(atom, "atom", {"J", "J_excited", "I", "F", "F_excited", "label"});
        cfg.atom.j_ground = half_int_from_json(require(atom, "atom", "J"), "atom.J");
        cfg.atom.j_excited =
            half_int_from_json(require(atom, "atom", "J_excited"), "atom.J_excited");
        cfg.atom.nuclear_i = half_int_from_json(require(atom, "atom", "I"), "atom.I");
        cfg.atom.f_ground = half_int_from_json(require(atom, "atom", "F"), "atom.F");
        cfg.atom.f_excited =
            half_int_from_json(require(atom, "atom", "F_excited"), "atom.F_excited");
        cfg.atom.label = atom.contains("label")
                             ? get_string(atom.at("label"), "atom.label")
                             : "custom";
    }
    try {
        cfg.atom.validate();
    } catch (const ConfigError& e) {
        fail("atom", e.what());
    }

    // ---- params (MHz + times_2pi -> rad/us) ----
    const Json& params = require(doc, "", "params");
    reject_unknown_keys(params, "params",
                        {"unit", "times_2pi", "g", "k", "gamma_sp", "omega1", "omega2",
                         "delta"});
    if (params.contains("unit")) {
        const std::string unit = get_string(params.at("unit"), "params.unit");
        if (unit != "MHz") fail("params.unit", "only MHz is supported");
    }
    cfg.times_2pi = get_bool(require(params, "params", "times_2pi"), "params.times_2pi");
    const double scale = cfg.times_2pi ? 2.0 * std::numbers::pi : 1.0;
    cfg.g_in = get_number(require(params, "params", "g"), "params.g");
    cfg.k_in = get_number(require(params, "params", "k"), "params.k");
    cfg.gamma_sp_in = get_number(require(params, "params", "gamma_sp"), "params.gamma_sp");
    cfg.omega1_in = get_number(require(params, "params", "omega1"), "params.omega1");
    cfg.delta_in = get_number(require(params, "params", "delta"), "params.delta");
    cfg.params.g = scale * cfg.g_in;
    cfg.params.k = scale * cfg.k_in;
    cfg.params.gamma_sp = scale * cfg.gamma_sp_in;
    cfg.params.omega1 = scale * cfg.omega1_in;
    cfg.params.delta = scale * cfg.delta_in;
    if (params.contains("omega2")) {
        cfg.omega2_in = get_number(params.at("omega2"), "params.omega2");
        cfg.params.omega2 = scale * *cfg.omega2_in;
    }
    try {
        cfg.params.validate();
    } catch (const ConfigError& e) {
        fail("params", e.what());
    }

    // ---- pulses ----
    if (doc.contains("pulses") && doc.contains("pulse")) {
        fail("pulses", "give either pulse or pulses, not both");
    }
    if (doc.contains("pulses")) {
        const Json& arr = doc.at("pulses");
        if (!arr.is_array() || arr.empty()) fail("pulses", "expected a non-empty array");
        cfg.explicit_pulse_list = true;
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "pulses[" + std::to_string(i) + "]";
            ScheduledPulse sp;
            sp.shape = parse_pulse_shape(arr[i], path);
            sp.polarization = polarization_from_json(
                require(arr[i], path, "polarization"), path + ".polarization");
            if (arr[i].contains("delay")) {
                sp.delay = get_number(arr[i].at("delay"), path + ".delay");
            } else if (i > 0) {
                sp.delay = 3.0 * cfg.pulses[i - 1].shape.duration;
            }
            cfg.pulses.push_back(std::move(sp));
        }
    } else {
        const Json& pulse = require(doc, "", "pulse");
        ScheduledPulse sp;
        sp.shape = parse_pulse_shape(pulse, "pulse");
        if (pulse.contains("polarization") || pulse.contains("delay")) {
            fail("pulse", "polarization and delay belong to the schedule section");
        }
        sp.polarization = Polarization::sigma_plus;
        cfg.pulses.push_back(std::move(sp));
    }

    // ---- schedule ----
    cfg.train_delay = 3.0 * cfg.pulses.front().shape.duration;
    if (doc.contains("schedule")) {
        const Json& sched = doc.at("schedule");
        reject_unknown_keys(sched, "schedule", {"polarization", "delay"});
        if (sched.contains("polarization")) {
            if (cfg.explicit_pulse_list) {
                fail("schedule.polarization", "pulses[] entries carry their own polarization");
            }
            cfg.pulses.front().polarization =
                polarization_from_json(sched.at("polarization"), "schedule.polarization");
        }
        if (sched.contains("delay")) {
            cfg.train_delay = get_number(sched.at("delay"), "schedule.delay");
            if (cfg.train_delay < cfg.pulses.front().shape.duration) {
                fail("schedule.delay", "delay must be at least the pulse duration");
            }
        }
    }

    // ---- mode ----
    if (doc.contains("mode")) {
        const Json& mode = doc.at("mode");
        reject_unknown_keys(mode, "mode", {"uniform_couplings", "spontaneous_emission"});
        if (mode.contains("uniform_couplings")) {
            cfg.mode.uniform_couplings =
                get_bool(mode.at("uniform_couplings"), "mode.uniform_couplings");
        }
        if (mode.contains("spontaneous_emission")) {
            cfg.mode.spontaneous_emission =
                get_bool(mode.at("spontaneous_emission"), "mode.spontaneous_emission");
        }
    }

    // ---- initial ----
    if (doc.contains("initial")) {
        const Json& initial = doc.at("initial");
        reject_unknown_keys(initial, "initial", {"m_F", "populations"});
        if (initial.contains("m_F") && initial.contains("populations")) {
            fail("initial", "give either m_F or populations, not both");
        }
        if (initial.contains("m_F")) {
            cfg.initial.m_f = half_int_from_json(initial.at("m_F"), "initial.m_F");
        }
        if (initial.contains("populations")) {
            const Json& pops = initial.at("populations");
            if (!pops.is_array()) fail("initial.populations", "expected an array");
            std::vector<double> v;
            for (const auto& x : pops) v.push_back(get_number(x, "initial.populations"));
            cfg.initial.populations = std::move(v);
        }
    }

    // ---- integrator ----
    if (doc.contains("integrator")) {
        const Json& integ = doc.at("integrator");
        reject_unknown_keys(integ, "integrator",
                            {"abs_tol", "rel_tol", "max_step", "grid_per_duration"});
        if (integ.contains("abs_tol")) {
            cfg.integrator.abs_tol = get_number(integ.at("abs_tol"), "integrator.abs_tol");
        }
        if (integ.contains("rel_tol")) {
            cfg.integrator.rel_tol = get_number(integ.at("rel_tol"), "integrator.rel_tol");
        }
        if (integ.contains("max_step")) {
            cfg.integrator.max_step = get_number(integ.at("max_step"), "integrator.max_step");
        }
        if (integ.contains("grid_per_duration")) {
            cfg.integrator.grid_per_duration = static_cast<int>(
                get_number(integ.at("grid_per_duration"), "integrator.grid_per_duration"));
        }
        if (!(cfg.integrator.abs_tol > 0.0) || !(cfg.integrator.rel_tol > 0.0)) {
            fail("integrator", "tolerances must be positive");
        }
    }

    return cfg;
}

RunConfig parse_run_config_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(doc);
}

PulseSchedule build_schedule(const RunConfig& config, int cycles) {
    if (cycles < 1) throw ConfigError("cycles must be >= 1");
    if (cycles == 1) return PulseSchedule::build(config.pulses);
    if (config.pulses.size() != 1) {
        throw ConfigError("trains replicate a single-pulse configuration; "
                          "this config already lists several pulses");
    }
    ScheduledPulse first = config.pulses.front();
    first.delay = config.train_delay;
    return PulseSchedule::train(first, cycles);
}

void set_json_path(Json& root, const std::string& dotted_path, const Json& value) {
    if (dotted_path.empty()) throw ConfigError("empty config path");
    Json* node = &root;
    size_t pos = 0;
    while (true) {
        const size_t dot = dotted_path.find('.', pos);
        const std::string key = dotted_path.substr(pos, dot - pos);
        if (key.empty()) throw ConfigError("malformed config path '" + dotted_path + "'");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        if (!node->contains(key) || !(*node)[key].is_object()) {
            (*node)[key] = Json::object();
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

OrderedJson RunConfig::echo() const {
    OrderedJson doc;
    OrderedJson atom_node;
    if (atom_preset) {
        atom_node["preset"] = *atom_preset;
    } else {
        atom_node["J"] = atom.j_ground.str();
        atom_node["J_excited"] = atom.j_excited.str();
        atom_node["I"] = atom.nuclear_i.str();
        atom_node["F"] = atom.f_ground.str();
        atom_node["F_excited"] = atom.f_excited.str();
        atom_node["label"] = atom.label;
    }
    doc["atom"] = atom_node;

    OrderedJson params_node;
    params_node["unit"] = "MHz";
    params_node["times_2pi"] = times_2pi;
    params_node["g"] = g_in;
    params_node["k"] = k_in;
    params_node["gamma_sp"] = gamma_sp_in;
    params_node["omega1"] = omega1_in;
    if (omega2_in) params_node["omega2"] = *omega2_in;
    params_node["delta"] = delta_in;
    doc["params"] = params_node;

    const auto pulse_node = [](const ScheduledPulse& sp, bool with_pol, bool with_delay) {
        OrderedJson p;
        p["kind"] = pulse_kind_name(sp.shape.kind);
        if (sp.shape.kind == PulseKind::tabulated) {
            OrderedJson samples = OrderedJson::array();
            for (const auto& [t, f] : sp.shape.samples) {
                samples.push_back(OrderedJson::array({t, f}));
            }
            p["samples"] = samples;
        } else {
            p["T"] = sp.shape.duration;
        }
        p["center"] = sp.shape.center;
        if (with_pol) p["polarization"] = polarization_name(sp.polarization);
        if (with_delay) p["delay"] = sp.delay;
        return p;
    };

    if (explicit_pulse_list) {
        OrderedJson arr = OrderedJson::array();
        for (size_t i = 0; i < pulses.size(); ++i) {
            arr.push_back(pulse_node(pulses[i], true, i > 0));
        }
        doc["pulses"] = arr;
    } else {
        doc["pulse"] = pulse_node(pulses.front(), false, false);
        OrderedJson sched;
        sched["polarization"] = polarization_name(pulses.front().polarization);
        sched["delay"] = train_delay;
        doc["schedule"] = sched;
    }

    OrderedJson mode_node;
    mode_node["uniform_couplings"] = mode.uniform_couplings;
    mode_node["spontaneous_emission"] = mode.spontaneous_emission;
    doc["mode"] = mode_node;

    OrderedJson initial_node;
    if (initial.populations) {
        initial_node["populations"] = *initial.populations;
    } else {
        initial_node["m_F"] = initial.m_f.value_or(-atom.f_ground).str();
    }
    doc["initial"] = initial_node;

    OrderedJson integ;
    integ["abs_tol"] = integrator.abs_tol;
    integ["rel_tol"] = integrator.rel_tol;
    integ["max_step"] = integrator.max_step;
    integ["grid_per_duration"] = integrator.grid_per_duration;
    doc["integrator"] = integ;
    return doc;
}

} // namespace fockpulse
