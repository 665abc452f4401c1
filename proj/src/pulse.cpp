#include "pulse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace fockpulse {

std::string pulse_kind_name(PulseKind k) {
    switch (k) {
        case PulseKind::gaussian: return "gaussian";
        case PulseKind::flat_top: return "flat_top";
        case PulseKind::tabulated: return "tabulated";
    }
    return "?";
}

PulseKind pulse_kind_from_name(const std::string& name) {
    if (name == "gaussian") return PulseKind::gaussian;
    if (name == "flat_top") return PulseKind::flat_top;
    if (name == "tabulated") return PulseKind::tabulated;
    throw ConfigError("unknown pulse kind '" + name +
                      "' (expected gaussian, flat_top or tabulated)");
}

void PulseShape::validate() const {
    if (kind != PulseKind::tabulated && !(duration > 0.0)) {
        throw ConfigError("pulse duration must be > 0");
    }
    if (kind == PulseKind::tabulated) {
        if (samples.size() < 2) {
            throw ConfigError("tabulated pulse needs at least two (t, f) samples");
        }
        double peak = 0.0;
        for (size_t i = 0; i < samples.size(); ++i) {
            const auto& [t, f] = samples[i];
            if (i > 0 && !(t > samples[i - 1].first)) {
                throw ConfigError("tabulated pulse samples must be strictly increasing in t");
            }
            if (f < 0.0 || f > 1.0) {
                throw ConfigError("tabulated pulse envelope must lie in [0, 1]");
            }
            peak = std::max(peak, f);
        }
        if (peak < 0.999) {
            throw ConfigError("tabulated pulse envelope must be normalized to peak 1");
        }
    }
}

double PulseShape::envelope(double t) const {
    switch (kind) {
        case PulseKind::gaussian: {
            const double x = (t - center) / duration;
            if (std::abs(x) > kGaussianSupportWidths) return 0.0;
            return std::exp(-x * x);
        }
        case PulseKind::flat_top:
            return std::abs(t - center) <= 0.5 * duration ? 1.0 : 0.0;
        case PulseKind::tabulated: {
            if (samples.empty() || t < samples.front().first || t > samples.back().first) {
                return 0.0;
            }
            const auto it = std::lower_bound(
                samples.begin(), samples.end(), t,
                [](const auto& s, double v) { return s.first < v; });
            if (it == samples.begin()) return it->second;
            const auto& [t1, f1] = *(it - 1);
            const auto& [t2, f2] = *it;
            return f1 + (f2 - f1) * (t - t1) / (t2 - t1);
        }
    }
    return 0.0;
}

double PulseShape::support_begin() const {
    switch (kind) {
        case PulseKind::gaussian: return center - kGaussianSupportWidths * duration;
        case PulseKind::flat_top: return center - 0.5 * duration;
        case PulseKind::tabulated: return samples.front().first;
    }
    return center;
}

double PulseShape::support_end() const {
    switch (kind) {
        case PulseKind::gaussian: return center + kGaussianSupportWidths * duration;
        case PulseKind::flat_top: return center + 0.5 * duration;
        case PulseKind::tabulated: return samples.back().first;
    }
    return center;
}

namespace {

// Nominal (duration-scale) window used for the overlap check; gaussian tails
// beyond one duration are tolerated because each polarization channel is
// driven additively.
std::pair<double, double> nominal_window(const PulseShape& s) {
    if (s.kind == PulseKind::gaussian) return {s.center - s.duration, s.center + s.duration};
    return {s.support_begin(), s.support_end()};
}

} // namespace

PulseSchedule PulseSchedule::build(std::vector<ScheduledPulse> pulses) {
    if (pulses.empty()) throw ConfigError("schedule contains no pulses");
    for (auto& p : pulses) p.shape.validate();

    for (size_t i = 1; i < pulses.size(); ++i) {
        const auto& prev = pulses[i - 1];
        auto& cur = pulses[i];
        if (cur.delay < prev.shape.duration) {
            throw ConfigError("pulse delay must be at least the preceding pulse duration");
        }
        cur.shape.center = prev.shape.center + prev.shape.duration + cur.delay +
                           cur.shape.duration;
    }
    for (size_t i = 1; i < pulses.size(); ++i) {
        if (nominal_window(pulses[i].shape).first <
            nominal_window(pulses[i - 1].shape).second) {
            throw ConfigError("pulses overlap in time; increase the delay");
        }
    }
    PulseSchedule s;
    s.pulses_ = std::move(pulses);
    return s;
}

PulseSchedule PulseSchedule::train(const ScheduledPulse& first, int n_cycles) {
    if (n_cycles < 1) throw ConfigError("train needs at least one cycle");
    std::vector<ScheduledPulse> pulses;
    pulses.reserve(n_cycles);
    for (int i = 0; i < n_cycles; ++i) {
        ScheduledPulse p = first;
        if (i % 2 == 1) {
            p.polarization = first.polarization == Polarization::sigma_plus
                                 ? Polarization::sigma_minus
                                 : Polarization::sigma_plus;
        }
        pulses.push_back(p);
    }
    return build(std::move(pulses));
}

double PulseSchedule::begin() const { return pulses_.front().shape.support_begin(); }
double PulseSchedule::end() const { return pulses_.back().shape.support_end(); }

double PulseSchedule::min_duration() const {
    double d = pulses_.front().shape.duration;
    for (const auto& p : pulses_) d = std::min(d, p.shape.duration);
    return d;
}

double PulseSchedule::envelope(Polarization p, double t) const {
    double f = 0.0;
    for (const auto& sp : pulses_) {
        if (sp.polarization == p) f += sp.shape.envelope(t);
    }
    return f;
}

bool PulseSchedule::uses(Polarization p) const {
    return std::any_of(pulses_.begin(), pulses_.end(),
                       [p](const ScheduledPulse& sp) { return sp.polarization == p; });
}

bool PulseSchedule::alternating() const {
    for (size_t i = 1; i < pulses_.size(); ++i) {
        if (pulses_[i].polarization == pulses_[i - 1].polarization) return false;
    }
    return true;
}

std::vector<double> PulseSchedule::window_boundaries() const {
    std::vector<double> b;
    b.push_back(begin());
    for (size_t i = 1; i < pulses_.size(); ++i) {
        b.push_back(0.5 * (pulses_[i - 1].shape.support_end() +
                           pulses_[i].shape.support_begin()));
    }
    b.push_back(end());
    return b;
}

namespace {

// Simpson rule on [a, b] split into n (even) intervals.
double simpson(const PulseShape& shape, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = shape.envelope(a) + shape.envelope(b);
    for (int i = 1; i < n; ++i) {
        acc += shape.envelope(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return acc * h / 3.0;
}

} // namespace

double theta_of_t(const PulseShape& shape, double alpha1, double t,
                  int steps_per_duration) {
    if (alpha1 < 0.0) throw DomainError("alpha1 must be >= 0");
    const double a = shape.support_begin();
    if (t <= a || alpha1 == 0.0) return 0.0;
    const double b = std::min(t, shape.support_end());
    const double scale = shape.kind == PulseKind::tabulated
                             ? (shape.support_end() - shape.support_begin())
                             : shape.duration;
    const int n = std::max(4, int((b - a) / scale * steps_per_duration));
    return alpha1 * simpson(shape, a, b, n);
}

std::vector<double> theta_profile(const PulseShape& shape, double alpha1,
                                  const std::vector<double>& grid,
                                  int steps_per_duration) {
    if (alpha1 < 0.0) throw DomainError("alpha1 must be >= 0");
    std::vector<double> theta(grid.size(), 0.0);
    if (grid.empty()) return theta;
    const double scale = shape.kind == PulseKind::tabulated
                             ? (shape.support_end() - shape.support_begin())
                             : shape.duration;
    double acc = 0.0;
    // integrate from the support start up to the first grid point
    acc += simpson(shape, std::min(shape.support_begin(), grid[0]), grid[0],
                   std::max(4, steps_per_duration));
    theta[0] = alpha1 * acc;
    for (size_t i = 1; i < grid.size(); ++i) {
        const double h = grid[i] - grid[i - 1];
        if (h < 0.0) throw DomainError("theta grid must be nondecreasing");
        const int n = std::max(2, int(h / scale * steps_per_duration));
        acc += simpson(shape, grid[i - 1], grid[i], n);
        theta[i] = alpha1 * acc;
    }
    return theta;
}

PulseShape tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open pulse sample file '" + path + "'");
    PulseShape shape;
    shape.kind = PulseKind::tabulated;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double t = 0.0, f = 0.0;
        if (!(ls >> t >> f)) {
            // tolerate a header row
            if (shape.samples.empty()) continue;
            throw ConfigError("malformed pulse sample line: '" + line + "'");
        }
        shape.samples.emplace_back(t, f);
    }
    if (!shape.samples.empty()) {
        shape.center = 0.5 * (shape.samples.front().first + shape.samples.back().first);
        shape.duration = shape.samples.back().first - shape.samples.front().first;
    }
    shape.validate();
    return shape;
}

} // namespace fockpulse
