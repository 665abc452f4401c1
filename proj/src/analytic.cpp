#include "analytic.hpp"

#include <cmath>

#include "error.hpp"

namespace fockpulse {

FockDistribution closed_form_distribution(double theta, HalfInt f) {
    if (theta < 0.0) throw DomainError("theta must be >= 0");
    if (f.twice() < 0) throw DomainError("F must be >= 0");
    const int n = f.twice();  // 2F photons at maximum
    FockDistribution dist;
    dist.p.resize(n + 1, 0.0);
    const double e = std::exp(-theta);
    double term = e;  // e^-theta theta^j / j!
    double tail = 0.0;
    for (int j = 0; j < n; ++j) {
        dist.p[j] = term;
        tail += term;
        term *= theta / (j + 1);
    }
    dist.p[n] = std::max(0.0, 1.0 - tail);
    return dist;
}

namespace {

double top_state_population(double theta, int n) {
    // P_{2F}(theta) as the Poisson-tail complement
    const double e = std::exp(-theta);
    double term = e, partial = 0.0;
    for (int j = 0; j < n; ++j) {
        partial += term;
        term *= theta / (j + 1);
    }
    return std::max(0.0, 1.0 - partial);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth, int n,
                        double (*fn)(double, int)) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm, n);
    const double frm = fn(rm, n);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0) return left + right;
    if (std::abs(left + right - whole) <= 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, n, fn) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, n, fn);
}

} // namespace

double n_out_closed_form(double theta, HalfInt f) {
    if (theta < 0.0) throw DomainError("theta must be >= 0");
    if (f.twice() < 0) throw DomainError("F must be >= 0");
    const int n = f.twice();
    if (theta == 0.0 || n == 0) return 0.0;
    const double fa = top_state_population(0.0, n);
    const double fb = top_state_population(theta, n);
    const double fm = top_state_population(0.5 * theta, n);
    const double whole = theta / 6.0 * (fa + 4.0 * fm + fb);
    const double integral = adaptive_simpson(0.0, theta, fa, fm, fb, whole, 1e-10, 48, n,
                                             &top_state_population);
    return theta - integral;
}

ComparisonReport compare(const SimulationResult& numeric) {
    ComparisonReport rep;
    if (numeric.mode.spontaneous_emission) {
        rep.reason = "numeric run includes spontaneous emission";
        return rep;
    }
    if (!numeric.mode.uniform_couplings) {
        rep.reason = "numeric run uses per-transition couplings";
        return rep;
    }
    if (numeric.schedule.size() != 1 ||
        numeric.schedule.pulses().front().polarization != Polarization::sigma_plus) {
        rep.reason = "closed forms cover a single sigma+ pulse";
        return rep;
    }
    if (numeric.initial_index != 0) {
        rep.reason = "closed forms assume the initial state m = -F";
        return rep;
    }

    rep.comparable = true;
    const int levels = numeric.level_count;
    rep.max_abs_per_level.assign(levels, 0.0);
    rep.l2_per_level.assign(levels, 0.0);

    const PulseShape& shape = numeric.schedule.pulses().front().shape;
    const std::vector<double> theta =
        theta_profile(shape, numeric.alpha_bare, numeric.time);
    const HalfInt f = numeric.atom.f_ground;
    const int top = f.twice();
    double top_integral = 0.0;  // cumulative integral of P_{2F} along the grid
    for (int s = 0; s < numeric.sample_count(); ++s) {
        const FockDistribution dist = closed_form_distribution(theta[s], f);
        for (int j = 0; j < levels; ++j) {
            const double dev = std::abs(numeric.population(s, j) - dist.p[j]);
            rep.max_abs_per_level[j] = std::max(rep.max_abs_per_level[j], dev);
            rep.l2_per_level[j] += dev * dev;
            rep.max_abs = std::max(rep.max_abs, dev);
        }
        if (s > 0) {
            const double h = theta[s] - theta[s - 1];
            const double fm = top_state_population(0.5 * (theta[s] + theta[s - 1]), top);
            top_integral += h / 6.0 *
                            (top_state_population(theta[s - 1], top) + 4.0 * fm + dist.p[top]);
        }
        const double n_ref = theta[s] - top_integral;
        rep.n_out_max_abs = std::max(rep.n_out_max_abs, std::abs(numeric.n_out[s] - n_ref));
    }
    const double norm = numeric.sample_count() > 0 ? numeric.sample_count() : 1;
    for (double& v : rep.l2_per_level) v = std::sqrt(v / norm);
    return rep;
}

} // namespace fockpulse
