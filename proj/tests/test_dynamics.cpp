#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "error.hpp"

using namespace fockpulse;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

PhysicalParams fig2_params() {
    PhysicalParams p;
    p.g = kTwoPi * 10.0;
    p.k = kTwoPi * 3.0;
    p.gamma_sp = kTwoPi * 5.87;
    p.omega1 = kTwoPi * 10.0;
    p.delta = kTwoPi * 100.0;
    return p;
}

PhysicalParams fig3_params() {
    PhysicalParams p;
    p.g = kTwoPi * 16.0;
    p.k = kTwoPi * 1.0;
    p.gamma_sp = kTwoPi * 5.87;
    p.omega1 = kTwoPi * 10.0;
    p.delta = kTwoPi * 50.0;
    return p;
}

PulseSchedule single_gaussian(double T, Polarization pol = Polarization::sigma_plus) {
    PulseShape s;
    s.kind = PulseKind::gaussian;
    s.duration = T;
    s.center = 0.0;
    return PulseSchedule::build({{s, pol, 0.0}});
}

} // namespace

TEST_CASE("rate derivatives: boundary and trivial cases") {
    const AtomSpec rb = atom_preset("rb87_f2");
    const PhysicalParams p = fig3_params();
    const CouplingTable table(rb, p, Polarization::sigma_plus, false);
    const RateSet rates = make_rate_set(table, p, true);

    PopulationState top;
    top.populations = {0.0, 0.0, 0.0, 0.0, 1.0};  // everything in m = +F
    top.coherences.assign(4, {0.0, 0.0});
    const PopulationState d_top = rate_derivatives(top, rates, 1.0);
    for (const double v : d_top.populations) CHECK(v == 0.0);
    CHECK(flux_at(top, rates, 1.0) == 0.0);

    PopulationState mid;
    mid.populations = {0.2, 0.2, 0.2, 0.2, 0.2};
    mid.coherences.assign(4, {0.0, 0.0});
    const PopulationState d_off = rate_derivatives(mid, rates, 0.0);  // pump off
    for (const double v : d_off.populations) CHECK(v == 0.0);
}

TEST_CASE("rate derivatives: single-term lossless case matches the cascade") {
    const AtomSpec rb = atom_preset("rb87_f2");
    const PhysicalParams p = fig2_params();
    const CouplingTable table(rb, p, Polarization::sigma_plus, true);
    const RateSet rates = make_rate_set(table, p, false);  // Gamma == 0
    const double alpha1 = rates.alpha_bare;

    PopulationState s;
    s.populations = {1.0, 0.0, 0.0, 0.0, 0.0};
    s.coherences.assign(4, {0.0, 0.0});
    const double f = 0.73;
    const PopulationState d = rate_derivatives(s, rates, f);
    // d<sigma_-2>/dt = -alpha1 f: the derivative of P_0 = exp(-theta)
    CHECK(d.populations[0] == doctest::Approx(-alpha1 * f).epsilon(1e-14));
    CHECK(d.populations[1] == doctest::Approx(alpha1 * f).epsilon(1e-14));
    CHECK(d.populations[2] == 0.0);
    CHECK(flux_at(s, rates, f) == doctest::Approx(alpha1 * f).epsilon(1e-14));
}

TEST_CASE("lossless uniform run reproduces the closed forms") {
    const AtomSpec rb = atom_preset("rb87_f2");
    const SimulationResult res =
        integrate(rb, fig2_params(), single_gaussian(1.0),
                  {.uniform_couplings = true, .spontaneous_emission = false}, {}, {});

    CHECK(res.max_population_sum_error < 1e-8);
    CHECK(res.max_abs_coherence < 1e-12);
    CHECK(res.n_out_final() == doctest::Approx(4.0).epsilon(2e-4));
    CHECK(res.population(res.sample_count() - 1, 4) > 0.999);

    const ComparisonReport rep = compare(res);
    REQUIRE(rep.comparable);
    CHECK(rep.max_abs < 1e-6);
    CHECK(rep.n_out_max_abs < 1e-6);

    // flux is nonnegative and n_out nondecreasing
    double prev = 0.0;
    for (int s = 0; s < res.sample_count(); ++s) {
        CHECK(res.flux[s] >= 0.0);
        CHECK(res.n_out[s] >= prev - 1e-12);
        prev = res.n_out[s];
    }
}

TEST_CASE("uniform-mode flux collapses to the scalar form") {
    const AtomSpec rb = atom_preset("rb87_f2");
    const SimulationResult res =
        integrate(rb, fig2_params(), single_gaussian(1.0),
                  {.uniform_couplings = true, .spontaneous_emission = false}, {}, {});
    const PulseShape& shape = res.schedule.pulses().front().shape;
    double worst = 0.0;
    for (int s = 0; s < res.sample_count(); ++s) {
        const double f = shape.envelope(res.time[s]);
        const double scalar = res.alpha_bare * f * (1.0 - res.population(s, 4));
        worst = std::max(worst, std::abs(res.flux[s] - scalar));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("terminal initial state produces no photons") {
    const AtomSpec rb = atom_preset("rb87_f2");
    InitialState init;
    init.m_f = HalfInt::from_int(2);
    const SimulationResult res =
        integrate(rb, fig2_params(), single_gaussian(1.0),
                  {.uniform_couplings = true, .spontaneous_emission = false}, init, {});
    CHECK(res.n_out_final() == 0.0);
    for (const double f : res.flux) CHECK(f == 0.0);
}

TEST_CASE("initial state is programmable") {
    const AtomSpec rb = atom_preset("rb87_f2");
    InitialState init;
    init.m_f = HalfInt::from_int(0);
    const SimulationResult res =
        integrate(rb, fig2_params(), single_gaussian(1.0),
                  {.uniform_couplings = true, .spontaneous_emission = false}, init, {});
    CHECK(res.n_out_final() == doctest::Approx(2.0).epsilon(1e-4));
    // bound: at most the number of remaining upward steps
    CHECK(res.n_out_final() <= 2.0 + 1e-9);

    InitialState vec;
    vec.populations = std::vector<double>{0.0, 0.0, 0.5, 0.5, 0.0};
    const SimulationResult res2 =
        integrate(rb, fig2_params(), single_gaussian(1.0),
                  {.uniform_couplings = true, .spontaneous_emission = false}, vec, {});
    CHECK(res2.n_out_final() == doctest::Approx(1.5).epsilon(1e-4));

    InitialState bad;
    bad.populations = std::vector<double>{1.0, 2.0};
    CHECK_THROWS_AS(integrate(rb, fig2_params(), single_gaussian(1.0), {}, bad, {}),
                    ConfigError);
    InitialState off;
    off.m_f = HalfInt::from_int(3);
    CHECK_THROWS_AS(integrate(rb, fig2_params(), single_gaussian(1.0), {}, off, {}),
                    ConfigError);
}

TEST_CASE("conservation holds with losses on and off") {
    const AtomSpec rb = atom_preset("rb87_f2");
    for (const bool losses : {false, true}) {
        const SimulationResult res = integrate(
            rb, fig3_params(), single_gaussian(3.0),
            {.uniform_couplings = false, .spontaneous_emission = losses}, {}, {});
        CHECK(res.max_population_sum_error < 1e-8);
        CHECK(res.max_abs_coherence < 1e-12);
    }
}

TEST_CASE("step-size cap halving does not move the answer") {
    const AtomSpec rb = atom_preset("rb87_f2");
    IntegratorOptions coarse;
    coarse.max_step = 0.01;
    IntegratorOptions fine;
    fine.max_step = 0.005;
    const SimulationResult a =
        integrate(rb, fig3_params(), single_gaussian(3.0), {}, {}, coarse);
    const SimulationResult b =
        integrate(rb, fig3_params(), single_gaussian(3.0), {}, {}, fine);
    CHECK(std::abs(a.n_out_final() - b.n_out_final()) < 1e-8);
}

TEST_CASE("trains: mirrored return pass and stable per-cycle counts") {
    const AtomSpec rb = atom_preset("rb87_f2");
    PulseShape s;
    s.kind = PulseKind::gaussian;
    s.duration = 3.0;
    s.center = 0.0;

    SUBCASE("one cycle equals a plain integration") {
        const PulseSchedule sched = PulseSchedule::train({s, Polarization::sigma_plus, 30.0}, 1);
        const SimulationResult one = run_train(rb, fig3_params(), sched, {}, {}, {});
        const SimulationResult plain =
            integrate(rb, fig3_params(), single_gaussian(3.0), {}, {}, {});
        CHECK(one.n_out_final() == doctest::Approx(plain.n_out_final()).epsilon(1e-12));
        REQUIRE(one.per_pulse.size() == 1);
        CHECK(one.per_pulse[0].photons == doctest::Approx(one.n_out_final()));
    }

    SUBCASE("lossless uniform train with large pump area yields 2F per cycle") {
        const PulseSchedule sched = PulseSchedule::train({s, Polarization::sigma_plus, 30.0}, 3);
        const SimulationResult res =
            run_train(rb, fig2_params(), sched,
                      {.uniform_couplings = true, .spontaneous_emission = false}, {}, {});
        REQUIRE(res.per_pulse.size() == 3);
        for (const auto& c : res.per_pulse) {
            CHECK(c.photons == doctest::Approx(4.0).epsilon(1e-8));
        }
        CHECK(res.max_population_sum_error < 1e-8);
    }

    SUBCASE("spontaneous-emission errors do not accumulate") {
        const PulseSchedule sched = PulseSchedule::train({s, Polarization::sigma_plus, 30.0}, 3);
        const SimulationResult res = run_train(rb, fig3_params(), sched, {}, {}, {});
        REQUIRE(res.per_pulse.size() == 3);
        double lo = res.per_pulse[0].photons, hi = lo;
        for (const auto& c : res.per_pulse) {
            lo = std::min(lo, c.photons);
            hi = std::max(hi, c.photons);
        }
        CHECK(hi - lo < 1e-3);
        CHECK(res.n_out_final() == doctest::Approx(3.0 * 3.9278).epsilon(1e-3));
    }

    SUBCASE("non-alternating schedules are rejected in train mode") {
        ScheduledPulse a{s, Polarization::sigma_plus, 0.0};
        ScheduledPulse b{s, Polarization::sigma_plus, 30.0};
        const PulseSchedule sched = PulseSchedule::build({a, b});
        CHECK_THROWS_AS(run_train(rb, fig3_params(), sched, {}, {}, {}), ConfigError);
        // the same schedule is fine for a plain integration
        CHECK_NOTHROW(integrate(rb, fig3_params(), sched, {}, {}, {}));
    }
}

TEST_CASE("integrator rejects broken options") {
    const AtomSpec rb = atom_preset("rb87_f2");
    IntegratorOptions opt;
    opt.abs_tol = 0.0;
    CHECK_THROWS_AS(integrate(rb, fig2_params(), single_gaussian(1.0), {}, {}, opt),
                    ConfigError);
    opt = {};
    opt.grid_per_duration = 1;
    CHECK_THROWS_AS(integrate(rb, fig2_params(), single_gaussian(1.0), {}, {}, opt),
                    ConfigError);
}
