#include <doctest.h>

#include <cmath>

#include "bsraman/analytic.hpp"
#include "bsraman/error.hpp"
#include "bsraman/oracle.hpp"
#include "bsraman/special_functions.hpp"

using namespace bsraman;

namespace {

DriveParams at_offset(double da, double psi_deg = 0.0) {
    DriveParams p = reference_drive().with_phase(deg_to_rad(psi_deg));
    p.amp = a_star_amplitude(derive_frame(p), p.mod_freq) + da * p.mod_freq;
    return p;
}

// Resonant drive with the given coupling ratio A cos(theta) / omega.
DriveParams weak(double ratio) {
    DriveParams p = reference_drive();
    const DerivedFrame f = derive_frame(p);
    p.mod_freq = 0.5 * f.omega0;
    p.amp = ratio * p.mod_freq / f.cos_theta;
    return p;
}

double max_diff(const TimeTrace& a, const TimeTrace& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
    return m;
}

}  // namespace

TEST_CASE("undriven qubit precesses about the tilted axis") {
    const DriveParams p = reference_drive();
    const DerivedFrame f = derive_frame(p);
    const TimeGrid g = TimeGrid::covering(1.0, 1e-3);
    IntegratorConfig fine;
    fine.dt_max = 1e-5;
    const TimeTrace tr = evolve_full(p, g, fine);
    for (std::size_t i = 0; i < g.count; i += 50) {
        const double s = std::sin(0.5 * f.omega0 * g.at(i));
        CHECK(tr.samples[i] == doctest::Approx(1.0 - f.sin_theta * f.sin_theta * s * s).epsilon(1e-8));
    }
}

TEST_CASE("pure transverse field gives a bare Rabi oscillation") {
    DriveParams p = reference_drive();
    p.delta_z = 0.0;
    const TimeGrid g = TimeGrid::covering(0.5, 5e-4);
    IntegratorConfig fine;
    fine.dt_max = 1e-5;
    const TimeTrace tr = evolve_full(p, g, fine);
    for (std::size_t i = 0; i < g.count; i += 25) {
        const double c = std::cos(0.5 * p.delta_x * g.at(i));
        CHECK(tr.samples[i] == doctest::Approx(c * c).epsilon(1e-8));
    }
}

TEST_CASE("norm is conserved to 1e-9 at the default resolution") {
    for (double da : {-0.25, 0.0, 0.25}) {
        const DriveParams p = at_offset(da, 90.0);
        IntegratorConfig c;
        c.dt_max = 1e-4;
        const auto states = evolve_state(p, TimeGrid::covering(2.0, 1e-4), c);
        double drift = 0.0;
        for (const auto& s : states) drift = std::max(drift, std::abs(s.norm() - 1.0));
        CHECK(drift < 1e-9);
    }
}

TEST_CASE("grid substeps do not change the result") {
    const DriveParams p = at_offset(0.1);
    IntegratorConfig c;
    c.dt_max = 1e-4;
    const TimeTrace fine = evolve_full(p, TimeGrid::covering(0.5, 1e-4), c);
    const TimeTrace coarse = evolve_full(p, TimeGrid::covering(0.5, 1e-3), c);
    for (std::size_t i = 0; i < coarse.samples.size(); ++i) {
        CHECK(std::abs(coarse.samples[i] - fine.samples[10 * i]) < 1e-12);
    }
}

TEST_CASE("a late sampling window continues the same evolution") {
    const DriveParams p = at_offset(-0.1, 30.0);
    IntegratorConfig c;
    c.dt_max = 1e-4;
    const TimeTrace full = evolve_full(p, TimeGrid::covering(1.0, 1e-4), c);
    const TimeTrace late = evolve_full(p, TimeGrid{0.6, 1e-4, 4001}, c);
    for (std::size_t i = 0; i < late.samples.size(); i += 100) {
        CHECK(std::abs(late.samples[i] - full.samples[6000 + i]) < 1e-10);
    }
    CHECK_THROWS_AS(evolve_full(p, TimeGrid{-0.1, 1e-4, 10}, c), IntegratorError);
}

TEST_CASE("integrator configuration limits") {
    const DriveParams p = at_offset(0.25);
    const IntegratorConfig ok = default_integrator(p);
    CHECK_NOTHROW(validate(ok, p));
    IntegratorConfig too_coarse = ok;
    too_coarse.dt_max *= 2.0;
    CHECK_THROWS_AS(validate(too_coarse, p), IntegratorError);
    IntegratorConfig few = ok;
    few.steps_per_fast_period = 20;
    CHECK_THROWS_AS(validate(few, p), IntegratorError);
    CHECK_THROWS_AS(evolve_full(p, TimeGrid::covering(0.1, 1e-3), too_coarse), IntegratorError);
    CHECK(fast_frequency(p, derive_frame(p)) == doctest::Approx(p.amp));
}

TEST_CASE("full dynamics approach the closed form as the coupling weakens") {
    // The closed form is second order in the coupling ratio; the residual
    // should fall roughly fourfold each time the ratio halves.
    std::vector<double> diffs;
    for (double r : {0.16, 0.08, 0.04}) {
        const DriveParams p = weak(r);
        const RamanQuantities q = raman_quantities(p, derive_frame(p));
        const TimeGrid g = TimeGrid::covering(kTwoPi / q.omega_eff, 2e-3);
        const TimeTrace ode = evolve_full(p, g, default_integrator(p, 60));
        diffs.push_back(max_diff(ode, population_closed_form(p, g)));
    }
    CHECK(diffs[2] < 0.03);
    CHECK(diffs[0] / diffs[1] > 2.5);
    CHECK(diffs[0] / diffs[1] < 6.0);
    CHECK(diffs[1] / diffs[2] > 2.5);
    CHECK(diffs[1] / diffs[2] < 6.0);
}

TEST_CASE("Floquet slow frequency") {
    SUBCASE("tends to the closed form at weak coupling") {
        const DriveParams p = weak(0.05);
        const RamanQuantities q = raman_quantities(p, derive_frame(p));
        CHECK(floquet_slow_frequency(p) == doctest::Approx(q.omega_eff).epsilon(0.01));
    }
    SUBCASE("independent of the drive phase") {
        const DriveParams p = at_offset(0.1);
        CHECK(floquet_slow_frequency(p) ==
              doctest::Approx(floquet_slow_frequency(p.with_phase(1.2))).epsilon(1e-6));
    }
    SUBCASE("undriven limit is the bare splitting folded into the zone") {
        const DriveParams p = reference_drive();
        const double w0 = derive_frame(p).omega0;
        double folded = std::fmod(w0, p.mod_freq);
        if (folded > 0.5 * p.mod_freq) folded = p.mod_freq - folded;
        CHECK(std::abs(floquet_slow_frequency(p) - folded) < 1e-8);
    }
}

TEST_CASE("effective evolution starts in |0>") {
    const DriveParams p = at_offset(-0.2, 60.0);
    const DerivedFrame f = derive_frame(p);
    const TimeTrace tr = evolve_effective(p, f, raman_quantities(p, f), TimeGrid::covering(0.1, 1e-4));
    CHECK(tr.samples.front() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tr.provenance == Provenance::EffectiveHamiltonian);
}
