#include <doctest.h>

#include <cmath>

#include "bsraman/demodulation.hpp"
#include "bsraman/error.hpp"
#include "bsraman/special_functions.hpp"

using namespace bsraman;

namespace {

DriveParams at_offset(double da, double psi_deg = 0.0) {
    DriveParams p = reference_drive().with_phase(deg_to_rad(psi_deg));
    p.amp = a_star_amplitude(derive_frame(p), p.mod_freq) + da * p.mod_freq;
    return p;
}

// P = 0.5 + u cos(W t) + (v + w cos(W t)) cos X
TimeTrace synthetic(double W, double u, double v, double w) {
    const DriveParams p = at_offset(0.1);
    TimeTrace tr{TimeGrid::covering(2.0, 2e-4), {}, Provenance::ClosedForm, p, derive_frame(p)};
    for (std::size_t i = 0; i < tr.grid.count; ++i) {
        const double t = tr.grid.at(i);
        const double x = carrier_phase(p, tr.frame, t);
        tr.samples.push_back(0.5 + u * std::cos(W * t) + (v + w * std::cos(W * t)) * std::cos(x));
    }
    return tr;
}

}  // namespace

TEST_CASE("envelope fit recovers synthetic coefficients") {
    const TimeTrace tr = synthetic(3.0, 0.1, 0.2, 0.05);
    const EnvelopeFit fit = fit_envelope(tr, 3.0);
    CHECK(fit.rms_residual < 1e-12);
    CHECK(fit.coeffs[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.coeffs[3] == doctest::Approx(0.1).epsilon(1e-10));
    CHECK(fit.coeffs[1] == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(fit.coeffs[4] == doctest::Approx(0.05).epsilon(1e-10));
    // |E| runs from 0.15 to 0.25
    CHECK(fit.modulation_depth == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(std::abs(fit.envelope(0.0)) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("constant envelope has zero depth") {
    const EnvelopeFit fit = fit_envelope(synthetic(3.0, 0.1, 0.2, 0.0), 3.0);
    CHECK(fit.modulation_depth < 1e-10);
}

TEST_CASE("closed-form trace is fitted exactly at the effective Rabi frequency") {
    for (double da : {-0.25, 0.1, 0.25}) {
        for (double psi : {0.0, 90.0}) {
            const DriveParams p = at_offset(da, psi);
            const RamanQuantities q = raman_quantities(p, derive_frame(p));
            const TimeTrace tr = population_closed_form(p, TimeGrid::covering(2.0, 1e-4));
            CHECK(fit_envelope(tr, q.omega_eff).rms_residual < 1e-12);
            const EnvelopeFit scan = fit_slow_frequency(tr, 0.5, 0.25 * p.mod_freq);
            CHECK(scan.slow_freq == doctest::Approx(q.omega_eff).epsilon(1e-6));
        }
    }
}

TEST_CASE("demodulation preconditions") {
    const TimeTrace tr = synthetic(3.0, 0.1, 0.2, 0.05);
    CHECK_THROWS_AS(fit_slow_frequency(tr, 0.0, 1.0), InvalidParameter);
    CHECK_THROWS_AS(fit_slow_frequency(tr, 2.0, 1.0), InvalidParameter);
    TimeTrace tiny = tr;
    tiny.grid.count = 8;
    tiny.samples.resize(8);
    CHECK_THROWS_AS(fit_envelope(tiny, 1.0), InvalidParameter);
}
