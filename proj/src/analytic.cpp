#include "bsraman/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "bsraman/error.hpp"
#include "bsraman/special_functions.hpp"

namespace bsraman {

TimeGrid TimeGrid::covering(double duration, double dt, double t0) {
    if (!(dt > 0.0) || !(duration >= 0.0) || !std::isfinite(duration)) {
        throw InvalidParameter(fmt::format("bad time grid: duration {} us, dt {} us", duration, dt));
    }
    const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
    return TimeGrid{t0, dt, steps + 1};
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::ClosedForm: return "closed_form";
        case Provenance::DegenerateClosedForm: return "degenerate_closed_form";
        case Provenance::OdeOracle: return "ode_oracle";
        case Provenance::EffectiveHamiltonian: return "effective_hamiltonian";
    }
    return "unknown";
}

bool RamanQuantities::truncation_certified(double omega) const {
    const double scale = std::max({std::abs(omega_rwa), std::abs(bs_shift), omega * 1e-9});
    return tail_bound <= 1e-6 * scale;
}

double rabi_rwa(const DriveParams& p, const DerivedFrame& f) {
    const double a = f.mod_index;
    if (a == 0.0) return 0.0;  // J_2(a)/a ~ a/8 -> 0
    return 4.0 * bessel_j(2, a) / a * p.amp * f.cos_theta;
}

namespace {

// |J_k(x)| <= min(1, (x/2)^|k| / |k|!), in log space.
double bessel_majorant(int k, double x) {
    k = std::abs(k);
    if (k == 0 || x == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::min(1.0, std::exp(k * std::log(0.5 * x) - std::lgamma(k + 1.0)));
}

// Bound on the sum of |terms| with |n| > n_max, from the majorant above.
double discarded_majorant(double x, int n_max) {
    double total = 0.0;
    for (int k = n_max + 1; k <= n_max + 400; ++k) {
        double shell = 0.0;
        for (int n : {k, -k}) {
            const double bn = bessel_majorant(n, x);
            const double d3 = std::max(1.0, std::abs(n + 3.0));
            const double d1 = std::max(1.0, std::abs(n + 1.0));
            shell += (bn * bn + bn * bessel_majorant(n + 2, x)) / d3 +
                     (bn * bn + bn * bessel_majorant(n - 2, x)) / d1;
        }
        total += shell;
        if (k > x && shell <= 1e-18 * total) break;
    }
    return total;
}

}  // namespace

SeriesValue bloch_siegert_shift(const DriveParams& p, const DerivedFrame& f, int n_max) {
    if (n_max < 2) throw InvalidParameter(fmt::format("series cutoff {} must be >= 2", n_max));
    const double prefactor = p.amp * p.amp * f.cos_theta * f.cos_theta / (2.0 * p.mod_freq);
    if (prefactor == 0.0) return {};

    const BesselTable J(f.mod_index, n_max + 2);
    std::vector<double> shell(static_cast<std::size_t>(n_max) + 1, 0.0);
    double sum = 0.0;
    double abs_sum = 0.0;
    for (int n = -n_max; n <= n_max; ++n) {
        double term = 0.0;
        if (n != -3) term += (J(n) * J(n) + J(n) * J(n + 2)) / (n + 3);
        if (n != -1) term += (J(n) * J(n) + J(n) * J(n - 2)) / (n + 1);
        sum += term;
        abs_sum += std::abs(term);
        shell[static_cast<std::size_t>(std::abs(n))] += term;
    }
    const double last_shells = std::abs(shell[static_cast<std::size_t>(n_max)]) +
                               std::abs(shell[static_cast<std::size_t>(n_max - 1)]);
    const double roundoff = std::numeric_limits<double>::epsilon() * (2.0 * n_max + 1.0) * abs_sum;
    return {prefactor * sum,
            std::abs(prefactor) * (last_shells + discarded_majorant(f.mod_index, n_max) + roundoff)};
}

RamanQuantities raman_quantities(const DriveParams& p, const DerivedFrame& f, int n_max) {
    RamanQuantities q;
    q.omega_rwa = rabi_rwa(p, f);
    const SeriesValue bs = bloch_siegert_shift(p, f, n_max);
    q.bs_shift = bs.value;
    q.tail_bound = bs.tail_bound;
    q.truncation_n = n_max;
    q.omega_eff = effective_rabi(q.omega_rwa, q.bs_shift);
    return q;
}

namespace {

struct Quadrature {
    double e, b, d;
};

// One evaluator for both the 0 and pi/2 variants; `shift` is added to every
// trig argument that contains psi.
Quadrature psi_block(const DriveParams& p, const DerivedFrame& f, const RamanQuantities& q,
                     double shift) {
    const double psi = p.phase;
    const double alpha = f.mod_index * std::cos(psi);
    const double s2 = f.sin_theta * f.sin_theta;
    const double sin2t = 2.0 * f.sin_theta * f.cos_theta;
    const double r = q.omega_rwa / q.omega_eff;
    const double bs_r = q.bs_shift / q.omega_eff;

    const double e = 0.25 * (r * r * s2 * std::cos(4.0 * psi - alpha + shift) +
                             r * r * s2 * std::cos(alpha + shift) -
                             r * bs_r * sin2t * std::cos(2.0 * psi + shift));
    const double b = -e + 0.5 * s2 * std::cos(alpha + shift);
    const double d = -0.25 * r * sin2t * std::sin(2.0 * psi + shift) -
                     0.5 * bs_r * s2 * std::sin(alpha + shift);
    return {e, b, d};
}

}  // namespace

EnvelopeCoefficients envelope_coefficients(const DriveParams& p, const DerivedFrame& f,
                                           const RamanQuantities& q) {
    if (!(q.omega_eff > 0.0)) {
        throw InvalidParameter("effective Rabi frequency is zero: there is no transition to track");
    }
    const double psi = p.phase;
    const double alpha = f.mod_index * std::cos(psi);
    const double sin2t = 2.0 * f.sin_theta * f.cos_theta;
    const double r = q.omega_rwa / q.omega_eff;

    EnvelopeCoefficients ec;
    ec.c1 = 0.25 * q.bs_shift * q.omega_rwa / (q.omega_eff * q.omega_eff) * sin2t *
                std::cos(2.0 * psi - alpha) +
            0.5 * r * r * f.cos_theta * f.cos_theta;
    ec.c2 = 0.25 * r * sin2t * std::sin(2.0 * psi - alpha);

    const Quadrature zero = psi_block(p, f, q, 0.0);
    const Quadrature half = psi_block(p, f, q, 0.5 * std::numbers::pi);
    ec.e0 = zero.e;
    ec.e_half = half.e;
    ec.b0 = zero.b;
    ec.b_half = half.b;
    ec.d0 = zero.d;
    ec.d_half = half.d;

    ec.c = std::hypot(ec.c1, ec.c2);
    ec.e = std::hypot(ec.e0, ec.e_half);
    ec.b = std::hypot(ec.b0, ec.b_half);
    ec.d = std::hypot(ec.d0, ec.d_half);
    ec.phi_c = std::atan2(ec.c2, ec.c1);
    ec.phi_e = std::atan2(ec.e_half, ec.e0);
    ec.phi_b = std::atan2(ec.b_half, ec.b0);
    ec.phi_d = std::atan2(ec.d_half, ec.d0);
    return ec;
}

double carrier_phase(const DriveParams& p, const DerivedFrame& f, double t) {
    return 2.0 * p.mod_freq * t - f.mod_index * std::cos(p.mod_freq * t + p.phase);
}

namespace {

void check_carrier_resolution(const DriveParams& p, const TimeGrid& grid) {
    if (!(grid.dt > 0.0)) throw InvalidParameter("time step must be positive");
    const double limit = kTwoPi / (20.0 * 2.0 * p.mod_freq);
    if (grid.dt > limit * (1.0 + 1e-12)) {
        throw InvalidParameter(fmt::format(
            "time step {} us does not resolve the 2*omega carrier (need <= {} us)", grid.dt, limit));
    }
}

}  // namespace

TimeTrace population_closed_form(const DriveParams& p, const DerivedFrame& f,
                                 const RamanQuantities& q, const EnvelopeCoefficients& ec,
                                 const TimeGrid& grid) {
    check_carrier_resolution(p, grid);
    TimeTrace trace{grid, std::vector<double>(grid.count), Provenance::ClosedForm, p, f};
    const double base = 0.5 * (1.0 + f.cos_theta * f.cos_theta - 2.0 * ec.c1);
    const double w = q.omega_eff;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.at(i);
        const double x = carrier_phase(p, f, t);
        const double cw = std::cos(w * t);
        const double sw = std::sin(w * t);
        trace.samples[i] = base + ec.e * std::cos(x - ec.phi_e) + ec.c * std::cos(w * t - ec.phi_c) +
                           ec.b * cw * std::cos(x - ec.phi_b) + ec.d * sw * std::cos(x - ec.phi_d);
    }
    return trace;
}

TimeTrace population_closed_form(const DriveParams& p, const TimeGrid& grid, int n_max) {
    const DerivedFrame f = derive_frame(p);
    const RamanQuantities q = raman_quantities(p, f, n_max);
    return population_closed_form(p, f, q, envelope_coefficients(p, f, q), grid);
}

TimeTrace population_degenerate(const DriveParams& p, const DerivedFrame& f, double bs_shift,
                                const TimeGrid& grid) {
    check_carrier_resolution(p, grid);
    TimeTrace trace{grid, std::vector<double>(grid.count), Provenance::DegenerateClosedForm, p, f};
    const double base = 0.5 * (1.0 + f.cos_theta * f.cos_theta);
    const double amp = 0.5 * f.sin_theta * f.sin_theta;
    const double offset = f.mod_index * std::cos(p.phase);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.at(i);
        trace.samples[i] = base + amp * std::cos(bs_shift * t + carrier_phase(p, f, t) + offset);
    }
    return trace;
}

}  // namespace bsraman
