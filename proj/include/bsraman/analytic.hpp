#pragma once

// Closed-form second-order Raman quantities: the RWA Rabi frequency, the
// Bloch-Siegert shift, the effective Rabi frequency, the coefficient block of
// the ground-state population and the population traces themselves.

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "bsraman/params.hpp"

namespace bsraman {

inline constexpr int kDefaultSeriesCutoff = 40;

// Uniform time grid t_i = t0 + i dt, i = 0..count-1 (us). Every trace
// describes the qubit prepared in |0> at t = 0, so t0 > 0 only moves the
// sampling window.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::size_t count = 0;

    double at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double span() const { return count == 0 ? 0.0 : static_cast<double>(count - 1) * dt; }

    // [t0, t0 + duration] inclusive, with the sample count rounded to the nearest step.
    static TimeGrid covering(double duration, double dt, double t0 = 0.0);
};

enum class Provenance { ClosedForm, DegenerateClosedForm, OdeOracle, EffectiveHamiltonian };

std::string_view to_string(Provenance p);

struct TimeTrace {
    TimeGrid grid;
    std::vector<double> samples;  // ground-state population
    Provenance provenance = Provenance::ClosedForm;
    DriveParams params;
    DerivedFrame frame;
};

struct RamanQuantities {
    double omega_rwa = 0.0;  // Omega_2, signed like J_2(a)
    double bs_shift = 0.0;   // omega_2^BS, signed
    double omega_eff = 0.0;  // sqrt(Omega_2^2 + (omega_2^BS)^2)
    int truncation_n = kDefaultSeriesCutoff;
    double tail_bound = 0.0;

    // True when the discarded tail is below 1e-6 of the relevant scale.
    bool truncation_certified(double omega) const;
};

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

inline double effective_rabi(double omega_rwa, double bs_shift) {
    return std::hypot(omega_rwa, bs_shift);
}

// Omega_2 = 4 J_2(a)/a * A cos(theta); the a -> 0 limit is taken analytically.
double rabi_rwa(const DriveParams& p, const DerivedFrame& f);

// omega_2^BS = A^2 cos^2(theta) / (2 omega) *
//   { sum_{n != -3} (J_n^2 + J_n J_{n+2}) / (n+3) + sum_{n != -1} (J_n^2 + J_n J_{n-2}) / (n+1) }
// with both sums cut at |n| <= n_max. The tail bound adds the last two kept
// shells |n| = n_max, n_max - 1, a majorant of every discarded term built from
// |J_k(x)| <= (x/2)^k / k!, and a summation round-off floor.
SeriesValue bloch_siegert_shift(const DriveParams& p, const DerivedFrame& f,
                                int n_max = kDefaultSeriesCutoff);

RamanQuantities raman_quantities(const DriveParams& p, const DerivedFrame& f,
                                 int n_max = kDefaultSeriesCutoff);

// Amplitudes and phases of the five-term population formula. The *_half
// members are the *0 expressions with pi/2 added to every psi-dependent trig
// argument; phases satisfy cos(phi) = first/norm, sin(phi) = second/norm.
struct EnvelopeCoefficients {
    double c1 = 0, c2 = 0, c = 0;
    double e0 = 0, e_half = 0, e = 0;
    double b0 = 0, b_half = 0, b = 0;
    double d0 = 0, d_half = 0, d = 0;
    double phi_c = 0, phi_e = 0, phi_b = 0, phi_d = 0;
};

EnvelopeCoefficients envelope_coefficients(const DriveParams& p, const DerivedFrame& f,
                                           const RamanQuantities& q);

// Phase of the modulated carrier, 2 omega t - a cos(omega t + psi).
double carrier_phase(const DriveParams& p, const DerivedFrame& f, double t);

// P(t) = 1/2 (1 + cos^2 - 2 c1) + e cos(X - phi_e) + c cos(W t - phi_c)
//        + b cos(W t) cos(X - phi_b) + d sin(W t) cos(X - phi_d),   W = Omega_2*.
TimeTrace population_closed_form(const DriveParams& p, const DerivedFrame& f,
                                  const RamanQuantities& q, const EnvelopeCoefficients& ec,
                                  const TimeGrid& grid);

// Convenience: quantities, coefficients and trace in one call.
TimeTrace population_closed_form(const DriveParams& p, const TimeGrid& grid,
                                 int n_max = kDefaultSeriesCutoff);

// The Omega_2 = 0 limit (A = A*): constant amplitude, frequency-modulated
//   P = 1/2 (1 + cos^2) + 1/2 sin^2 cos(bs t + X(t) + a cos psi).
TimeTrace population_degenerate(const DriveParams& p, const DerivedFrame& f, double bs_shift,
                                const TimeGrid& grid);

}  // namespace bsraman
