#pragma once

// Slow-envelope extraction from a population trace.
//
// The trace is projected onto the known modulated carrier X(t) = 2 omega t
// - a cos(omega t + psi): the model
//   P(t) ~ sum_{i,j} k_ij g_i(t) h_j(t),  g = {1, cos Wt, sin Wt},  h = {1, cos X, sin X}
// is fit by linear least squares for a given slow frequency W. For the
// closed-form trace this model is exact. Scanning W for the smallest residual
// is the single-tone fit used to read the slow frequency off an ODE trace.

#include <array>
#include <complex>

#include "bsraman/analytic.hpp"

namespace bsraman {

struct EnvelopeFit {
    double slow_freq = 0.0;       // rad/us
    std::array<double, 9> coeffs{};  // k_ij at index 3 i + j
    double rms_residual = 0.0;
    double modulation_depth = 0.0;   // (max|E| - min|E|) / (max|E| + min|E|) over the grid

    // Complex carrier envelope E(t): the carrier part of the model is Re[E(t) e^{iX(t)}].
    std::complex<double> envelope(double t) const;
};

EnvelopeFit fit_envelope(const TimeTrace& trace, double slow_freq);

// Scans W over [lo, hi] on `scan_points` points, then refines the best
// bracket by golden-section search on the residual.
EnvelopeFit fit_slow_frequency(const TimeTrace& trace, double lo, double hi, int scan_points = 300);

}  // namespace bsraman
