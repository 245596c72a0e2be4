#pragma once

// One-sided decaying Fourier response of a population trace,
//   F(w) = int_0^T exp(-i w t) exp(-gamma t) P(t) dt,
// Lorentzian line detection on |F|, and the doublet diagnostics.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "bsraman/analytic.hpp"
#include "bsraman/error.hpp"

namespace bsraman {

// Largest envelope e^{-gamma T} left at the end of the window.
inline constexpr double kMaxResidualDecay = 3e-4;
inline constexpr int kMinSamplesPerPeriod = 10;
inline constexpr double kDefaultProminence = 0.02;

struct FourierResponse {
    std::vector<double> freqs;  // rad/us, strictly increasing
    std::vector<std::complex<double>> values;
    double gamma = 0.0;
    double window = 0.0;  // us

    std::vector<double> magnitude() const;
};

struct SpectrumLine {
    double center = 0.0;     // rad/us
    double amplitude = 0.0;  // |F| at the refined center
    double fwhm = 0.0;       // full width at half maximum of |F|^2, rad/us
};

// [lo, hi] with the given step, hi included when it falls on the grid.
std::vector<double> uniform_frequency_grid(double lo, double hi, double step);

// Trapezoidal quadrature of the sampled integrand. Throws SpectrumError if the
// window leaves e^{-gamma T} above kMaxResidualDecay or the trace has fewer than
// kMinSamplesPerPeriod samples per period of the highest requested frequency.
FourierResponse fourier_response(const TimeTrace& trace, double gamma, std::span<const double> freqs);

// Local maxima of |F| whose topographic prominence is at least
// min_prominence * max|F|. A maximum at a zero-frequency grid edge is kept
// (|F| is even in w for a real trace). Centers come from a 3-point parabola
// through |F|^2; widths from the half-power crossings.
std::vector<SpectrumLine> find_lines(const FourierResponse& fr,
                                     double min_prominence = kDefaultProminence);

// Line nearest to `freq` within `tolerance`, if any.
std::optional<SpectrumLine> nearest_line(std::span<const SpectrumLine> lines, double freq,
                                         double tolerance);

// Fewer than two lines in the doublet window. Carries the lone line if there is one.
class SingletError : public SpectrumError {
public:
    SingletError(const std::string& what, std::optional<SpectrumLine> line)
        : SpectrumError(what), line_(line) {}
    const std::optional<SpectrumLine>& line() const { return line_; }

private:
    std::optional<SpectrumLine> line_;
};

// Distance between the two strongest lines in (n omega - omega/2, n omega + omega/2).
double doublet_splitting(std::span<const SpectrumLine> lines, int n, double omega);

}  // namespace bsraman
