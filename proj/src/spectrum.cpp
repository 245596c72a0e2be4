#include "bsraman/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bsraman/kernels.hpp"

namespace bsraman {

std::vector<double> FourierResponse::magnitude() const {
    std::vector<double> m(values.size());
    std::transform(values.begin(), values.end(), m.begin(), [](auto v) { return std::abs(v); });
    return m;
}

std::vector<double> uniform_frequency_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw InvalidParameter(fmt::format("bad frequency grid [{}, {}] step {}", lo, hi, step));
    }
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-12))) + 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + static_cast<double>(i) * step;
    return g;
}

FourierResponse fourier_response(const TimeTrace& trace, double gamma, std::span<const double> freqs) {
    if (!(gamma > 0.0)) throw SpectrumError("decay rate gamma must be > 0 for the transform");
    if (trace.grid.count < 2) throw SpectrumError("trace has fewer than two samples");
    if (freqs.empty()) throw SpectrumError("empty frequency grid");
    for (std::size_t i = 1; i < freqs.size(); ++i) {
        if (!(freqs[i] > freqs[i - 1])) throw SpectrumError("frequency grid must be strictly increasing");
    }
    const double window = trace.grid.span();
    if (std::exp(-gamma * window) > kMaxResidualDecay) {
        throw SpectrumError(fmt::format("window {} us is too short: exp(-gamma T) = {:.3g} exceeds {}", window,
                                        std::exp(-gamma * window), kMaxResidualDecay));
    }
    const double f_max = std::max(std::abs(freqs.front()), std::abs(freqs.back()));
    const double dt = trace.grid.dt;
    if (f_max * dt > kTwoPi / kMinSamplesPerPeriod * (1.0 + 1e-12)) {
        throw SpectrumError(fmt::format(
            "grid aliasing: dt = {} ns gives fewer than {} samples per period at {} MHz", dt * 1e3,
            kMinSamplesPerPeriod, angular_to_mhz(f_max)));
    }

    // Fold decay and trapezoid weights into one real weight per sample.
    const std::size_t n = trace.grid.count;
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double tau = static_cast<double>(k) * dt;
        const double trap = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
        w[k] = trap * dt * std::exp(-gamma * (trace.grid.t0 + tau)) * trace.samples[k];
    }

    FourierResponse fr;
    fr.freqs.assign(freqs.begin(), freqs.end());
    fr.values.resize(freqs.size());
    fr.gamma = gamma;
    fr.window = window;
    kernels::phasor_sum(w, dt, fr.freqs, fr.values);
    if (trace.grid.t0 != 0.0) {
        for (std::size_t j = 0; j < fr.values.size(); ++j) {
            fr.values[j] *= std::polar(1.0, -fr.freqs[j] * trace.grid.t0);
        }
    }
    return fr;
}

namespace {

// Half-power crossing walking from `peak` in direction `dir`; returns the
// distance in frequency or a negative value if the edge is hit first.
double half_width(const std::vector<double>& power, const std::vector<double>& f, std::size_t peak,
                  double level, int dir) {
    std::size_t i = peak;
    while (true) {
        if ((dir < 0 && i == 0) || (dir > 0 && i + 1 >= power.size())) return -1.0;
        const std::size_t j = dir < 0 ? i - 1 : i + 1;
        if (power[j] <= level) {
            const double frac = (power[i] - level) / (power[i] - power[j]);
            const double crossing = f[i] + frac * (f[j] - f[i]);
            return std::abs(crossing - f[peak]);
        }
        if (power[j] > power[i]) return -1.0;  // ran into a stronger neighbour
        i = j;
    }
}

}  // namespace

std::vector<SpectrumLine> find_lines(const FourierResponse& fr, double min_prominence) {
    const std::vector<double> mag = fr.magnitude();
    const std::size_t n = mag.size();
    std::vector<SpectrumLine> lines;
    if (n < 3) return lines;
    const double global = *std::max_element(mag.begin(), mag.end());
    if (!(global > 0.0)) return lines;
    const double threshold = min_prominence * global;
    const bool mirrored_edge = fr.freqs.front() == 0.0;

    std::vector<double> power(n);
    for (std::size_t i = 0; i < n; ++i) power[i] = mag[i] * mag[i];

    for (std::size_t i = 0; i < n; ++i) {
        const bool interior = i > 0 && i + 1 < n;
        bool is_peak = false;
        if (interior) {
            is_peak = mag[i] > mag[i - 1] && mag[i] >= mag[i + 1];
        } else if (i == 0 && mirrored_edge) {
            is_peak = mag[0] > mag[1];
        }
        if (!is_peak) continue;

        // Topographic prominence: lowest point on each side before a higher
        // sample (or the edge); the peak stands above the higher of the two.
        double left_min = mag[i];
        for (std::size_t k = i; k-- > 0;) {
            if (mag[k] > mag[i]) break;
            left_min = std::min(left_min, mag[k]);
        }
        double right_min = mag[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            if (mag[k] > mag[i]) break;
            right_min = std::min(right_min, mag[k]);
        }
        if (i == 0 && mirrored_edge) left_min = right_min;
        const double prominence = mag[i] - std::max(left_min, right_min);
        if (prominence < threshold) continue;

        SpectrumLine line;
        if (interior) {
            const double ym = power[i - 1], y0 = power[i], yp = power[i + 1];
            const double denom = ym - 2.0 * y0 + yp;
            const double h = 0.5 * (fr.freqs[i + 1] - fr.freqs[i - 1]);
            const double delta = denom != 0.0 ? 0.5 * (ym - yp) / denom : 0.0;
            line.center = fr.freqs[i] + delta * h;
            line.amplitude = std::sqrt(std::max(y0 - 0.25 * (ym - yp) * delta, 0.0));
        } else {
            line.center = 0.0;
            line.amplitude = mag[0];
        }
        const double level = 0.5 * line.amplitude * line.amplitude;
        const double lw = (i == 0 && mirrored_edge) ? -1.0 : half_width(power, fr.freqs, i, level, -1);
        const double rw = half_width(power, fr.freqs, i, level, +1);
        if (lw > 0.0 && rw > 0.0) {
            line.fwhm = lw + rw;
        } else if (lw > 0.0 || rw > 0.0) {
            line.fwhm = 2.0 * std::max(lw, rw);
        } else {
            continue;  // no resolvable half-power point on either side
        }
        lines.push_back(line);
    }
    return lines;
}

std::optional<SpectrumLine> nearest_line(std::span<const SpectrumLine> lines, double freq,
                                         double tolerance) {
    std::optional<SpectrumLine> best;
    for (const auto& l : lines) {
        const double d = std::abs(l.center - freq);
        if (d <= tolerance && (!best || d < std::abs(best->center - freq))) best = l;
    }
    return best;
}

double doublet_splitting(std::span<const SpectrumLine> lines, int n, double omega) {
    const double lo = n * omega - 0.5 * omega;
    const double hi = n * omega + 0.5 * omega;
    std::vector<SpectrumLine> in;
    for (const auto& l : lines) {
        if (l.center > lo && l.center < hi) in.push_back(l);
    }
    if (in.size() < 2) {
        std::optional<SpectrumLine> lone;
        if (!in.empty()) lone = in.front();
        throw SingletError(fmt::format("{} line(s) near harmonic {}: no doublet", in.size(), n), lone);
    }
    std::partial_sort(in.begin(), in.begin() + 2, in.end(),
                      [](const auto& a, const auto& b) { return a.amplitude > b.amplitude; });
    return std::abs(in[0].center - in[1].center);
}

}  // namespace bsraman
