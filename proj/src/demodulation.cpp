#include "bsraman/demodulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "bsraman/error.hpp"

namespace bsraman {

std::complex<double> EnvelopeFit::envelope(double t) const {
    const double g[3] = {1.0, std::cos(slow_freq * t), std::sin(slow_freq * t)};
    std::complex<double> e{0.0, 0.0};
    // Re[E e^{iX}] = Re E cos X - Im E sin X
    for (int i = 0; i < 3; ++i) e += g[i] * std::complex<double>(coeffs[3 * i + 1], -coeffs[3 * i + 2]);
    return e;
}

namespace {

struct CarrierCache {
    std::vector<double> cos_x, sin_x;
};

CarrierCache carrier_cache(const TimeTrace& trace) {
    CarrierCache c;
    c.cos_x.resize(trace.grid.count);
    c.sin_x.resize(trace.grid.count);
    for (std::size_t i = 0; i < trace.grid.count; ++i) {
        const double x = carrier_phase(trace.params, trace.frame, trace.grid.at(i));
        c.cos_x[i] = std::cos(x);
        c.sin_x[i] = std::sin(x);
    }
    return c;
}

EnvelopeFit solve(const TimeTrace& trace, const CarrierCache& carrier, double w) {
    using Mat9 = Eigen::Matrix<double, 9, 9>;
    using Vec9 = Eigen::Matrix<double, 9, 1>;
    Mat9 normal = Mat9::Zero();
    Vec9 rhs = Vec9::Zero();
    Vec9 row;
    auto fill = [&](std::size_t i) {
        const double t = trace.grid.at(i);
        const double g[3] = {1.0, std::cos(w * t), std::sin(w * t)};
        const double h[3] = {1.0, carrier.cos_x[i], carrier.sin_x[i]};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) row(3 * a + b) = g[a] * h[b];
    };
    for (std::size_t i = 0; i < trace.grid.count; ++i) {
        fill(i);
        normal.selfadjointView<Eigen::Lower>().rankUpdate(row);
        rhs += row * trace.samples[i];
    }
    normal = normal.selfadjointView<Eigen::Lower>();
    const Vec9 k = normal.ldlt().solve(rhs);

    EnvelopeFit fit;
    fit.slow_freq = w;
    for (int j = 0; j < 9; ++j) fit.coeffs[static_cast<std::size_t>(j)] = k(j);
    double ss = 0.0;
    for (std::size_t i = 0; i < trace.grid.count; ++i) {
        fill(i);
        const double r = trace.samples[i] - row.dot(k);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(trace.grid.count));
    return fit;
}

void finish_depth(const TimeTrace& trace, EnvelopeFit& fit) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < trace.grid.count; ++i) {
        const double m = std::abs(fit.envelope(trace.grid.at(i)));
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    fit.modulation_depth = hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
}

void check_trace(const TimeTrace& trace) {
    if (trace.grid.count < 16) throw InvalidParameter("trace too short to demodulate");
}

}  // namespace

EnvelopeFit fit_envelope(const TimeTrace& trace, double slow_freq) {
    check_trace(trace);
    EnvelopeFit fit = solve(trace, carrier_cache(trace), slow_freq);
    finish_depth(trace, fit);
    return fit;
}

EnvelopeFit fit_slow_frequency(const TimeTrace& trace, double lo, double hi, int scan_points) {
    check_trace(trace);
    if (!(lo > 0.0) || !(hi > lo) || scan_points < 3) {
        throw InvalidParameter(fmt::format("bad slow-frequency scan [{}, {}] x {}", lo, hi, scan_points));
    }
    const CarrierCache carrier = carrier_cache(trace);
    const double step = (hi - lo) / (scan_points - 1);
    int best = 0;
    double best_r = std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan_points; ++i) {
        const double r = solve(trace, carrier, lo + i * step).rms_residual;
        if (r < best_r) {
            best_r = r;
            best = i;
        }
    }
    double a = lo + std::max(best - 1, 0) * step;
    double b = lo + std::min(best + 1, scan_points - 1) * step;
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = solve(trace, carrier, x1).rms_residual;
    double f2 = solve(trace, carrier, x2).rms_residual;
    while (b - a > 1e-9 * std::max(1.0, b)) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = solve(trace, carrier, x1).rms_residual;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = solve(trace, carrier, x2).rms_residual;
        }
    }
    EnvelopeFit fit = solve(trace, carrier, 0.5 * (a + b));
    finish_depth(trace, fit);
    return fit;
}

}  // namespace bsraman
