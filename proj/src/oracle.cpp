#include "bsraman/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "bsraman/error.hpp"

namespace bsraman {

using cd = std::complex<double>;

std::string_view to_string(Stepper s) {
    switch (s) {
        case Stepper::RungeKutta4: return "rk4";
    }
    return "unknown";
}

double fast_frequency(const DriveParams& p, const DerivedFrame& f) {
    return std::max({f.omega0, p.mod_freq, p.amp});
}

IntegratorConfig default_integrator(const DriveParams& p, int steps_per_fast_period) {
    const DerivedFrame f = derive_frame(p);
    IntegratorConfig cfg;
    cfg.steps_per_fast_period = steps_per_fast_period;
    cfg.dt_max = kTwoPi / fast_frequency(p, f) / steps_per_fast_period;
    return cfg;
}

void validate(const IntegratorConfig& cfg, const DriveParams& p) {
    if (cfg.steps_per_fast_period < 40) {
        throw IntegratorError(
            fmt::format("steps_per_fast_period = {} is below the minimum of 40", cfg.steps_per_fast_period));
    }
    if (!(cfg.dt_max > 0.0) || !std::isfinite(cfg.dt_max)) {
        throw IntegratorError(fmt::format("dt_max must be positive (got {})", cfg.dt_max));
    }
    const DerivedFrame f = derive_frame(p);
    const double limit = kTwoPi / fast_frequency(p, f) / cfg.steps_per_fast_period;
    if (cfg.dt_max > limit * (1.0 + 1e-12)) {
        throw IntegratorError(fmt::format(
            "integrator step {:.6g} ns exceeds {:.6g} ns (fast period / {} steps)", cfg.dt_max * 1e3,
            limit * 1e3, cfg.steps_per_fast_period));
    }
}

namespace {

using State = std::array<cd, 2>;

// -i H psi with H = dz/2 sz + (dx/2 + A sin(w t + psi)) sx
struct Rhs {
    const DriveParams& p;
    State operator()(double t, const State& y) const {
        const double hz = 0.5 * p.delta_z;
        const double hx = 0.5 * p.delta_x + p.amp * std::sin(p.mod_freq * t + p.phase);
        const cd mi(0.0, -1.0);
        return {mi * (hz * y[0] + hx * y[1]), mi * (hx * y[0] - hz * y[1])};
    }
};

State axpy(const State& y, double h, const State& k) { return {y[0] + h * k[0], y[1] + h * k[1]}; }

State rk4_step(const Rhs& f, double t, const State& y, double h) {
    const State k1 = f(t, y);
    const State k2 = f(t + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = f(t + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = f(t + h, axpy(y, h, k3));
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

}  // namespace

std::vector<QubitState> evolve_state(const DriveParams& p, const TimeGrid& grid,
                                     const IntegratorConfig& cfg) {
    validate(cfg, p);
    if (grid.count == 0) return {};
    if (grid.count > 1 && !(grid.dt > 0.0)) throw IntegratorError("time grid step must be positive");

    const Rhs rhs{p};
    const auto substeps =
        grid.count > 1 ? static_cast<int>(std::ceil(grid.dt / cfg.dt_max * (1.0 - 1e-12))) : 1;
    const double h = grid.dt / std::max(substeps, 1);

    std::vector<QubitState> out;
    out.reserve(grid.count);
    if (grid.t0 < 0.0) throw IntegratorError("time grid must start at t >= 0");
    // |0> at t = 0, carried to the first sample if the window starts later.
    State y{cd(1.0, 0.0), cd(0.0, 0.0)};
    if (grid.t0 > 0.0) {
        const auto lead = static_cast<int>(std::ceil(grid.t0 / cfg.dt_max * (1.0 - 1e-12)));
        const double hl = grid.t0 / lead;
        for (int s = 0; s < lead; ++s) y = rk4_step(rhs, s * hl, y, hl);
    }
    out.push_back({y[0], y[1]});
    for (std::size_t i = 1; i < grid.count; ++i) {
        const double t_start = grid.at(i - 1);
        for (int s = 0; s < substeps; ++s) y = rk4_step(rhs, t_start + s * h, y, h);
        if (!std::isfinite(y[0].real()) || !std::isfinite(y[0].imag()) ||
            !std::isfinite(y[1].real()) || !std::isfinite(y[1].imag())) {
            throw IntegratorError(fmt::format("non-finite state at t = {} us", grid.at(i)));
        }
        out.push_back({y[0], y[1]});
    }
    return out;
}

TimeTrace evolve_full(const DriveParams& p, const TimeGrid& grid, const IntegratorConfig& cfg) {
    const auto states = evolve_state(p, grid, cfg);
    TimeTrace trace{grid, {}, Provenance::OdeOracle, p, derive_frame(p)};
    trace.samples.reserve(states.size());
    for (const auto& s : states) trace.samples.push_back(s.ground_population());
    return trace;
}

TimeTrace evolve_effective(const DriveParams& p, const DerivedFrame& f, const RamanQuantities& q,
                           const TimeGrid& grid) {
    using Mat = Eigen::Matrix2cd;
    using Vec = Eigen::Vector2cd;
    const cd I(0.0, 1.0);

    // U1 = exp(-i theta sy / 2) is a real rotation.
    const double half = 0.5 * f.theta();
    Mat u1;
    u1 << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);

    auto u2_phase = [&](double t) { return carrier_phase(p, f, t); };

    // H_eff = 1/2 (n . sigma), |n| = Omega_2*
    const double nx = q.omega_rwa * std::cos(2.0 * p.phase);
    const double ny = q.omega_rwa * std::sin(2.0 * p.phase);
    const double nz = q.bs_shift;
    const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
    Mat n_sigma;
    n_sigma << nz, cd(nx, -ny), cd(nx, ny), -nz;
    if (nn > 0.0) n_sigma /= nn;

    // Dressed-frame initial state U2(0)^+ U1^+ |0>.
    const double phi0 = u2_phase(0.0);
    Vec psi2 = u1.adjoint() * Vec(1.0, 0.0);
    psi2(0) *= std::exp(0.5 * I * phi0);
    psi2(1) *= std::exp(-0.5 * I * phi0);

    TimeTrace trace{grid, std::vector<double>(grid.count), Provenance::EffectiveHamiltonian, p, f};
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.at(i);
        const Mat v = std::cos(0.5 * nn * t) * Mat::Identity() - I * std::sin(0.5 * nn * t) * n_sigma;
        Vec s = v * psi2;
        const double phi = u2_phase(t);
        s(0) *= std::exp(-0.5 * I * phi);
        s(1) *= std::exp(0.5 * I * phi);
        const Vec lab = u1 * s;
        trace.samples[i] = std::norm(lab(0));
    }
    return trace;
}

double floquet_slow_frequency(const DriveParams& p, int steps_per_period) {
    validate(p);
    if (steps_per_period < 64) throw InvalidParameter("Floquet propagator needs >= 64 steps per period");
    const double period = kTwoPi / p.mod_freq;
    const double h = period / steps_per_period;
    const Rhs rhs{p};
    // Propagate both basis columns over one modulation period.
    State col0{cd(1.0, 0.0), cd(0.0, 0.0)};
    State col1{cd(0.0, 0.0), cd(1.0, 0.0)};
    for (int k = 0; k < steps_per_period; ++k) {
        col0 = rk4_step(rhs, k * h, col0, h);
        col1 = rk4_step(rhs, k * h, col1, h);
    }
    Eigen::Matrix2cd u;
    u << col0[0], col1[0], col0[1], col1[1];
    const Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
    const auto ev = es.eigenvalues();
    const double e0 = -std::arg(ev(0)) / period;
    const double e1 = -std::arg(ev(1)) / period;
    double d = std::fmod(std::abs(e0 - e1), p.mod_freq);
    if (d > 0.5 * p.mod_freq) d = p.mod_freq - d;
    return d;
}

}  // namespace bsraman
