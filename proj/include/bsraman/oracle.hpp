#pragma once

// Ground-truth dynamics: direct integration of the rotating-frame
// Schrodinger equation, and closed-form evolution under the averaged
// Hamiltonian mapped back through the two frame rotations.

#include <complex>
#include <string_view>
#include <vector>

#include "bsraman/analytic.hpp"

namespace bsraman {

// Amplitudes in the {|0>, |-1>} basis; |0> is the sigma_z = +1 state.
struct QubitState {
    std::complex<double> c0{1.0, 0.0};
    std::complex<double> c1{0.0, 0.0};

    double norm() const { return std::norm(c0) + std::norm(c1); }
    double ground_population() const { return std::norm(c0); }
};

enum class Stepper { RungeKutta4 };

std::string_view to_string(Stepper s);

struct IntegratorConfig {
    double dt_max = 0.0;  // us
    int steps_per_fast_period = 40;
    Stepper method = Stepper::RungeKutta4;
};

// max(omega0, omega, A)
double fast_frequency(const DriveParams& p, const DerivedFrame& f);

// dt_max set to exactly one fast period / steps_per_fast_period.
IntegratorConfig default_integrator(const DriveParams& p, int steps_per_fast_period = 40);

// Throws IntegratorError if dt_max exceeds (2 pi / omega_fast) / steps_per_fast_period
// or steps_per_fast_period < 40.
void validate(const IntegratorConfig& cfg, const DriveParams& p);

// Fixed-step RK4 from |0> at t = 0. Each grid interval is split into
// ceil(dt / dt_max) equal substeps; one state per grid point is returned.
std::vector<QubitState> evolve_state(const DriveParams& p, const TimeGrid& grid,
                                     const IntegratorConfig& cfg);

// P(t) = |c0(t)|^2 of evolve_state.
TimeTrace evolve_full(const DriveParams& p, const TimeGrid& grid, const IntegratorConfig& cfg);

// Static H_eff = bs/2 sz + Omega_2/2 (s+ e^{-2i psi} + h.c.) in the doubly
// rotated frame, exponentiated in closed form, then mapped back through
// U2 = exp(-i [2 omega t - a cos(omega t + psi)] sz/2) and U1 = exp(-i theta sy/2).
TimeTrace evolve_effective(const DriveParams& p, const DerivedFrame& f, const RamanQuantities& q,
                           const TimeGrid& grid);

// Exact slow frequency from the Floquet quasienergies of the full Hamiltonian:
// the quasienergy splitting folded into (-omega/2, omega/2]. This is the
// frequency the averaged Omega_2* approximates.
double floquet_slow_frequency(const DriveParams& p, int steps_per_period = 4096);

}  // namespace bsraman
