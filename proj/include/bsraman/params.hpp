#pragma once

// Physical inputs of the driven two-level system and the quantities derived
// from diagonalizing its static part.
//
// Units: every internal frequency is angular, in rad/us; time is in us.
// User-facing values are "frequency / 2pi" in MHz.

#include <numbers>

namespace bsraman {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 1/T2 with T2 = 4 us.
inline constexpr double kDefaultGamma = 0.25;

inline constexpr double kDefaultDetuningWarning = 0.02;

constexpr double mhz_to_angular(double f_mhz) { return kTwoPi * f_mhz; }
constexpr double angular_to_mhz(double w) { return w / kTwoPi; }
constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// H = delta_z/2 sz + delta_x/2 sx + amp sin(mod_freq t + phase) sx
struct DriveParams {
    double delta_x = 0.0;   // rad/us
    double delta_z = 0.0;   // rad/us
    double amp = 0.0;       // rad/us
    double mod_freq = 0.0;  // rad/us, > 0
    double phase = 0.0;     // rad
    double gamma = kDefaultGamma;  // 1/us, spectral decay only

    // Builds from the MHz/degree conventions of the config schema.
    static DriveParams from_lab_units(double delta_x_mhz, double delta_z_mhz,
                                      double amp_over_omega, double omega_mhz,
                                      double psi_deg, double gamma = kDefaultGamma);

    double delta_x_mhz() const { return angular_to_mhz(delta_x); }
    double delta_z_mhz() const { return angular_to_mhz(delta_z); }
    double omega_mhz() const { return angular_to_mhz(mod_freq); }
    double amp_over_omega() const { return amp / mod_freq; }
    double psi_deg() const { return rad_to_deg(phase); }

    DriveParams with_amp(double a) const {
        DriveParams p = *this;
        p.amp = a;
        return p;
    }
    DriveParams with_phase(double psi) const {
        DriveParams p = *this;
        p.phase = psi;
        return p;
    }
};

// Throws InvalidParameter when an invariant of DriveParams is broken.
void validate(const DriveParams& p);

// The NV-centre parameter set used throughout: omega/2pi = 5.22 MHz,
// delta_x/2pi = 10 MHz, delta_z/2pi = 3 MHz, psi = 0, gamma = 0.25 /us.
// The amplitude is left at zero; callers pick it (usually A* + dA).
DriveParams reference_drive();

struct DerivedFrame {
    double omega0 = 0.0;          // sqrt(delta_z^2 + delta_x^2), rad/us
    double sin_theta = 0.0;       // delta_x / omega0
    double cos_theta = 1.0;       // delta_z / omega0
    double mod_index = 0.0;       // a = 2 A sin(theta) / omega
    double coupling_ratio = 0.0;  // g/eps = A cos(theta) / omega

    double theta() const;
};

DerivedFrame derive_frame(const DriveParams& p);

// Signed (omega0 - 2 omega) / omega.
double resonance_detuning(const DerivedFrame& f, const DriveParams& p);

inline bool is_off_resonant(double detuning_ratio,
                            double threshold = kDefaultDetuningWarning) {
    return detuning_ratio > threshold || detuning_ratio < -threshold;
}

}  // namespace bsraman
