#include "bsraman/params.hpp"

#include <cmath>

#include <fmt/format.h>

#include "bsraman/error.hpp"

namespace bsraman {

DriveParams DriveParams::from_lab_units(double delta_x_mhz, double delta_z_mhz,
                                        double amp_over_omega, double omega_mhz,
                                        double psi_deg, double gamma) {
    DriveParams p;
    p.delta_x = mhz_to_angular(delta_x_mhz);
    p.delta_z = mhz_to_angular(delta_z_mhz);
    p.mod_freq = mhz_to_angular(omega_mhz);
    p.amp = amp_over_omega * p.mod_freq;
    p.phase = deg_to_rad(psi_deg);
    p.gamma = gamma;
    validate(p);
    return p;
}

void validate(const DriveParams& p) {
    for (double v : {p.delta_x, p.delta_z, p.amp, p.mod_freq, p.phase, p.gamma}) {
        if (!std::isfinite(v)) throw InvalidParameter("drive parameters must be finite");
    }
    if (!(p.mod_freq > 0.0)) {
        throw InvalidParameter(fmt::format("modulation frequency must be > 0 (got {})", p.mod_freq));
    }
    if (p.gamma < 0.0) throw InvalidParameter(fmt::format("gamma must be >= 0 (got {})", p.gamma));
    if (p.amp < 0.0) throw InvalidParameter(fmt::format("amplitude must be >= 0 (got {})", p.amp));
    // A negative delta_x is a pi rotation of the basis away; keeping it
    // non-negative keeps the modulation index a >= 0.
    if (p.delta_x < 0.0) throw InvalidParameter(fmt::format("delta_x must be >= 0 (got {})", p.delta_x));
    if (p.delta_x == 0.0 && p.delta_z == 0.0) {
        throw InvalidParameter("delta_x and delta_z are both zero: mixing angle undefined");
    }
}

DriveParams reference_drive() {
    return DriveParams::from_lab_units(10.0, 3.0, 0.0, 5.22, 0.0, kDefaultGamma);
}

double DerivedFrame::theta() const { return std::atan2(sin_theta, cos_theta); }

DerivedFrame derive_frame(const DriveParams& p) {
    validate(p);
    DerivedFrame f;
    f.omega0 = std::hypot(p.delta_z, p.delta_x);
    f.sin_theta = p.delta_x / f.omega0;
    f.cos_theta = p.delta_z / f.omega0;
    f.mod_index = 2.0 * p.amp * f.sin_theta / p.mod_freq;
    f.coupling_ratio = p.amp * f.cos_theta / p.mod_freq;
    return f;
}

double resonance_detuning(const DerivedFrame& f, const DriveParams& p) {
    return (f.omega0 - 2.0 * p.mod_freq) / p.mod_freq;
}

}  // namespace bsraman
