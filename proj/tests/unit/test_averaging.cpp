#include <doctest.h>

#include <cmath>
#include <complex>

#include "bsraman/analytic.hpp"
#include "bsraman/averaging.hpp"
#include "bsraman/special_functions.hpp"

using namespace bsraman;
using cd = std::complex<double>;

namespace {

DriveParams resonant(double a, double psi) {
    DriveParams p = reference_drive().with_phase(psi);
    const DerivedFrame f0 = derive_frame(p);
    p.mod_freq = 0.5 * f0.omega0;
    p.amp = a * p.mod_freq / (2.0 * f0.sin_theta);
    return p;
}

// sigma+ element of the doubly rotated Hamiltonian, straight from its definition.
cd h01(const DriveParams& p, const DerivedFrame& f, double t) {
    const double ph = 2.0 * p.mod_freq * t - f.mod_index * std::cos(p.mod_freq * t + p.phase);
    return p.amp * f.cos_theta * std::sin(p.mod_freq * t + p.phase) * std::polar(1.0, ph);
}

}  // namespace

TEST_CASE("harmonics match a DFT of the rotated Hamiltonian") {
    for (double a : {0.5, 2.0, 5.1356}) {
        const DriveParams p = resonant(a, 0.7);
        const DerivedFrame f = derive_frame(p);
        const auto hs = dressed_frame_harmonics(p, f, 40);
        const int N = 1024;
        const double T = kTwoPi / p.mod_freq;
        for (const auto& h : hs) {
            if (std::abs(h.m) > 12) continue;
            cd up = 0.0, down = 0.0;
            for (int k = 0; k < N; ++k) {
                const double t = T * k / N;
                const cd e = std::polar(1.0, -h.m * p.mod_freq * t);
                up += h01(p, f, t) * e;
                down += std::conj(h01(p, f, t)) * e;
            }
            up /= N;
            down /= N;
            CHECK(std::abs(h.op(0, 1) - up) < 1e-12 * p.amp);
            CHECK(std::abs(h.op(1, 0) - down) < 1e-12 * p.amp);
            CHECK(h.op(0, 0) == cd(0.0));
            CHECK(h.op(1, 1) == cd(0.0));
        }
    }
}

TEST_CASE("harmonic sum is Hermitian at every time") {
    const DriveParams p = resonant(2.0, 0.3);
    const auto hs = dressed_frame_harmonics(p, derive_frame(p), 30);
    for (double t : {0.0, 0.013, 0.1, 0.77}) {
        Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
        for (const auto& x : hs) h += x.op * std::polar(1.0, x.m * p.mod_freq * t);
        CHECK((h - h.adjoint()).norm() < 1e-12 * p.amp);
    }
}

TEST_CASE("averaged Hamiltonian reproduces the closed forms") {
    for (double a : {0.5, 1.3, 2.0, j2_zero(1), 7.0}) {
        for (double psi : {0.0, 0.4, 1.5707963267948966}) {
            const DriveParams p = resonant(a, psi);
            const DerivedFrame f = derive_frame(p);
            const AveragedHamiltonian avg = average_hamiltonian(dressed_frame_harmonics(p, f, 40), p.mod_freq, psi);
            const RamanQuantities q = raman_quantities(p, f, 40);
            CHECK(std::abs(avg.omega_rwa - q.omega_rwa) < 1e-12 * p.amp);
            CHECK(avg.bs_shift == doctest::Approx(q.bs_shift).epsilon(1e-11));
            // first order: Omega_2/2 e^{-2i psi} sigma+; second order diagonal and traceless
            CHECK(std::abs(avg.first_order(0, 1) - 0.5 * q.omega_rwa * std::polar(1.0, -2.0 * psi)) < 1e-12 * p.amp);
            CHECK(std::abs(avg.second_order.trace()) < 1e-12 * p.amp);
            CHECK(std::abs(avg.second_order(0, 1)) < 1e-12 * p.amp);
        }
    }
}

TEST_CASE("averaging oracle entry point") {
    const DriveParams p = resonant(2.0, 0.0);
    const DerivedFrame f = derive_frame(p);
    const AveragingEstimate e = averaging_oracle(p, f);
    CHECK(e.omega_rwa == doctest::Approx(rabi_rwa(p, f)).epsilon(1e-12));
    const AveragingEstimate zero = averaging_oracle(p.with_amp(0.0), derive_frame(p.with_amp(0.0)));
    CHECK(zero.omega_rwa == 0.0);
    CHECK(zero.bs_shift == 0.0);
}
