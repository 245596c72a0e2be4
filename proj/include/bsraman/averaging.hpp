#pragma once

// Second-order averaging of the doubly rotated Hamiltonian, carried out
// numerically on its harmonic expansion. Serves as an independent route to
// the closed-form Omega_2 and omega_2^BS.

#include <vector>

#include <Eigen/Core>

#include "bsraman/params.hpp"

namespace bsraman {

// One Fourier component of H_2(t) = sum_m op e^{i m omega t}.
struct Harmonic {
    int m = 0;
    Eigen::Matrix2cd op;
};

// Harmonics of H_2 at exact resonance (omega0 = 2 omega), with the Bessel
// expansion cut at |n| <= n_max. Basis order is (|0>, |1>), sigma+ = |0><1|.
std::vector<Harmonic> dressed_frame_harmonics(const DriveParams& p, const DerivedFrame& f,
                                              int n_max);

struct AveragedHamiltonian {
    Eigen::Matrix2cd first_order;   // <H_2>
    Eigen::Matrix2cd second_order;  // (i/2) <[int^t (H_2 - <H_2>), H_2(t)]>
    double omega_rwa = 0.0;         // read off first_order
    double bs_shift = 0.0;          // read off second_order
};

// Averages term by term: the static harmonic gives the first order, and each
// pair (m, -m), m != 0, contributes [h_m, h_-m] / (2 m omega) to the second.
AveragedHamiltonian average_hamiltonian(const std::vector<Harmonic>& harmonics, double omega,
                                        double psi);

struct AveragingEstimate {
    double omega_rwa = 0.0;
    double bs_shift = 0.0;
};

AveragingEstimate averaging_oracle(const DriveParams& p, const DerivedFrame& f, int n_max = 40);

}  // namespace bsraman
