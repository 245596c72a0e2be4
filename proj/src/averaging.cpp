#include "bsraman/averaging.hpp"

#include <complex>
#include <map>

#include "bsraman/error.hpp"
#include "bsraman/special_functions.hpp"

namespace bsraman {

using cd = std::complex<double>;

std::vector<Harmonic> dressed_frame_harmonics(const DriveParams& p, const DerivedFrame& f,
                                              int n_max) {
    if (n_max < 3) throw InvalidParameter("harmonic expansion needs n_max >= 3");
    const BesselTable J(f.mod_index, n_max);
    const cd I(0.0, 1.0);
    // sigma+ coefficient: (A cos(theta) / 2i) sum_n J_n e^{-i n pi/2}
    //   (e^{i(n+1)(omega t + psi)} - e^{i(n-1)(omega t + psi)}) e^{i omega0 t}, omega0 = 2 omega
    const cd prefactor = p.amp * f.cos_theta / (2.0 * I);
    std::map<int, cd> plus;
    for (int n = -n_max; n <= n_max; ++n) {
        const cd base = prefactor * J(n) * std::exp(-I * (n * 0.5 * std::numbers::pi));
        plus[n + 3] += base * std::exp(I * ((n + 1) * p.phase));
        plus[n + 1] -= base * std::exp(I * ((n - 1) * p.phase));
    }
    std::vector<Harmonic> out;
    const int m_max = n_max + 3;
    for (int m = -m_max; m <= m_max; ++m) {
        const auto up = plus.find(m);
        const auto down = plus.find(-m);  // h.c. of the e^{-i m} sigma+ term lands on +m
        Harmonic h;
        h.m = m;
        h.op.setZero();
        if (up != plus.end()) h.op(0, 1) = up->second;
        if (down != plus.end()) h.op(1, 0) = std::conj(down->second);
        if (h.op.cwiseAbs().maxCoeff() > 0.0) out.push_back(h);
    }
    return out;
}

AveragedHamiltonian average_hamiltonian(const std::vector<Harmonic>& harmonics, double omega,
                                        double psi) {
    std::map<int, Eigen::Matrix2cd> by_m;
    for (const auto& h : harmonics) {
        auto [it, inserted] = by_m.try_emplace(h.m, h.op);
        if (!inserted) it->second += h.op;
    }
    AveragedHamiltonian out;
    out.first_order.setZero();
    out.second_order.setZero();
    if (auto it = by_m.find(0); it != by_m.end()) out.first_order = it->second;

    // int^t h_m e^{i m w tau} = h_m e^{i m w t} / (i m w); averaging keeps m' = -m,
    // so (i/2) sum_m [h_m, h_-m] / (i m w) = sum_m [h_m, h_-m] / (2 m w).
    for (const auto& [m, op] : by_m) {
        if (m == 0) continue;
        const auto partner = by_m.find(-m);
        if (partner == by_m.end()) continue;
        const Eigen::Matrix2cd comm = op * partner->second - partner->second * op;
        out.second_order += comm / (2.0 * m * omega);
    }
    // first_order = Omega_2/2 (sigma+ e^{-2i psi} + h.c.)
    out.omega_rwa = 2.0 * (out.first_order(0, 1) * std::exp(cd(0.0, 2.0 * psi))).real();
    // second_order = omega_BS/2 sigma_z
    out.bs_shift = (out.second_order(0, 0) - out.second_order(1, 1)).real();
    return out;
}

AveragingEstimate averaging_oracle(const DriveParams& p, const DerivedFrame& f, int n_max) {
    if (p.amp == 0.0) return {};
    const AveragedHamiltonian h =
        average_hamiltonian(dressed_frame_harmonics(p, f, n_max), p.mod_freq, p.phase);
    return {h.omega_rwa, h.bs_shift};
}

}  // namespace bsraman
