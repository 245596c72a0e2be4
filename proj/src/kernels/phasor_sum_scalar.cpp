#include <algorithm>
#include <cmath>

#include "bsraman/kernels.hpp"

namespace bsraman::kernels {

void phasor_sum_scalar(std::span<const double> weights, double dt, std::span<const double> freqs,
                       std::span<std::complex<double>> out) {
    const std::size_t n = weights.size();
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        const double f = freqs[j];
        const double step_re = std::cos(f * dt);
        const double step_im = -std::sin(f * dt);
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t k0 = 0; k0 < n; k0 += kReseedInterval) {
            const double angle = -f * dt * static_cast<double>(k0);
            double z_re = std::cos(angle);
            double z_im = std::sin(angle);
            const std::size_t k1 = std::min(n, k0 + kReseedInterval);
            for (std::size_t k = k0; k < k1; ++k) {
                acc_re += weights[k] * z_re;
                acc_im += weights[k] * z_im;
                const double nr = z_re * step_re - z_im * step_im;
                z_im = z_re * step_im + z_im * step_re;
                z_re = nr;
            }
        }
        out[j] = {acc_re, acc_im};
    }
}

}  // namespace bsraman::kernels
