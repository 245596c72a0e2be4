#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "bsraman/kernels.hpp"

namespace bsraman::kernels {

// Four frequencies per __m256d; real and imaginary parts live in separate
// registers so the rotation is two FMAs per component.
void phasor_sum_avx2(std::span<const double> weights, double dt, std::span<const double> freqs,
                     std::span<std::complex<double>> out) {
    const std::size_t n = weights.size();
    const std::size_t nf = freqs.size();
    const std::size_t blocked = nf - nf % 4;

    alignas(32) double buf_re[4];
    alignas(32) double buf_im[4];

    for (std::size_t j = 0; j < blocked; j += 4) {
        for (int l = 0; l < 4; ++l) {
            buf_re[l] = std::cos(freqs[j + l] * dt);
            buf_im[l] = -std::sin(freqs[j + l] * dt);
        }
        const __m256d step_re = _mm256_load_pd(buf_re);
        const __m256d step_im = _mm256_load_pd(buf_im);
        __m256d acc_re = _mm256_setzero_pd();
        __m256d acc_im = _mm256_setzero_pd();

        for (std::size_t k0 = 0; k0 < n; k0 += kReseedInterval) {
            for (int l = 0; l < 4; ++l) {
                const double angle = -freqs[j + l] * dt * static_cast<double>(k0);
                buf_re[l] = std::cos(angle);
                buf_im[l] = std::sin(angle);
            }
            __m256d z_re = _mm256_load_pd(buf_re);
            __m256d z_im = _mm256_load_pd(buf_im);
            const std::size_t k1 = std::min(n, k0 + kReseedInterval);
            for (std::size_t k = k0; k < k1; ++k) {
                const __m256d w = _mm256_broadcast_sd(&weights[k]);
                acc_re = _mm256_fmadd_pd(w, z_re, acc_re);
                acc_im = _mm256_fmadd_pd(w, z_im, acc_im);
                const __m256d nr = _mm256_fmsub_pd(z_re, step_re, _mm256_mul_pd(z_im, step_im));
                z_im = _mm256_fmadd_pd(z_re, step_im, _mm256_mul_pd(z_im, step_re));
                z_re = nr;
            }
        }
        _mm256_store_pd(buf_re, acc_re);
        _mm256_store_pd(buf_im, acc_im);
        for (int l = 0; l < 4; ++l) out[j + l] = {buf_re[l], buf_im[l]};
    }
    if (blocked < nf) {
        phasor_sum_scalar(weights, dt, freqs.subspan(blocked), out.subspan(blocked));
    }
}

}  // namespace bsraman::kernels
