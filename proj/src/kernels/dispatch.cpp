#include <atomic>
#include <stdexcept>

#include "bsraman/kernels.hpp"

namespace bsraman::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(BSRAMAN_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<int> forced{-1};

}  // namespace

std::string_view to_string(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return true;
        case Isa::Avx2: {
            static const bool has = cpu_has_avx2();
            return has;
        }
    }
    return false;
}

Isa detected_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() {
    const int f = forced.load(std::memory_order_relaxed);
    return f < 0 ? detected_isa() : static_cast<Isa>(f);
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw std::invalid_argument("requested ISA is not available on this CPU/build");
    }
    forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { forced.store(-1, std::memory_order_relaxed); }

#if !defined(BSRAMAN_HAVE_AVX2_TU)
void phasor_sum_avx2(std::span<const double> weights, double dt, std::span<const double> freqs,
                     std::span<std::complex<double>> out) {
    phasor_sum_scalar(weights, dt, freqs, out);
}
#endif

void phasor_sum(std::span<const double> weights, double dt, std::span<const double> freqs,
                std::span<std::complex<double>> out) {
    if (out.size() != freqs.size()) throw std::invalid_argument("phasor_sum: output size mismatch");
    if (active_isa() == Isa::Avx2) {
        phasor_sum_avx2(weights, dt, freqs, out);
    } else {
        phasor_sum_scalar(weights, dt, freqs, out);
    }
}

}  // namespace bsraman::kernels
