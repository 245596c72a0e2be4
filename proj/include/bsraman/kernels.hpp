#pragma once

// Data-parallel inner loop of the spectral transform:
//
//   out[j] = sum_k w[k] exp(-i f[j] k dt)
//
// A scalar reference and an AVX2 variant (four frequencies per lane group)
// share one algorithm: the phasor for each frequency is advanced by complex
// multiplication and re-seeded from cos/sin every kReseedInterval samples,
// which bounds the recurrence drift to ~kReseedInterval ulps. The variant is
// chosen once at runtime from cpuid.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace bsraman::kernels {

inline constexpr std::size_t kReseedInterval = 512;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

// Best ISA this process can run.
Isa detected_isa();

// ISA used by phasor_sum; defaults to detected_isa().
Isa active_isa();

// Pins the dispatch (tests, benchmarks). Throws std::invalid_argument when the
// CPU or build cannot run the requested ISA.
void force_isa(Isa isa);
void reset_isa();

bool isa_available(Isa isa);

void phasor_sum_scalar(std::span<const double> weights, double dt, std::span<const double> freqs,
                       std::span<std::complex<double>> out);

void phasor_sum_avx2(std::span<const double> weights, double dt, std::span<const double> freqs,
                     std::span<std::complex<double>> out);

// Dispatches to the active ISA.
void phasor_sum(std::span<const double> weights, double dt, std::span<const double> freqs,
                std::span<std::complex<double>> out);

}  // namespace bsraman::kernels
