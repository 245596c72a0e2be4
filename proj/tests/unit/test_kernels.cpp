#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "bsraman/kernels.hpp"

using namespace bsraman::kernels;
using cd = std::complex<double>;

namespace {

struct Case {
    std::vector<double> w, f;
    double dt;
};

Case make_case(std::size_t samples, std::size_t nfreq, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Case c;
    c.dt = 1e-3;
    for (std::size_t k = 0; k < samples; ++k) c.w.push_back(u(rng));
    for (std::size_t j = 0; j < nfreq; ++j) c.f.push_back(160.0 * (0.5 + 0.5 * u(rng)));
    return c;
}

std::vector<cd> exact(const Case& c) {
    std::vector<cd> out(c.f.size());
    for (std::size_t j = 0; j < c.f.size(); ++j) {
        long double re = 0.0L, im = 0.0L;
        for (std::size_t k = 0; k < c.w.size(); ++k) {
            const long double ph = -static_cast<long double>(c.f[j]) * static_cast<long double>(k) * c.dt;
            re += c.w[k] * std::cos(ph);
            im += c.w[k] * std::sin(ph);
        }
        out[j] = cd(static_cast<double>(re), static_cast<double>(im));
    }
    return out;
}

double scale(const Case& c) {
    double s = 0.0;
    for (double x : c.w) s += std::abs(x);
    return s;
}

}  // namespace

TEST_CASE("scalar kernel matches direct summation") {
    for (std::size_t n : {1u, 7u, 511u, 512u, 513u, 5000u}) {
        const Case c = make_case(n, 9, static_cast<unsigned>(n));
        std::vector<cd> got(c.f.size());
        phasor_sum_scalar(c.w, c.dt, c.f, got);
        const auto ref = exact(c);
        for (std::size_t j = 0; j < got.size(); ++j) CHECK(std::abs(got[j] - ref[j]) < 1e-12 * scale(c));
    }
}

TEST_CASE("AVX2 kernel is equivalent to the scalar reference") {
    if (!isa_available(Isa::Avx2)) {
        CHECK_THROWS_AS(force_isa(Isa::Avx2), std::invalid_argument);
        return;
    }
    for (std::size_t nf : {1u, 3u, 4u, 5u, 8u, 11u, 64u}) {
        for (std::size_t n : {2u, 513u, 4099u}) {
            const Case c = make_case(n, nf, static_cast<unsigned>(n * 31 + nf));
            std::vector<cd> s(nf), v(nf);
            phasor_sum_scalar(c.w, c.dt, c.f, s);
            phasor_sum_avx2(c.w, c.dt, c.f, v);
            for (std::size_t j = 0; j < nf; ++j) CHECK(std::abs(s[j] - v[j]) < 1e-13 * scale(c));
        }
    }
}

TEST_CASE("dispatch honours the forced ISA") {
    const Case c = make_case(1000, 6, 3);
    std::vector<cd> a(6), b(6);
    force_isa(Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    phasor_sum(c.w, c.dt, c.f, a);
    phasor_sum_scalar(c.w, c.dt, c.f, b);
    for (std::size_t j = 0; j < 6; ++j) CHECK(a[j] == b[j]);
    reset_isa();
    CHECK(active_isa() == detected_isa());
    CHECK(isa_available(Isa::Scalar));
    CHECK(to_string(Isa::Avx2) == "avx2");
}

TEST_CASE("empty inputs") {
    std::vector<double> w, f;
    std::vector<cd> out;
    CHECK_NOTHROW(phasor_sum(w, 1e-3, f, out));
    std::vector<double> f1 = {1.0};
    std::vector<cd> o1(1, cd(5.0, 5.0));
    phasor_sum(w, 1e-3, f1, o1);
    CHECK(o1[0] == cd(0.0, 0.0));
}
