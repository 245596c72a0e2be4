#include <doctest.h>

#include <cmath>
#include <functional>

#include "bsraman/spectrum.hpp"

using namespace bsraman;

namespace {

TimeTrace sampled(const std::function<double(double)>& fn, double window = 40.0, double dt = 1e-3) {
    TimeTrace tr;
    tr.grid = TimeGrid::covering(window, dt);
    for (std::size_t i = 0; i < tr.grid.count; ++i) tr.samples.push_back(fn(tr.grid.at(i)));
    return tr;
}

const std::vector<double> kGrid = uniform_frequency_grid(0.0, kTwoPi * 25.0, kTwoPi * 0.005);

}  // namespace

TEST_CASE("constant trace: F(0) = (1 - e^{-gamma T}) / gamma") {
    const double g = 0.25;
    const FourierResponse fr = fourier_response(sampled([](double) { return 1.0; }), g, kGrid);
    CHECK(std::abs(fr.values[0]) == doctest::Approx((1.0 - std::exp(-g * 40.0)) / g).epsilon(1e-6));
    const auto lines = find_lines(fr);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0].center == 0.0);
    CHECK(lines[0].fwhm == doctest::Approx(2.0 * g).epsilon(0.02));
}

TEST_CASE("single tone gives a Lorentzian of full width 2 gamma") {
    const double w0 = kTwoPi * 7.3;
    for (double g : {0.25, 0.5}) {
        const FourierResponse fr = fourier_response(sampled([&](double t) { return std::cos(w0 * t); }), g, kGrid);
        const auto lines = find_lines(fr);
        const auto l = nearest_line(lines, w0, 0.5);
        REQUIRE(l.has_value());
        CHECK(l->center == doctest::Approx(w0).epsilon(1e-4));
        CHECK(l->fwhm == doctest::Approx(2.0 * g).epsilon(0.03));
        CHECK(l->amplitude == doctest::Approx(0.5 / g).epsilon(0.01));
    }
}

TEST_CASE("two tones are resolved with their relative strengths") {
    const double w1 = kTwoPi * 4.0, w2 = kTwoPi * 11.0;
    const FourierResponse fr = fourier_response(
        sampled([&](double t) { return std::cos(w1 * t) + 0.3 * std::sin(w2 * t); }), 0.25, kGrid);
    const auto lines = find_lines(fr);
    const auto a = nearest_line(lines, w1, 0.5);
    const auto b = nearest_line(lines, w2, 0.5);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(b->amplitude / a->amplitude == doctest::Approx(0.3).epsilon(0.02));
}

TEST_CASE("the transform is linear") {
    auto p = [](double t) { return std::cos(20.0 * t) + 0.2; };
    auto q = [](double t) { return std::sin(55.0 * t) * std::cos(3.0 * t); };
    const auto fp = fourier_response(sampled(p), 0.3, kGrid);
    const auto fq = fourier_response(sampled(q), 0.3, kGrid);
    const auto fs = fourier_response(sampled([&](double t) { return 2.0 * p(t) - 0.5 * q(t); }), 0.3, kGrid);
    for (std::size_t j = 0; j < kGrid.size(); j += 37) {
        CHECK(std::abs(fs.values[j] - (2.0 * fp.values[j] - 0.5 * fq.values[j])) < 1e-10);
    }
}

TEST_CASE("prominence threshold drops weak lines") {
    const double w1 = kTwoPi * 4.0, w2 = kTwoPi * 11.0;
    const auto fr = fourier_response(sampled([&](double t) { return std::cos(w1 * t) + 0.01 * std::cos(w2 * t); }),
                                     0.25, kGrid);
    CHECK(nearest_line(find_lines(fr, 0.005), w2, 0.5).has_value());
    CHECK_FALSE(nearest_line(find_lines(fr, 0.02), w2, 0.5).has_value());
}

TEST_CASE("a shifted time origin multiplies by exp(-(i w + gamma) t0)") {
    const TimeTrace a = sampled([](double t) { return std::cos(30.0 * t) + 0.1 * t; });
    TimeTrace b = a;
    b.grid.t0 = 1.5;
    const double g = 0.25;
    const auto fa = fourier_response(a, g, kGrid);
    const auto fb = fourier_response(b, g, kGrid);
    for (std::size_t j = 0; j < kGrid.size(); j += 101) {
        const auto expected = fa.values[j] * std::exp(std::complex<double>(-g, -kGrid[j]) * 1.5);
        CHECK(std::abs(fb.values[j] - expected) < 1e-11 * (1.0 + std::abs(expected)));
    }
}

TEST_CASE("doublet splitting") {
    const double w = kTwoPi * 5.22;
    const double s = 2.95;
    const auto fr = fourier_response(
        sampled([&](double t) { return std::cos((w - s) * t) + 0.7 * std::cos((w + s) * t); }), 0.25, kGrid);
    const auto lines = find_lines(fr);
    CHECK(doublet_splitting(lines, 1, w) == doctest::Approx(2.0 * s).epsilon(0.01));
    try {
        doublet_splitting(lines, 2, w);
        FAIL("expected a singlet error");
    } catch (const SingletError& e) {
        CHECK_FALSE(e.line().has_value());
    }
    const auto single = fourier_response(sampled([&](double t) { return std::cos((w + s) * t); }), 0.25, kGrid);
    try {
        doublet_splitting(find_lines(single), 1, w);
        FAIL("expected a singlet error");
    } catch (const SingletError& e) {
        REQUIRE(e.line().has_value());
        CHECK(e.line()->center == doctest::Approx(w + s).epsilon(1e-4));
    }
}

TEST_CASE("transform preconditions") {
    const TimeTrace tr = sampled([](double) { return 1.0; });
    CHECK_THROWS_AS(fourier_response(tr, 0.0, kGrid), SpectrumError);
    CHECK_THROWS_AS(fourier_response(sampled([](double) { return 1.0; }, 20.0), 0.25, kGrid), SpectrumError);
    // exp(-gamma T) <= 3e-4 needs gamma T >= 8.11
    CHECK_THROWS_AS(fourier_response(sampled([](double) { return 1.0; }, 32.4), 0.25, kGrid), SpectrumError);
    CHECK_NOTHROW(fourier_response(sampled([](double) { return 1.0; }, 32.5), 0.25, kGrid));
    CHECK_THROWS_AS(fourier_response(sampled([](double) { return 1.0; }, 40.0, 5e-3), 0.25, kGrid), SpectrumError);
    const std::vector<double> bad = {1.0, 1.0};
    CHECK_THROWS_AS(fourier_response(tr, 0.25, bad), SpectrumError);
    CHECK(uniform_frequency_grid(0.0, 1.0, 0.25).size() == 5);
}
