#pragma once

#include <vector>

namespace bsraman {

inline constexpr int kMaxBesselOrder = 64;
inline constexpr double kMaxBesselArgument = 30.0;

// J_n(x) for integer n, |n| <= 64, 0 <= x <= 30. Absolute error below 1e-12.
double bessel_j(int n, double x);

// J_{-N..N}(x) from a single downward sweep. The order limit here is looser
// than bessel_j's (orders up to kMaxTableOrder) because truncated series sums
// double their cutoff when checking convergence.
class BesselTable {
public:
    static constexpr int kMaxTableOrder = 256;

    BesselTable(double x, int max_order);

    double x() const { return x_; }
    int max_order() const { return max_order_; }

    // J_n(x); orders beyond max_order() are treated as zero.
    double operator()(int n) const;

private:
    double x_;
    int max_order_;
    std::vector<double> positive_;  // J_0..J_max
};

// k-th positive zero of J_2 (k = 1..8), located by a 0.1-step sign scan and
// bisected to full double precision.
double j2_zero(int k);

struct DerivedFrame;

// Drive amplitude at which a = 2 A sin(theta) / omega hits the k-th zero of J_2.
double a_star_amplitude(const DerivedFrame& f, double omega, int k = 1);

}  // namespace bsraman
