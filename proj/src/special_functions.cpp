#include "bsraman/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "bsraman/error.hpp"
#include "bsraman/params.hpp"

namespace bsraman {

namespace {

constexpr double kSeriesCutover = 0.5;

void check_argument(double x) {
    if (!std::isfinite(x)) throw InvalidParameter("Bessel argument must be finite");
    if (x < 0.0) throw InvalidParameter(fmt::format("Bessel argument must be >= 0 (got {})", x));
    if (x > kMaxBesselArgument) {
        throw InvalidParameter(fmt::format("Bessel argument {} exceeds supported range [0, {}]", x,
                                           kMaxBesselArgument));
    }
}

// Power series; only used for x <= 0.5 where it converges in a handful of terms.
double series_j(int n, double x) {
    const double half = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    double sum = term;
    const double q = -half * half;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Miller's algorithm: recur downward from a start order well above both n and x,
// normalize with J_0 + 2 sum J_2k = 1.
std::vector<double> miller_sweep(int max_order, double x) {
    const double big = std::max(static_cast<double>(max_order), x);
    int start = static_cast<int>(big + 20.0 + std::sqrt(160.0 * big));
    start += start % 2;

    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
    double next = 0.0;  // J_{k+1}
    double cur = 1e-30;   // J_k, arbitrary seed
    double norm = 0.0;
    const double two_over_x = 2.0 / x;
    for (int k = start; k > 0; --k) {
        const double prev = k * two_over_x * cur - next;  // J_{k-1}
        next = cur;
        cur = prev;
        const int order = k - 1;
        if (order <= max_order) out[static_cast<std::size_t>(order)] = cur;
        if (order > 0 && order % 2 == 0) norm += 2.0 * cur;
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for (auto& v : out) v *= 1e-250;
        }
    }
    norm += cur;  // J_0
    for (auto& v : out) v /= norm;
    return out;
}

std::vector<double> positive_orders(int max_order, double x) {
    if (x == 0.0) {
        std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
        out[0] = 1.0;
        return out;
    }
    if (x <= kSeriesCutover) {
        std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
        for (int n = 0; n <= max_order; ++n) out[static_cast<std::size_t>(n)] = series_j(n, x);
        return out;
    }
    return miller_sweep(max_order, x);
}

double reflect_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

BesselTable::BesselTable(double x, int max_order) : x_(x), max_order_(max_order) {
    check_argument(x);
    if (max_order < 0 || max_order > kMaxTableOrder) {
        throw InvalidParameter(fmt::format("Bessel table order {} outside [0, {}]", max_order,
                                           kMaxTableOrder));
    }
    positive_ = positive_orders(max_order, x);
}

double BesselTable::operator()(int n) const {
    const int m = n < 0 ? -n : n;
    if (m > max_order_) return 0.0;
    const double v = positive_[static_cast<std::size_t>(m)];
    return n < 0 ? reflect_sign(m) * v : v;
}

double bessel_j(int n, double x) {
    check_argument(x);
    if (n > kMaxBesselOrder || n < -kMaxBesselOrder) {
        throw InvalidParameter(fmt::format("Bessel order {} outside [-{}, {}]", n, kMaxBesselOrder,
                                           kMaxBesselOrder));
    }
    const int m = n < 0 ? -n : n;
    double v;
    if (x == 0.0) {
        v = (m == 0) ? 1.0 : 0.0;
    } else if (x <= kSeriesCutover) {
        v = series_j(m, x);
    } else {
        v = miller_sweep(m, x)[static_cast<std::size_t>(m)];
    }
    return n < 0 ? reflect_sign(m) * v : v;
}

namespace {

constexpr int kMaxZeroIndex = 8;

std::array<double, kMaxZeroIndex> compute_j2_zeros() {
    std::array<double, kMaxZeroIndex> zeros{};
    int found = 0;
    constexpr double step = 0.1;
    double lo = step;
    double f_lo = bessel_j(2, lo);
    while (found < kMaxZeroIndex) {
        const double hi = lo + step;
        const double f_hi = bessel_j(2, hi);
        if ((f_lo < 0.0) != (f_hi < 0.0) || f_hi == 0.0) {
            double a = lo, b = hi, fa = f_lo;
            // Bisect until the bracket cannot shrink any further.
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                const double fm = bessel_j(2, mid);
                if (fm == 0.0) {
                    a = b = mid;
                    break;
                }
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            zeros[static_cast<std::size_t>(found++)] = 0.5 * (a + b);
        }
        lo = hi;
        f_lo = f_hi;
    }
    return zeros;
}

}  // namespace

double j2_zero(int k) {
    if (k < 1 || k > kMaxZeroIndex) {
        throw InvalidParameter(fmt::format("J2 zero index {} outside [1, {}]", k, kMaxZeroIndex));
    }
    static const std::array<double, kMaxZeroIndex> zeros = compute_j2_zeros();
    return zeros[static_cast<std::size_t>(k - 1)];
}

double a_star_amplitude(const DerivedFrame& f, double omega, int k) {
    if (!(f.sin_theta > 0.0)) {
        throw InvalidParameter("sin(theta) = 0: the drive does not modulate the splitting");
    }
    return j2_zero(k) * omega / (2.0 * f.sin_theta);
}

}  // namespace bsraman
