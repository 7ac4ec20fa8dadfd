#include "fob/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fob {

namespace {

// All real roots of x^3 + a x^2 + b x + c = 0.
std::vector<double> real_roots_monic(double a, double b, double c) {
    // depressed cubic t^3 + p t + q, x = t - a/3
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;

    std::vector<double> roots;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + sq);
        // v*u = -p/3; dividing avoids cancellation in cbrt(-q/2 - sq)
        const double v = (u != 0.0) ? -p / (3.0 * u) : std::cbrt(-q / 2.0 - sq);
        roots.push_back(u + v + shift);
    } else if (disc == 0.0) {
        const double u = std::cbrt(-q / 2.0);
        roots.push_back(2.0 * u + shift);
        roots.push_back(-u + shift);
    } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double phi = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots.push_back(m * std::cos(phi - 2.0 * M_PI * k / 3.0) + shift);
        }
    }
    return roots;
}

double residual_scale(const CubicCoeffs& c, double x) {
    const double ax = std::fabs(x);
    return std::max({std::fabs(c.c3) * ax * ax * ax, std::fabs(c.c2) * ax * ax,
                     std::fabs(c.c1) * ax, std::fabs(c.c0), 1e-300});
}

double newton_polish(const CubicCoeffs& c, double x) {
    for (int it = 0; it < 4; ++it) {
        const double f = c.eval(x);
        if (std::fabs(f) <= 1e-14 * residual_scale(c, x)) break;
        const double df = c.deriv(x);
        if (df == 0.0) break;
        x -= f / df;
    }
    return x;
}

}  // namespace

double unique_positive_root(const CubicCoeffs& c) {
    if (c.c3 == 0.0) throw std::invalid_argument("unique_positive_root: c3 == 0");
    auto roots = real_roots_monic(c.c2 / c.c3, c.c1 / c.c3, c.c0 / c.c3);

    std::vector<double> positive;
    for (double r : roots) {
        if (r > 0.0) positive.push_back(r);
    }
    if (positive.empty()) throw NoPositiveRoot();
    // the target family has exactly one sign change on (0, inf)
    std::sort(positive.begin(), positive.end());
    positive.erase(std::unique(positive.begin(), positive.end(),
                               [](double a, double b) { return std::fabs(a - b) <= 1e-9 * std::fabs(b); }),
                   positive.end());
    if (positive.size() > 1) throw NoPositiveRoot();

    const double x = newton_polish(c, positive.front());
    if (!(x > 0.0) || std::fabs(c.eval(x)) > 1e-10 * residual_scale(c, x)) {
        throw RootNotConverged();
    }
    return x;
}

double q_inverse(double v, double eta) {
    if (!(v >= 0.0)) throw std::invalid_argument("q_inverse: v must be >= 0");
    if (eta < 0.0) throw std::invalid_argument("q_inverse: eta must be >= 0");
    if (v == 0.0) return 0.0;
    if (eta == 0.0) return v;

    // eta^2 s^3 + s - v = 0, already depressed: s^3 + p s - v/eta^2 = 0, p > 0
    const double e2 = eta * eta;
    const double p = 1.0 / e2;
    const double qq = -v / e2;
    const double sq = std::sqrt(qq * qq / 4.0 + p * p * p / 27.0);
    const double u = std::cbrt(-qq / 2.0 + sq);
    double s = u - p / (3.0 * u);

    // Newton on g(s) - v; g' >= 1 so this is well-conditioned
    for (int it = 0; it < 6; ++it) {
        const double f = s + e2 * s * s * s - v;
        if (std::fabs(f) <= 1e-14 * v) break;
        s -= f / (1.0 + 3.0 * e2 * s * s);
    }
    return std::max(s, 0.0);
}

}  // namespace fob
