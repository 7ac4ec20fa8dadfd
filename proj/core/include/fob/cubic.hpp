#pragma once

#include <stdexcept>

namespace fob {

/// Coefficients of c3*x^3 + c2*x^2 + c1*x + c0, c3 != 0.
struct CubicCoeffs {
    double c3, c2, c1, c0;

    double eval(double x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
    double deriv(double x) const { return (3.0 * c3 * x + 2.0 * c2) * x + c1; }
};

struct NoPositiveRoot : std::runtime_error {
    NoPositiveRoot() : std::runtime_error("cubic has no positive root") {}
};
struct RootNotConverged : std::runtime_error {
    RootNotConverged() : std::runtime_error("cubic root polish did not converge") {}
};

/// Unique positive root of a cubic with f(0) <= 0 and a single sign change
/// on (0, inf). Cardano closed form followed by one Newton polish step.
double unique_positive_root(const CubicCoeffs& c);

/// q(v) = g^{-1}(v) for g(s) = s + eta^2 s^3: the unique s >= 0 with
/// s + eta^2 s^3 = v. Real Cardano branch plus Newton polish.
double q_inverse(double v, double eta);

inline double g_map(double s, double eta) { return s + eta * eta * s * s * s; }

}  // namespace fob
