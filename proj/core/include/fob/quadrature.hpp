#pragma once

#include <functional>
#include <vector>

namespace fob {

/// Tolerance bundle shared by every entropy/expectation integral.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_nodes = 500000;
    double tail_cutoff_sigmas = 12.0;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    int nodes_used = 0;
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Legendre on [a, b]. Panels with the worst error estimate
/// are bisected until the summed estimate meets max(abs_tol, rel_tol*|I|)
/// or the node budget runs out (reported via converged=false).
QuadResult integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec = {});

/// Same, but with caller-supplied initial panel boundaries (sorted).
QuadResult integrate(const RealFn& f, const std::vector<double>& breakpoints,
                     const QuadratureSpec& spec = {});

/// Integral over [0, inf) of a function decaying on the given scale:
/// truncated at tail_cutoff_sigmas * decay_scale, with geometric initial
/// panels so narrow structure near zero is found.
QuadResult integrate_half_line(const RealFn& f, double decay_scale,
                               const QuadratureSpec& spec = {});

}  // namespace fob
