#pragma once

#include <functional>

#include "fob/quadrature.hpp"

namespace fob {

struct ScalarOpt {
    double arg = 0.0;
    double value = 0.0;
    int iterations = 0;
    bool at_boundary = false;  // bracket endpoint achieved the optimum
};

/// Bounded scalar minimization: golden section with parabolic acceleration
/// (Brent). f must be unimodal on [lo, hi]; callers bracket via a grid
/// pre-scan first.
ScalarOpt minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec = {});

ScalarOpt maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec = {});

/// Evaluates f on an n-point log-spaced grid of [lo, hi] and returns the
/// bracket [grid[i-1], grid[i+1]] around the best point (minimization).
/// best_index reports whether the scan minimum sat on an edge.
struct GridScan {
    double lo = 0.0, hi = 0.0;
    double best_arg = 0.0, best_value = 0.0;
    bool on_edge = false;
};
GridScan log_grid_scan_min(const std::function<double(double)>& f, double lo, double hi, int n = 64);
GridScan log_grid_scan_max(const std::function<double(double)>& f, double lo, double hi, int n = 64);

/// Nelder-Mead simplex in 2 dimensions. Returns best vertex.
struct Simplex2Result {
    double x = 0.0, y = 0.0, value = 0.0;
    int iterations = 0;
    bool converged = false;
};
Simplex2Result minimize_simplex2(const std::function<double(double, double)>& f, double x0,
                                 double y0, double step, double tol, int max_iter = 400);

}  // namespace fob
