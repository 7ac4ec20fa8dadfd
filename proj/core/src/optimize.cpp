#include "fob/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace fob {

ScalarOpt minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec) {
    if (!(lo < hi)) throw std::invalid_argument("minimize_scalar: empty bracket");

    // Brent's method without derivatives.
    const double gold = 0.3819660112501051;
    const double eps = std::sqrt(2.22e-16);
    double a = lo, b = hi;
    double x = a + gold * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    int iter = 0;

    for (; iter < 200; ++iter) {
        const double m = 0.5 * (a + b);
        const double tol1 = spec.rel_tol * std::fabs(x) + eps * std::max(std::fabs(m), 1.0);
        const double tol2 = 2.0 * tol1;
        if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;

        bool golden = true;
        if (std::fabs(e) > tol1) {
            // parabolic fit through x, v, w
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            const double etmp = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * etmp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
                golden = false;
            }
        }
        if (golden) {
            e = (x < m) ? b - x : a - x;
            d = gold * e;
        }
        const double u = (std::fabs(d) >= tol1) ? x + d : x + ((d > 0.0) ? tol1 : -tol1);
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }

    ScalarOpt res;
    res.arg = x;
    res.value = fx;
    res.iterations = iter;
    const double span = hi - lo;
    res.at_boundary = (x - lo) < 1e-6 * span || (hi - x) < 1e-6 * span;
    if (res.at_boundary) {
        // endpoints may genuinely achieve the minimum (monotone f)
        const double flo = f(lo), fhi = f(hi);
        if (flo < fx) { res.arg = lo; res.value = flo; }
        if (fhi < res.value) { res.arg = hi; res.value = fhi; }
    }
    return res;
}

ScalarOpt maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          const QuadratureSpec& spec) {
    ScalarOpt r = minimize_scalar([&](double t) { return -f(t); }, lo, hi, spec);
    r.value = -r.value;
    return r;
}

namespace {

GridScan log_grid_scan(const std::function<double(double)>& f, double lo, double hi, int n,
                       bool maximize) {
    if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("log_grid_scan: need 0 < lo < hi");
    if (n < 3) n = 3;
    const double llo = std::log(lo), lhi = std::log(hi);
    int best = 0;
    double best_val = 0.0;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
        double v = f(xs[i]);
        if (maximize) v = -v;
        if (i == 0 || v < best_val) {
            best_val = v;
            best = i;
        }
    }
    GridScan g;
    g.lo = xs[std::max(0, best - 1)];
    g.hi = xs[std::min(n - 1, best + 1)];
    g.best_arg = xs[best];
    g.best_value = maximize ? -best_val : best_val;
    g.on_edge = (best == 0 || best == n - 1);
    return g;
}

}  // namespace

GridScan log_grid_scan_min(const std::function<double(double)>& f, double lo, double hi, int n) {
    return log_grid_scan(f, lo, hi, n, false);
}

GridScan log_grid_scan_max(const std::function<double(double)>& f, double lo, double hi, int n) {
    return log_grid_scan(f, lo, hi, n, true);
}

Simplex2Result minimize_simplex2(const std::function<double(double, double)>& f, double x0,
                                 double y0, double step, double tol, int max_iter) {
    struct V {
        double x, y, fv;
    };
    std::array<V, 3> s{{{x0, y0, f(x0, y0)},
                        {x0 + step, y0, f(x0 + step, y0)},
                        {x0, y0 + step, f(x0, y0 + step)}}};
    auto sort_simplex = [&] {
        std::sort(s.begin(), s.end(), [](const V& a, const V& b) { return a.fv < b.fv; });
    };
    sort_simplex();

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        if (std::fabs(s[2].fv - s[0].fv) < tol &&
            std::hypot(s[2].x - s[0].x, s[2].y - s[0].y) < tol) {
            break;
        }
        const double cx = 0.5 * (s[0].x + s[1].x), cy = 0.5 * (s[0].y + s[1].y);
        auto at = [&](double t) {
            return V{cx + t * (cx - s[2].x), cy + t * (cy - s[2].y), 0.0};
        };
        V refl = at(1.0);
        refl.fv = f(refl.x, refl.y);
        if (refl.fv < s[0].fv) {
            V exp_ = at(2.0);
            exp_.fv = f(exp_.x, exp_.y);
            s[2] = (exp_.fv < refl.fv) ? exp_ : refl;
        } else if (refl.fv < s[1].fv) {
            s[2] = refl;
        } else {
            V con = at(refl.fv < s[2].fv ? 0.5 : -0.5);
            con.fv = f(con.x, con.y);
            if (con.fv < std::min(refl.fv, s[2].fv)) {
                s[2] = con;
            } else {
                // shrink toward best
                for (int i = 1; i < 3; ++i) {
                    s[i].x = s[0].x + 0.5 * (s[i].x - s[0].x);
                    s[i].y = s[0].y + 0.5 * (s[i].y - s[0].y);
                    s[i].fv = f(s[i].x, s[i].y);
                }
            }
        }
        sort_simplex();
    }

    Simplex2Result r;
    r.x = s[0].x;
    r.y = s[0].y;
    r.value = s[0].fv;
    r.iterations = iter;
    r.converged = iter < max_iter;
    return r;
}

}  // namespace fob
