#include "fob/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace fob {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) : x(n), w(n) {
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0);
                const double z1 = z;
                z = z1 - p1 / pp;
                if (std::fabs(z - z1) < 1e-15) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
    }
};

const GaussRule& rule7() {
    static const GaussRule r(7);
    return r;
}
const GaussRule& rule15() {
    static const GaussRule r(15);
    return r;
}

struct Panel {
    double a, b;
    double value;   // G15
    double error;   // |G15 - G7|
};

Panel eval_panel(const RealFn& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double g7 = 0.0, g15 = 0.0;
    const auto& r7 = rule7();
    const auto& r15 = rule15();
    for (int i = 0; i < 7; ++i) g7 += r7.w[i] * f(c + h * r7.x[i]);
    for (int i = 0; i < 15; ++i) g15 += r15.w[i] * f(c + h * r15.x[i]);
    g7 *= h;
    g15 *= h;
    return {a, b, g15, std::fabs(g15 - g7)};
}

struct ByError {
    bool operator()(const Panel& p, const Panel& q) const { return p.error < q.error; }
};

}  // namespace

QuadResult integrate(const RealFn& f, const std::vector<double>& breakpoints,
                     const QuadratureSpec& spec) {
    if (breakpoints.size() < 2) throw std::invalid_argument("integrate: need >= 2 breakpoints");

    std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
    double total = 0.0, toterr = 0.0;
    int nodes = 0;
    for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Panel p = eval_panel(f, breakpoints[i], breakpoints[i + 1]);
        nodes += 22;
        total += p.value;
        toterr += p.error;
        heap.push(p);
    }

    auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };

    while (toterr > tol() && nodes + 44 <= spec.max_nodes && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) continue;  // panel at machine resolution
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        nodes += 44;
        total += left.value + right.value - worst.value;
        toterr += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    QuadResult res;
    res.value = total;
    res.error = toterr;
    res.converged = toterr <= tol();
    res.nodes_used = nodes;
    return res;
}

QuadResult integrate(const RealFn& f, double a, double b, const QuadratureSpec& spec) {
    return integrate(f, std::vector<double>{a, b}, spec);
}

QuadResult integrate_half_line(const RealFn& f, double decay_scale, const QuadratureSpec& spec) {
    if (!(decay_scale > 0.0)) throw std::invalid_argument("integrate_half_line: decay_scale must be > 0");
    const double upper = spec.tail_cutoff_sigmas * decay_scale;
    std::vector<double> bp{0.0};
    for (double t = upper * std::pow(2.0, -16); t < upper; t *= 2.0) bp.push_back(t);
    bp.push_back(upper);
    return integrate(f, bp, spec);
}

}  // namespace fob
