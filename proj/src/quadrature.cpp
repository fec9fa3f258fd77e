#include "seclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace seclab::quad {
namespace {

// Gauss-Legendre nodes/weights on [-1, 1], computed once via Newton on the
// Legendre recurrence.  Symmetric: only the lower half is iterated.
struct GlRule {
    std::vector<double> x;
    std::vector<double> w;
    explicit GlRule(int n) : x(n), w(n) {
        const double eps = 1e-15;
        int half = (n + 1) / 2;
        for (int i = 0; i < half; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (z * p0 - p1) / (z * z - 1.0);
                double z1 = z;
                z = z1 - p0 / pp;
                if (std::abs(z - z1) <= eps) break;
            }
            x[i] = -z;
            x[n - 1 - i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
            w[n - 1 - i] = w[i];
        }
    }
};

const GlRule& rule15() {
    static const GlRule r(15);
    return r;
}
const GlRule& rule7() {
    static const GlRule r(7);
    return r;
}

struct Panel {
    double a, b;
    double value;  // 15-point estimate
    double error;  // |GL15 - GL7|
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const GlRule& r15 = rule15();
    const GlRule& r7 = rule7();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s15 = 0.0;
    for (int i = 0; i < 15; ++i) s15 += r15.w[i] * f(mid + half * r15.x[i]);
    double s7 = 0.0;
    for (int i = 0; i < 7; ++i) s7 += r7.w[i] * f(mid + half * r7.x[i]);
    s15 *= half;
    s7 *= half;
    return Panel{a, b, s15, std::abs(s15 - s7)};
}

}  // namespace

double Result::checked(const char* what) const {
    if (!converged) {
        throw std::runtime_error(std::string(what) +
                                 ": quadrature did not converge (estimate " +
                                 std::to_string(value) + ", error " +
                                 std::to_string(error) + ")");
    }
    return value;
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt) {
    Result res;
    if (a == b) return res;

    std::priority_queue<Panel> heap;
    // Seed with a few panels so a feature hiding in one half is not missed by
    // a single coarse estimate.
    const int seed_panels = 8;
    double total = 0.0, err = 0.0;
    for (int i = 0; i < seed_panels; ++i) {
        double pa = a + (b - a) * i / seed_panels;
        double pb = a + (b - a) * (i + 1) / seed_panels;
        Panel p = eval_panel(f, pa, pb);
        total += p.value;
        err += p.error;
        heap.push(p);
    }
    res.evals = seed_panels * 22;

    long panels = seed_panels;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (panels >= opt.max_panels) {
            res.converged = false;
            break;
        }
        Panel worst = heap.top();
        heap.pop();
        total -= worst.value;
        err -= worst.error;
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating point resolution; accept its estimate.
            total += worst.value;
            err += worst.error;
            if (heap.empty() || heap.top().error <= 0.0) break;
            continue;
        }
        Panel left = eval_panel(f, worst.a, mid);
        Panel right = eval_panel(f, mid, worst.b);
        total += left.value + right.value;
        err += left.error + right.error;
        heap.push(left);
        heap.push(right);
        panels += 1;
        res.evals += 44;
    }
    res.value = total;
    res.error = err;
    return res;
}

Result integrate_semi_inf(const std::function<double(double)>& f, double scale,
                          const Options& opt) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::domain_error("integrate_semi_inf: scale must be positive");
    }
    auto g = [&f, scale](double u) {
        double om = 1.0 - u;
        double y = scale * u / om;
        double jac = scale / (om * om);
        double v = f(y);
        return v * jac;
    };
    // Stop just short of u = 1; the Jacobian would overflow at the endpoint
    // and any integrand with a finite integral is negligible there.
    return integrate(g, 0.0, 1.0 - 1e-14, opt);
}

}  // namespace seclab::quad
