#include "seclab/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "seclab/quadrature.hpp"

namespace seclab::specfun {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// e^x E1(x) via the Lentz continued fraction
//   E1(x) = e^{-x} / (x + 1 - 1^2 / (x + 3 - 2^2 / (x + 5 - ...)))
// Accurate for x >= 1; below that the series form is used instead.
double e1_cf_scaled(double x) {
    const double kFpMin = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 400; ++i) {
        double a = -static_cast<double>(i) * i;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + a / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h;
    }
    throw std::runtime_error("exp_e1: continued fraction did not converge");
}

// E1 for 0 < x < 1: -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
double e1_series(double x) {
    double p = 1.0;  // (-x)^k / k!
    double sum = 0.0;
    for (int k = 1; k <= 80; ++k) {
        p *= -x / k;
        double term = -p / k;
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1.0)) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// Poisson-mixture form of the Marcum Q:
//   Q1(m, n) = sum_k pois(k; m^2/2) Q(k+1, n^2/2)
// started at the Poisson mode and expanded in both directions so the first
// probe never underflows.  All terms are nonnegative.
double marcum_series(double x, double y) {
    const long k0 = static_cast<long>(std::floor(x));
    const double p0 =
        std::exp(k0 * std::log(x) - x - std::lgamma(k0 + 1.0));
    const double g0 = gamma_q(k0 + 1.0, y);

    double sum = p0 * g0;
    long used = 0;
    const long cap = 10000;

    // Upward from the mode.  G_{k+1} = G_k + pois(k+1; y).
    {
        double p = p0;
        double g = g0;
        double q = std::exp((k0 + 1.0) * std::log(y) - y -
                            std::lgamma(k0 + 2.0));
        double prev_term = std::numeric_limits<double>::max();
        for (long k = k0; used < cap; ++k, ++used) {
            p *= x / (k + 1.0);
            g += q;
            if (g > 1.0) g = 1.0;
            double term = p * g;
            sum += term;
            q *= y / (k + 2.0);
            bool decreasing = term < prev_term;
            prev_term = term;
            if (decreasing && k + 1 > x && term <= 1e-16 * sum) break;
        }
    }

    // Downward from the mode.  G_{k-1} = G_k - pois(k; y).
    if (k0 > 0) {
        double p = p0;
        double g = g0;
        double q = std::exp(k0 * std::log(y) - y - std::lgamma(k0 + 1.0));
        for (long k = k0; k >= 1 && used < cap; --k, ++used) {
            p *= k / x;
            g -= q;
            if (g < 0.0) g = 0.0;
            q *= k / y;
            double term = p * g;
            sum += term;
            if (term <= 1e-16 * sum) break;
        }
    }

    if (used >= cap) {
        throw std::runtime_error("marcum_q1: series did not converge");
    }
    if (sum > 1.0) sum = 1.0;
    if (sum < 0.0) sum = 0.0;
    return sum;
}

// Direct quadrature of the Rician tail for arguments too large for the
// series: integrand t e^{-(t-m)^2/2} e^{-|mt|} I0(mt) concentrated near t=m.
double marcum_quadrature(double m, double n) {
    auto f = [m](double t) {
        double u = t - m;
        double e = -0.5 * u * u;
        if (e < -745.0) return 0.0;
        return t * std::exp(e) * bessel_i0_scaled(m * t);
    };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-320;
    if (n >= m) {
        double d = n - m;
        if (0.5 * d * d > 745.0) return 0.0;
        double hi = m + std::sqrt(d * d + 1560.0);
        double v = quad::integrate(f, n, hi, opt).checked("marcum_q1");
        return std::min(1.0, std::max(0.0, v));
    }
    double d = m - n;
    if (0.5 * d * d > 745.0) return 1.0;
    double lo = std::max(0.0, m - std::sqrt(d * d + 1560.0));
    double v = quad::integrate(f, lo, n, opt).checked("marcum_q1");
    return std::min(1.0, std::max(0.0, 1.0 - v));
}

}  // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("bessel_j0: requires finite x");
    }
    x = std::abs(x);
    if (x < 12.0) {
        // sum_k (-x^2/4)^k / (k!)^2
        double t = 1.0;
        double sum = 1.0;
        const double q = -0.25 * x * x;
        for (int k = 1; k <= 200; ++k) {
            t *= q / (static_cast<double>(k) * k);
            sum += t;
            if (std::abs(t) < 1e-17 * (std::abs(sum) + 1e-30)) break;
        }
        return sum;
    }
    // Hankel asymptotic expansion: J0 = sqrt(2/(pi x)) (P cos chi - Q sin chi)
    // with chi = x - pi/4 and Hankel symbols c_m = c_{m-1} (-(2m-1)^2)/(4m).
    const double u = 0.5 / x;
    double c = 1.0;
    double um = 1.0;
    double p = 1.0;
    double q = 0.0;
    double last = std::numeric_limits<double>::max();
    for (int m = 1; m <= 24; ++m) {
        c *= -static_cast<double>((2 * m - 1) * (2 * m - 1)) / (4.0 * m);
        um *= u;
        double t = c * um;
        double mag = std::abs(t);
        if (mag >= last) break;  // asymptotic tail started to grow
        last = mag;
        int k = (m % 2 == 0) ? m / 2 : (m - 1) / 2;
        double s = (k % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 1) {
            q += s * t;
        } else {
            p += s * t;
        }
        if (mag < 1e-17) break;
    }
    const double chi = x - 0.25 * M_PI;
    return std::sqrt(2.0 / (M_PI * x)) *
           (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_i0_scaled(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("bessel_i0_scaled: requires finite x");
    }
    x = std::abs(x);
    if (x <= 20.0) {
        double t = 1.0;
        double sum = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k <= 120; ++k) {
            t *= q / (static_cast<double>(k) * k);
            sum += t;
            if (t < 1e-17 * sum) break;
        }
        return sum * std::exp(-x);
    }
    // I0(x) ~ e^x / sqrt(2 pi x) * sum_k a_k, a_k = a_{k-1} (2k-1)^2/(8kx)
    double t = 1.0;
    double sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k <= 40; ++k) {
        t *= static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
        if (t >= prev) break;
        prev = t;
        sum += t;
        if (t < 1e-17 * sum) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

double bessel_i0(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("bessel_i0: requires finite x");
    }
    x = std::abs(x);
    if (x <= 20.0) {
        double t = 1.0;
        double sum = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k <= 120; ++k) {
            t *= q / (static_cast<double>(k) * k);
            sum += t;
            if (t < 1e-17 * sum) break;
        }
        return sum;
    }
    if (x > 713.0) {
        throw std::range_error(
            "bessel_i0: result overflows for x > 713; use bessel_i0_scaled");
    }
    double s = bessel_i0_scaled(x);
    if (x <= 709.0) return std::exp(x) * s;
    // e^x alone overflows here even though e^x * s does not.
    return std::exp(x + std::log(s));
}

double exp_e1(double x) {
    if (std::isnan(x) || x <= 0.0) {
        throw std::domain_error("exp_e1: requires x > 0");
    }
    if (std::isinf(x)) return 0.0;
    if (x < 1.0) return e1_series(x);
    return std::exp(-x) * e1_cf_scaled(x);
}

double exp_e1_scaled(double x) {
    if (std::isnan(x) || x <= 0.0) {
        throw std::domain_error("exp_e1_scaled: requires x > 0");
    }
    if (std::isinf(x)) return 0.0;
    if (x < 1.0) return std::exp(x) * e1_series(x);
    return e1_cf_scaled(x);
}

double exp_ei_neg(double x) { return -exp_e1(x); }

double gamma_q(double a, double z) {
    if (!(a > 0.0) || !std::isfinite(a) || std::isnan(z) || z < 0.0) {
        throw std::domain_error("gamma_q: requires a > 0 finite and z >= 0");
    }
    if (z == 0.0) return 1.0;
    if (std::isinf(z)) return 0.0;
    const double lg = std::lgamma(a);
    const double pref = std::exp(-z + a * std::log(z) - lg);
    if (z < a + 1.0) {
        // P by series, Q = 1 - P
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        // near z ~ a the series needs O(sqrt(a)) terms; a can reach ~1.2e5
        for (int i = 0; i < 4000; ++i) {
            ap += 1.0;
            del *= z / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-16) {
                return 1.0 - pref * sum;
            }
        }
        throw std::runtime_error("gamma_q: series did not converge");
    }
    // Q by Lentz continued fraction
    const double kFpMin = 1e-300;
    double b = z + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 4000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return pref * h;
    }
    throw std::runtime_error("gamma_q: continued fraction did not converge");
}

double upper_gamma_1(double z) {
    if (!std::isfinite(z)) {
        throw std::domain_error("upper_gamma_1: requires finite z");
    }
    return std::exp(-z);
}

double marcum_q1(double m, double n) {
    if (!(m >= 0.0) || !(n >= 0.0) || !std::isfinite(m) || !std::isfinite(n)) {
        throw std::domain_error("marcum_q1: requires finite m, n >= 0");
    }
    if (n == 0.0) return 1.0;
    const double y = 0.5 * n * n;
    if (m == 0.0) return std::exp(-y);
    const double x = 0.5 * m * m;
    if (std::sqrt(x) + std::sqrt(y) <= 350.0) return marcum_series(x, y);
    return marcum_quadrature(m, n);
}

}  // namespace seclab::specfun
