#include "seclab/wfrft.hpp"

#include <cmath>
#include <stdexcept>

namespace seclab::wfrft {

namespace detail {

// Range-reduce so the trig call never sees an argument above pi/4 ulp-wise;
// the reductions 2 - r and 0.5 - r are exact, which pins the half-integer
// zeros exactly.
double cospi(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("cospi: requires finite x");
    }
    x = std::fabs(x);
    double r = std::fmod(x, 2.0);
    if (r >= 1.0) r = 2.0 - r;
    if (r < 0.25) return std::cos(M_PI * r);
    if (r <= 0.75) return std::sin(M_PI * (0.5 - r));
    return -std::cos(M_PI * (1.0 - r));
}

double sinpi(double x) {
    if (!std::isfinite(x)) {
        throw std::domain_error("sinpi: requires finite x");
    }
    double s = 1.0;
    if (x < 0.0) {
        s = -1.0;
        x = -x;
    }
    double r = std::fmod(x, 2.0);
    if (r >= 1.0) {
        r -= 1.0;
        s = -s;
    }
    if (r > 0.5) r = 1.0 - r;
    if (r < 0.25) return s * std::sin(M_PI * r);
    return s * std::cos(M_PI * (0.5 - r));
}

}  // namespace detail

double reduce_order(double alpha) {
    if (!std::isfinite(alpha)) {
        throw std::domain_error("reduce_order: requires a finite order");
    }
    double r = std::fmod(alpha, 4.0);
    if (r < 0.0) r += 4.0;
    if (r >= 4.0) r = 0.0;
    return r;
}

double MismatchOrder::delta() const {
    return reduce_order(std::fabs(alpha - beta));
}

WeightVector weights(double alpha) {
    WeightVector wv;
    wv.order = reduce_order(alpha);
    for (int p = 0; p < 4; ++p) {
        // w_p = cos(t/2) cos(t) e^{i 3t/2} with t = pi (alpha - p) / 2
        const double d = wv.order - p;
        const double mag = detail::cospi(0.25 * d) * detail::cospi(0.5 * d);
        wv.w[p] = {mag * detail::cospi(0.75 * d), mag * detail::sinpi(0.75 * d)};
    }
    return wv;
}

namespace {

void fft_radix2(Signal& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sgn * 2.0 * M_PI / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const auto w = std::polar(1.0, ang * static_cast<double>(j));
                const auto u = a[i + j];
                const auto v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
}

Signal dft_direct(const Signal& x, bool inverse) {
    const std::size_t n = x.size();
    Signal out(n);
    const double sgn = inverse ? 1.0 : -1.0;
    const double step = sgn * 2.0 * M_PI / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            // reduce n*k mod N before forming the angle
            acc += x[m] * std::polar(1.0, step * static_cast<double>((m * k) % n));
        }
        out[k] = acc;
    }
    return out;
}

Signal dft_core(const Signal& x, bool inverse) {
    const std::size_t n = x.size();
    if (n == 0) throw std::domain_error("dft: empty signal");
    Signal out;
    if ((n & (n - 1)) == 0) {
        out = x;
        fft_radix2(out, inverse);
    } else {
        out = dft_direct(x, inverse);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : out) v *= scale;
    return out;
}

}  // namespace

Signal dft(const Signal& x) { return dft_core(x, false); }

Signal idft(const Signal& x) { return dft_core(x, true); }

std::array<Signal, 4> base_states(const Signal& x) {
    if (x.empty()) throw std::domain_error("base_states: empty signal");
    const std::size_t n = x.size();
    std::array<Signal, 4> s;
    s[0] = x;
    s[1] = dft(x);
    s[2].resize(n);
    s[3].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = (n - i) % n;
        s[2][i] = x[r];
        s[3][i] = s[1][r];
    }
    return s;
}

Signal wfrft(const Signal& x, double alpha) {
    const auto wv = weights(alpha);
    const auto st = base_states(x);
    const std::size_t n = x.size();
    Signal out(n, {0.0, 0.0});
    for (int p = 0; p < 4; ++p) {
        // skipping exact-zero weights keeps integer orders bit-exact
        if (wv.w[p] == std::complex<double>{0.0, 0.0}) continue;
        for (std::size_t i = 0; i < n; ++i) out[i] += wv.w[p] * st[p][i];
    }
    return out;
}

Signal mismatch_output(const Signal& x, const MismatchOrder& orders) {
    return wfrft(x, orders.alpha - orders.beta);
}

std::pair<double, double> mismatch_power_split(double delta_alpha) {
    const auto wv = weights(delta_alpha);
    const double u = std::norm(wv.w[0]);
    return {u, 1.0 - u};
}

}  // namespace seclab::wfrft
