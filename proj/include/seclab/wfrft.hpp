#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

namespace seclab::wfrft {

using Signal = std::vector<std::complex<double>>;

// Coefficients of the four base states {x, Fx, F^2 x, F^3 x} for one order.
struct WeightVector {
    double order = 0.0;  // reduced into [0, 4)
    std::array<std::complex<double>, 4> w{};
};

// A transmit order and the demodulator's (possibly wrong) guess.
struct MismatchOrder {
    double alpha = 0.0;
    double beta = 0.0;
    double delta() const;  // |alpha - beta| reduced into [0, 4)
};

// Reduce a transform order into [0, 4).  Throws on non-finite input.
double reduce_order(double alpha);

// Weight vector of the order-alpha transform.  At integer orders the three
// off weights are exactly zero, so integer orders reproduce the base states
// bit for bit.
WeightVector weights(double alpha);

// Unitary DFT, kernel e^{-i 2 pi n k / N} / sqrt(N).  Radix-2 FFT when the
// length is a power of two, direct evaluation otherwise.  Throws on an
// empty signal.
Signal dft(const Signal& x);
Signal idft(const Signal& x);

// {x, Fx, F^2 x, F^3 x}; F^2 is the index reversal n -> (N - n) mod N.
std::array<Signal, 4> base_states(const Signal& x);

// Four-component weighted fractional transform of order alpha.
Signal wfrft(const Signal& x, double alpha);

// Signal a mismatched receiver recovers: transform by alpha, then invert
// with beta, i.e. a residual transform of order alpha - beta.
Signal mismatch_output(const Signal& x, const MismatchOrder& orders);

// (matched power fraction |w0|^2, interference fraction 1 - |w0|^2) of a
// residual transform of order delta_alpha.
std::pair<double, double> mismatch_power_split(double delta_alpha);

namespace detail {
// cos(pi x) and sin(pi x) with exact values at half-integer x; the weight
// zeros at integer orders depend on this.
double cospi(double x);
double sinpi(double x);
}  // namespace detail

}  // namespace seclab::wfrft
