// Special functions used by the fading and secrecy models: Bessel J0/I0,
// the exponential integral, the upper incomplete gamma, and the first-order
// Marcum Q function.
#pragma once

namespace seclab::specfun {

// Bessel function of the first kind, order zero.  Power series for small
// arguments, Hankel asymptotic expansion for large ones.
double bessel_j0(double x);

// Modified Bessel function of the first kind, order zero.  Throws
// std::range_error once e^x overflows a double; use bessel_i0_scaled then.
double bessel_i0(double x);

// e^{-|x|} I0(x): bounded for all real x.
double bessel_i0_scaled(double x);

// Exponential integral E1(x) for x > 0.
double exp_e1(double x);

// e^x E1(x): decays like 1/x instead of e^{-x}/x, usable for large x.
double exp_e1_scaled(double x);

// Ei(-x) = -E1(x) for x > 0; the form most signal-model references print.
double exp_ei_neg(double x);

// Regularized upper incomplete gamma Q(a, z) = Gamma(a, z) / Gamma(a),
// a > 0, z >= 0.
double gamma_q(double a, double z);

// Upper incomplete gamma of order 1: Gamma(1, z) = e^{-z}.
double upper_gamma_1(double z);

// First-order Marcum Q function Q1(m, n) = P(X > n), X Rician with
// noncentrality m and unit-variance components; m, n >= 0.
double marcum_q1(double m, double n);

}  // namespace seclab::specfun
