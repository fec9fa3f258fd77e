#pragma once

#include <string>
#include <vector>

#include "seclab/channel.hpp"

namespace seclab::secrecy {

// Precomputed pieces of the selection-diversity secrecy closed form.
struct ClosedFormConstants {
    int n = 1;            // selectable antenna pairs
    double gamma_m = 0.0;
    double gamma_e = 0.0;  // effective eavesdropper mean after degradation
    double rho = 0.0;
    double a_coef = 0.0;   // sqrt(2 / ((1 - rho^2) gamma_m))
    double b_coef = 0.0;   // sqrt(2 / ((1 - rho^2) gamma_e)); 0 when degenerate
    bool eve_degenerate = false;  // gamma_e == 0 (integer order mismatch)
    std::vector<double> theta;    // k (1 - rho^2) + 1
    std::vector<double> a_k;      // rho^2 / theta_k
    std::vector<double> binom;    // C(n-1, k)
};

ClosedFormConstants closed_form_constants(const channel::SystemParams& sp);

struct Diagnostics {
    std::vector<double> term_magnitudes;  // |contribution| per k, nats
    double max_term = 0.0;                // nats
    double cancellation = 0.0;            // max_term / |sum|
    double err_estimate = 0.0;            // absolute, bits
    long evals = 0;
    std::string note;
};

struct AscResult {
    double bits = 0.0;
    std::string method;  // "closed_form" | "quadrature" | "monte_carlo"
    Diagnostics diag;
};

// Density of the selected main-link SNR (best of N i.i.d. exponentials).
double pdf_bob_as(double z, const channel::SystemParams& sp);

// Marginal eavesdropper SNR density under the exponential mean model.
// Throws std::domain_error when the degraded mean is zero (point mass).
double pdf_eve(double y, const channel::SystemParams& sp);

// Joint density of (selected main SNR, paired eavesdropper SNR).
double joint_pdf(double z, double y, const channel::SystemParams& sp);

// P(eavesdropper SNR > y | selected main SNR = z) under the analytic model.
double eve_tail_given_bob(double y, double z, const channel::SystemParams& sp);

// max(0, log2(1 + gamma_m) - log2(1 + gamma_e))
double instant_secrecy(double gamma_m, double gamma_e);

// Average secrecy capacity, bits/s/Hz.
AscResult asc_closed_form(const channel::SystemParams& sp);

// Independent check: nested quadrature of the secrecy rate against the
// joint density.  Slower; relative error target 1e-6.
AscResult asc_quadrature(const channel::SystemParams& sp);

namespace detail {
// Per-k bracket of the alternating sum, nats.  `evals` (optional) collects
// quadrature point counts.
double closed_form_term(const ClosedFormConstants& cf, int k, long* evals);

// Same bracket assembled through the complementary Marcum identity
// Q1(b, a) = 1 - Q1(a, b) + e^{-(a^2+b^2)/2} I0(ab); the Bessel cross terms
// cancel exactly, which the unit tests verify numerically.
double closed_form_term_alt(const ClosedFormConstants& cf, int k, long* evals);
}  // namespace detail

}  // namespace seclab::secrecy
