// Adaptive Gauss-Legendre quadrature on finite and semi-infinite intervals.
#pragma once

#include <functional>

namespace seclab::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
    long evals = 0;
    bool converged = true;

    // value, or a descriptive failure if the error target was missed badly
    double checked(const char* what) const;
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    long max_panels = 20000;
};

// Integrate f over [a, b]. Panels are refined greedily until the summed
// per-panel error estimate meets max(abs_tol, rel_tol * |value|).
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opt = {});

// Integrate f over [0, inf) through the map y = scale * u / (1 - u).
// scale should roughly match the decay length of f.
Result integrate_semi_inf(const std::function<double(double)>& f, double scale,
                          const Options& opt = {});

}  // namespace seclab::quad
