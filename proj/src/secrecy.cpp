#include "seclab/secrecy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "seclab/quadrature.hpp"
#include "seclab/specfun.hpp"

namespace seclab::secrecy {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145817657;

struct Model {
    int n = 1;
    double gm = 0.0;
    double ge = 0.0;
    double rho = 0.0;
};

Model model_of(const channel::SystemParams& sp) {
    channel::validate(sp);
    const auto ms = channel::mean_snrs(sp);
    return {sp.pairs(), ms.gamma_m, ms.gamma_e, sp.rho};
}

double pdf_bob_impl(const Model& m, double z) {
    if (z < 0.0) return 0.0;
    const double u = std::exp(-z / m.gm);
    return (m.n / m.gm) * u * std::pow(1.0 - u, m.n - 1);
}

// Density of the eavesdropper SNR given a selected main SNR of z.  The pair
// follows a bivariate exponential; in Rician coordinates u = sqrt(z/gm),
// v = sqrt(y/ge) the kernel is exp(-(rho u - v)^2/(1-rho^2)) I0-scaled.
double cond_pdf_impl(const Model& m, double z, double y) {
    if (y < 0.0 || z < 0.0) return 0.0;
    const double om = 1.0 - m.rho * m.rho;
    const double u = std::sqrt(z / m.gm);
    const double v = std::sqrt(y / m.ge);
    const double d = m.rho * u - v;
    const double w = 2.0 * m.rho * u * v / om;
    return std::exp(-d * d / om) * specfun::bessel_i0_scaled(w) / (m.ge * om);
}

double joint_pdf_impl(const Model& m, double z, double y) {
    if (z < 0.0 || y < 0.0) return 0.0;
    const double u = std::exp(-z / m.gm);
    return m.n * std::pow(1.0 - u, m.n - 1) * (u / m.gm) * cond_pdf_impl(m, z, y);
}

std::vector<double> binomial_row(int n) {
    // row n of Pascal's triangle; exact in double for the sizes used here
    std::vector<double> row(n + 1, 1.0);
    for (int k = 1; k <= n; ++k) {
        row[k] = row[k - 1] * (n - k + 1) / k;
    }
    return row;
}

// integral_0^inf e^{-kappa y} Q1(b sqrt(y), a sqrt(y)) / (1 + y) dy
double marcum_laplace_integral(double kappa, double b, double a, long* evals,
                               const char* what) {
    quad::Options opt;
    opt.rel_tol = 1e-10;
    opt.abs_tol = 1e-13;
    auto f = [&](double y) {
        const double e = -kappa * y;
        if (e < -745.0) return 0.0;
        const double sy = std::sqrt(y);
        return std::exp(e) * specfun::marcum_q1(b * sy, a * sy) / (1.0 + y);
    };
    // Once the threshold argument outgrows the noncentrality the Q1 factor
    // itself decays at rate (a-b)^2/2; fold that into the scale hint, or a
    // grossly oversized hint hides the support from the panel subdivision.
    const double tail = a > b ? 0.5 * (a - b) * (a - b) : 0.0;
    auto r = quad::integrate_semi_inf(f, 1.0 / (kappa + tail), opt);
    if (evals) *evals += r.evals;
    return r.checked(what);
}

}  // namespace

double pdf_bob_as(double z, const channel::SystemParams& sp) {
    return pdf_bob_impl(model_of(sp), z);
}

double pdf_eve(double y, const channel::SystemParams& sp) {
    const Model m = model_of(sp);
    if (m.ge <= 0.0) {
        throw std::domain_error(
            "pdf_eve: eavesdropper SNR is a point mass at zero (integer order "
            "mismatch); no density exists");
    }
    if (y < 0.0) return 0.0;
    return std::exp(-y / m.ge) / m.ge;
}

double joint_pdf(double z, double y, const channel::SystemParams& sp) {
    const Model m = model_of(sp);
    if (m.ge <= 0.0) {
        throw std::domain_error(
            "joint_pdf: eavesdropper SNR is a point mass at zero (integer "
            "order mismatch); no joint density exists");
    }
    return joint_pdf_impl(m, z, y);
}

double eve_tail_given_bob(double y, double z, const channel::SystemParams& sp) {
    const Model m = model_of(sp);
    if (m.ge <= 0.0) {
        throw std::domain_error(
            "eve_tail_given_bob: degenerate eavesdropper SNR");
    }
    if (y <= 0.0) return 1.0;
    if (z < 0.0) throw std::domain_error("eve_tail_given_bob: requires z >= 0");
    const double om = 1.0 - m.rho * m.rho;
    const double nc = 2.0 * m.rho * m.rho * z / (om * m.gm);
    return specfun::marcum_q1(std::sqrt(nc), std::sqrt(2.0 * y / (om * m.ge)));
}

double instant_secrecy(double gamma_m, double gamma_e) {
    if (!(gamma_m >= 0.0) || !(gamma_e >= 0.0)) {
        throw std::domain_error("instant_secrecy: SNRs must be nonnegative");
    }
    const double v = (std::log1p(gamma_m) - std::log1p(gamma_e)) / kLn2;
    return v > 0.0 ? v : 0.0;
}

ClosedFormConstants closed_form_constants(const channel::SystemParams& sp) {
    const Model m = model_of(sp);
    ClosedFormConstants cf;
    cf.n = m.n;
    cf.gamma_m = m.gm;
    cf.gamma_e = m.ge;
    cf.rho = m.rho;
    const double om = 1.0 - m.rho * m.rho;
    cf.a_coef = std::sqrt(2.0 / (om * m.gm));
    cf.eve_degenerate = !(m.ge > 0.0);
    cf.b_coef = cf.eve_degenerate ? 0.0 : std::sqrt(2.0 / (om * m.ge));
    cf.theta.resize(cf.n);
    cf.a_k.resize(cf.n);
    for (int k = 0; k < cf.n; ++k) {
        cf.theta[k] = k * om + 1.0;
        cf.a_k[k] = m.rho * m.rho / cf.theta[k];
    }
    cf.binom = binomial_row(cf.n - 1);
    return cf;
}

namespace detail {

double closed_form_term(const ClosedFormConstants& cf, int k, long* evals) {
    const double kap1 = (k + 1) / cf.gamma_m;
    if (cf.eve_degenerate) {
        // no eavesdropper contribution: the bracket is the plain Laplace
        // transform of 1/(1+y)
        return specfun::exp_e1_scaled(kap1) / (k + 1);
    }
    const double kap2 = (k + 1) / (cf.theta[k] * cf.gamma_e);
    const double im =
        marcum_laplace_integral(kap1, cf.b_coef, cf.a_coef * cf.rho, evals,
                                "asc_closed_form: main-link integral");
    const double ie = marcum_laplace_integral(
        kap2, cf.b_coef * std::sqrt(cf.a_k[k]),
        cf.a_coef * std::sqrt(cf.theta[k]), evals,
        "asc_closed_form: eavesdropper integral");
    return (im - ie) / (k + 1);
}

double closed_form_term_alt(const ClosedFormConstants& cf, int k, long* evals) {
    const double kap1 = (k + 1) / cf.gamma_m;
    if (cf.eve_degenerate) {
        return specfun::exp_e1_scaled(kap1) / (k + 1);
    }
    const double kap2 = (k + 1) / (cf.theta[k] * cf.gamma_e);
    const double jm =
        marcum_laplace_integral(kap1, cf.a_coef * cf.rho, cf.b_coef, evals,
                                "asc_closed_form: swapped main integral");
    const double je = marcum_laplace_integral(
        kap2, cf.a_coef * std::sqrt(cf.theta[k]),
        cf.b_coef * std::sqrt(cf.a_k[k]), evals,
        "asc_closed_form: swapped eavesdropper integral");
    return (specfun::exp_e1_scaled(kap1) - specfun::exp_e1_scaled(kap2) - jm +
            je) /
           (k + 1);
}

}  // namespace detail

AscResult asc_closed_form(const channel::SystemParams& sp) {
    const auto cf = closed_form_constants(sp);
    AscResult res;
    res.method = "closed_form";
    res.diag.term_magnitudes.resize(cf.n);
    long evals = 0;
    long double acc = 0.0L;
    long double comp = 0.0L;
    double max_term = 0.0;
    double sum_abs = 0.0;
    for (int k = 0; k < cf.n; ++k) {
        const double bracket = detail::closed_form_term(cf, k, &evals);
        double term = cf.n * cf.binom[k] * bracket;
        if (k % 2 == 1) term = -term;
        const double mag = std::fabs(term);
        res.diag.term_magnitudes[k] = mag;
        if (mag > max_term) max_term = mag;
        sum_abs += mag;
        const long double t = acc + static_cast<long double>(term);
        if (fabsl(acc) >= fabsl(static_cast<long double>(term))) {
            comp += (acc - t) + term;
        } else {
            comp += (static_cast<long double>(term) - t) + acc;
        }
        acc = t;
    }
    double nats = static_cast<double>(acc + comp);
    if (max_term > 0.0 && std::fabs(nats) < 1e-8 * max_term) {
        std::ostringstream os;
        os << "asc_closed_form: alternating sum lost too much precision (|sum| "
           << std::fabs(nats) << " nats against a largest term of " << max_term
           << "); result would not be trustworthy";
        throw std::runtime_error(os.str());
    }
    res.diag.max_term = max_term;
    res.diag.cancellation =
        nats != 0.0 ? max_term / std::fabs(nats) : 0.0;
    res.diag.evals = evals;
    // per-term quadrature runs at 1e-10 relative, so the budget scales with
    // the absolute term sum
    res.diag.err_estimate = sum_abs * 1e-10 / kLn2;
    res.diag.note = "alternating selection-diversity sum";
    if (nats < 0.0) nats = 0.0;  // roundoff guard; the capacity is >= 0
    res.bits = nats / kLn2;
    return res;
}

AscResult asc_quadrature(const channel::SystemParams& sp) {
    const Model m = model_of(sp);
    AscResult res;
    res.method = "quadrature";
    quad::Options outer_opt;
    outer_opt.rel_tol = 1e-7;
    outer_opt.abs_tol = 1e-12;
    const double outer_scale = m.gm * (1.0 + std::log(static_cast<double>(m.n)));

    if (m.ge <= 0.0) {
        // degenerate eavesdropper: one-dimensional average over the main link
        auto f = [&](double z) {
            const double p = pdf_bob_impl(m, z);
            if (p <= 0.0) return 0.0;
            return std::log1p(z) * p;
        };
        auto r = quad::integrate_semi_inf(f, outer_scale, outer_opt);
        res.bits = r.checked("asc_quadrature") / kLn2;
        res.diag.err_estimate = r.error / kLn2;
        res.diag.evals = r.evals;
        res.diag.note = "degenerate eavesdropper; single integral";
        return res;
    }

    const double om = 1.0 - m.rho * m.rho;
    quad::Options inner_opt;
    inner_opt.rel_tol = 1e-8;
    inner_opt.abs_tol = 1e-13;
    long inner_evals = 0;

    auto inner = [&](double z) {
        if (z <= 0.0) return 0.0;
        const double lz = std::log1p(z);
        // beyond v = sqrt(nc) + 30 the conditional tail is below e^{-450}
        const double nc = 2.0 * m.rho * m.rho * z / (om * m.gm);
        const double vcap = std::sqrt(nc) + 30.0;
        const double ycap = 0.5 * om * m.ge * vcap * vcap;
        const double hi = std::min(z, ycap);
        if (!(hi > 0.0)) return 0.0;
        auto fy = [&](double y) {
            return (lz - std::log1p(y)) * cond_pdf_impl(m, z, y);
        };
        auto r = quad::integrate(fy, 0.0, hi, inner_opt);
        inner_evals += r.evals;
        if (!r.converged &&
            r.error > 1e-6 * (std::fabs(r.value) + 1e-9)) {
            std::ostringstream os;
            os << "asc_quadrature: inner integral did not converge at z = " << z
               << " (estimate " << r.value << ", error " << r.error << ")";
            throw std::runtime_error(os.str());
        }
        return r.value;
    };

    auto fz = [&](double z) {
        const double p = pdf_bob_impl(m, z);
        if (p <= 1e-300) return 0.0;
        return p * inner(z);
    };
    auto r = quad::integrate_semi_inf(fz, outer_scale, outer_opt);
    const double nats = r.checked("asc_quadrature");
    res.bits = nats > 0.0 ? nats / kLn2 : 0.0;
    res.diag.evals = r.evals + inner_evals;
    res.diag.err_estimate = (r.error + 1e-8 * std::fabs(nats)) / kLn2;
    std::ostringstream os;
    os << "nested quadrature; relative error estimate "
       << (res.bits > 0.0 ? res.diag.err_estimate / res.bits : 0.0);
    res.diag.note = os.str();
    return res;
}

}  // namespace seclab::secrecy
