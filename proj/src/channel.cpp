#include "seclab/channel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "seclab/specfun.hpp"
#include "seclab/wfrft.hpp"

namespace seclab::channel {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double j0_correlation(double arg, const char* what) {
    if (!std::isfinite(arg) || arg < 0.0) {
        std::ostringstream os;
        os << what << ": requires a finite nonnegative argument";
        throw std::domain_error(os.str());
    }
    const double j = specfun::bessel_j0(2.0 * M_PI * arg);
    if (j < 0.0 || j >= 1.0) {
        std::ostringstream os;
        os << what << ": J0(2 pi x) = " << j
           << " is outside the model's correlation range [0, 1)";
        throw std::domain_error(os.str());
    }
    return j;
}

}  // namespace

SystemParams params_from_db(double p_dbm, double sigma_m2_db,
                            double sigma_e2_db, double n_m_dbm, double n_e_dbm,
                            double rho, int n_a, int n_b, double delta_alpha) {
    SystemParams sp;
    sp.p_mw = db_to_linear(p_dbm);
    sp.sigma_m2 = db_to_linear(sigma_m2_db);
    sp.sigma_e2 = db_to_linear(sigma_e2_db);
    // Noise figures quoted in dBm enter the link budget as watts while the
    // transmit power stays in milliwatts; the 30 dB offset reproduces the
    // reference operating point (20 dBm, -95 dB, -100 dBm -> SNR 10^5.5).
    sp.n_m_mw = db_to_linear(n_m_dbm - 30.0);
    sp.n_e_mw = db_to_linear(n_e_dbm - 30.0);
    sp.rho = rho;
    sp.n_a = n_a;
    sp.n_b = n_b;
    sp.delta_alpha = wfrft::reduce_order(delta_alpha);
    validate(sp);
    return sp;
}

void validate(const SystemParams& sp) {
    const double powers[] = {sp.p_mw, sp.sigma_m2, sp.sigma_e2, sp.n_m_mw,
                             sp.n_e_mw};
    for (double v : powers) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::domain_error(
                "SystemParams: powers and gains must be positive and finite");
        }
    }
    if (!(sp.rho >= 0.0 && sp.rho < 1.0)) {
        throw std::domain_error("SystemParams: rho must lie in [0, 1)");
    }
    if (sp.n_a < 1 || sp.n_b < 1) {
        throw std::domain_error("SystemParams: antenna counts must be >= 1");
    }
    if (!(sp.delta_alpha >= 0.0 && sp.delta_alpha < 4.0)) {
        throw std::domain_error("SystemParams: delta_alpha must lie in [0, 4)");
    }
}

double rho_from_weights(const CorrWeights& w) {
    if (!(w.eta >= 0.0 && w.eta < 1.0) || !(w.lambda >= 0.0 && w.lambda < 1.0)) {
        throw std::domain_error("rho_from_weights: weights must lie in [0, 1)");
    }
    return w.eta * w.lambda;
}

CorrWeights corr_weights(double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw std::domain_error("corr_weights: rho must lie in [0, 1)");
    }
    const double r = std::sqrt(rho);
    return {r, r};
}

double rho_from_physical(double fd_tau) {
    return j0_correlation(fd_tau, "rho_from_physical");
}

double rho_from_spacing(double d_over_wavelength) {
    return j0_correlation(d_over_wavelength, "rho_from_spacing");
}

ChannelDraw sample_pair(const SystemParams& sp, const CorrWeights& w,
                        rng::NormalStream& stream) {
    if (std::fabs(rho_from_weights(w) - sp.rho) > 1e-12) {
        throw std::domain_error(
            "sample_pair: weights are inconsistent with params.rho");
    }
    const double xm = stream.next();
    const double ym = stream.next();
    const double xe = stream.next();
    const double ye = stream.next();
    const double x0 = stream.next();
    const double y0 = stream.next();
    const double tm = std::sqrt(1.0 - w.eta * w.eta);
    const double te = std::sqrt(1.0 - w.lambda * w.lambda);
    const double sm = std::sqrt(0.5 * sp.sigma_m2);  // per-component variance 1/2
    const double se = std::sqrt(0.5 * sp.sigma_e2);
    return {{sm * (tm * xm + w.eta * x0), sm * (tm * ym + w.eta * y0)},
            {se * (te * xe + w.lambda * x0), se * (te * ye + w.lambda * y0)}};
}

double eve_snr_degraded(double p_mw, double h_e2, double n_e_mw, double w02) {
    const double sig = p_mw * h_e2;
    return w02 * sig / ((1.0 - w02) * sig + n_e_mw);
}

SnrSample snr_pair(const ChannelDraw& draw, const SystemParams& sp) {
    const double w02 = wfrft::mismatch_power_split(sp.delta_alpha).first;
    return {sp.p_mw * std::norm(draw.h_m) / sp.n_m_mw,
            eve_snr_degraded(sp.p_mw, std::norm(draw.h_e), sp.n_e_mw, w02)};
}

MeanSnrs mean_snrs(const SystemParams& sp) {
    validate(sp);
    MeanSnrs ms;
    ms.gamma_m = sp.p_mw * sp.sigma_m2 / sp.n_m_mw;
    ms.a = sp.p_mw * sp.sigma_e2 / sp.n_e_mw;
    ms.w02 = wfrft::mismatch_power_split(sp.delta_alpha).first;
    if (ms.w02 >= 1.0) {
        // matched orders: no degradation, and 1/(a - b) would be singular
        ms.gamma_e = ms.a;
    } else if (ms.w02 <= 0.0) {
        // integer mismatch: the matched component vanishes entirely
        ms.gamma_e = 0.0;
    } else {
        const double b = ms.w02 * ms.a;
        const double c = 1.0 / (ms.a - b);
        ms.gamma_e = b * c * detail::residual_mean_factor(c);
    }
    return ms;
}

namespace detail {

double residual_mean_factor(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::domain_error("residual_mean_factor: requires finite c > 0");
    }
    if (c < 1.0) {
        return 1.0 - c * specfun::exp_e1_scaled(c);
    }
    // e^c E1(c) = 1 / (c + 1 - K) with the tail
    //   K = 1^2 / (c + 3 - 2^2 / (c + 5 - 3^2 / (c + 7 - ...)))
    // evaluated by the Lentz recurrence; then g = (1 - K) / (c + 1 - K),
    // which stays well conditioned as c grows (g -> 1/c).
    const double kTiny = 1e-300;
    double f = kTiny;
    double cc = f;
    double dd = 0.0;
    for (int j = 1; j <= 500; ++j) {
        const double aj = (j == 1) ? 1.0 : -static_cast<double>(j) * j;
        const double bj = c + 1.0 + 2.0 * j;
        dd = bj + aj * dd;
        if (std::fabs(dd) < kTiny) dd = kTiny;
        dd = 1.0 / dd;
        cc = bj + aj / cc;
        if (std::fabs(cc) < kTiny) cc = kTiny;
        const double del = cc * dd;
        f *= del;
        if (std::fabs(del - 1.0) < 1e-16) {
            return (1.0 - f) / (c + 1.0 - f);
        }
    }
    throw std::runtime_error(
        "residual_mean_factor: continued fraction did not converge");
}

double mean_eve_snr_sign_variant(double a, double w02) {
    if (w02 >= 1.0) return a;
    if (w02 <= 0.0) return 0.0;
    const double b = w02 * a;
    const double c = 1.0 / (a - b);
    return b * c * (1.0 + c * specfun::exp_e1_scaled(c));
}

}  // namespace detail

}  // namespace seclab::channel
