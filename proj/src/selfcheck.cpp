#include "seclab/selfcheck.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "seclab/channel.hpp"
#include "seclab/montecarlo.hpp"
#include "seclab/quadrature.hpp"
#include "seclab/rng.hpp"
#include "seclab/secrecy.hpp"
#include "seclab/specfun.hpp"
#include "seclab/wfrft.hpp"

namespace seclab::selfcheck {

namespace {

using channel::SystemParams;

// Reference link budget; callers override what varies.
SystemParams base_params(double p_dbm, double rho, int na, int nb,
                         double delta_alpha) {
    return channel::params_from_db(p_dbm, -95.0, -100.0, -100.0, -100.0, rho,
                                   na, nb, delta_alpha);
}

struct Tracker {
    double worst = 0.0;
    std::string where;

    void feed(double err, const std::string& label) {
        if (err > worst || where.empty()) {
            worst = err;
            where = label;
        }
    }
};

CheckResult make(const std::string& name, bool pass, const Tracker& t,
                 double tol) {
    std::ostringstream os;
    os << "worst " << t.worst << " (tol " << tol << ") at " << t.where;
    return {name, pass, os.str()};
}

double rel_err(double got, double want) {
    const double scale = std::max(std::fabs(want), 1e-300);
    return std::fabs(got - want) / scale;
}

// --- definitional integrals used as independent references ---------------

double oracle_j0(double x) {
    auto f = [x](double t) { return std::cos(x * std::sin(t)); };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15;
    return quad::integrate(f, 0.0, M_PI, opt).checked("oracle_j0") / M_PI;
}

double oracle_i0_scaled(double x) {
    auto f = [x](double t) { return std::exp(x * (std::cos(t) - 1.0)); };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-15;
    return quad::integrate(f, 0.0, M_PI, opt).checked("oracle_i0") / M_PI;
}

double oracle_exp_e1_scaled(double x) {
    auto f = [x](double u) { return std::exp(-u) / (u + x); };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    return quad::integrate_semi_inf(f, 1.0, opt).checked("oracle_e1");
}

// Lower Rice mass: Q1(m, n) = 1 - integral_0^n t e^{-(t-m)^2/2} sI0(mt) dt.
double oracle_marcum_q1(double m, double n) {
    auto f = [m](double t) {
        const double u = t - m;
        const double e = -0.5 * u * u;
        if (e < -745.0) return 0.0;
        return t * std::exp(e) * specfun::bessel_i0_scaled(m * t);
    };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    opt.abs_tol = 1e-18;
    const double v = quad::integrate(f, 0.0, n, opt).checked("oracle_marcum");
    return std::min(1.0, std::max(0.0, 1.0 - v));
}

// Degraded mean by direct expectation over the unit-exponential gain.
double oracle_degraded_mean(double a, double w02) {
    auto f = [a, w02](double g) {
        const double sig = a * g;
        return w02 * sig / ((1.0 - w02) * sig + 1.0) * std::exp(-g);
    };
    quad::Options opt;
    opt.rel_tol = 1e-12;
    return quad::integrate_semi_inf(f, 1.0, opt).checked("oracle_mean");
}

std::complex<double> oracle_weight(double alpha, int p) {
    // geometric-sum form: w_p = (1/4) sum_m e^{i pi m (alpha - p) / 2}
    std::complex<double> acc{0.0, 0.0};
    for (int m = 0; m < 4; ++m) {
        acc += std::polar(1.0, 0.5 * M_PI * m * (alpha - p));
    }
    return acc / 4.0;
}

// --- individual checks ----------------------------------------------------

CheckResult check_weights() {
    Tracker t;
    for (int i = 0; i < 1000; ++i) {
        const double alpha = 4.0 * i / 1000.0;
        const auto wv = wfrft::weights(alpha);
        double power = 0.0;
        double dev = 0.0;
        for (int p = 0; p < 4; ++p) {
            power += std::norm(wv.w[p]);
            dev = std::max(dev, std::abs(wv.w[p] - oracle_weight(alpha, p)));
        }
        std::ostringstream os;
        os << "alpha=" << alpha;
        t.feed(std::max(std::fabs(power - 1.0), dev), os.str());
    }
    for (int a = 0; a < 4; ++a) {
        const auto wv = wfrft::weights(static_cast<double>(a));
        for (int p = 0; p < 4; ++p) {
            const double want = (p == a) ? 1.0 : 0.0;
            if (std::abs(wv.w[p] - std::complex<double>{want, 0.0}) != 0.0) {
                return {"transform weights", false,
                        "integer order weights are not exact"};
            }
        }
    }
    const double split = wfrft::mismatch_power_split(0.5).first;
    const double want = (2.0 + std::sqrt(2.0)) / 8.0;
    t.feed(std::fabs(split - want), "half-order matched fraction");
    return make("transform weights", t.worst <= 1e-12, t, 1e-12);
}

CheckResult check_transform_algebra(std::uint64_t seed) {
    Tracker t;
    rng::NormalStream g(seed);
    const std::size_t n = 64;
    wfrft::Signal x(n);
    for (auto& v : x) v = {g.next(), g.next()};
    double nx = 0.0;
    for (const auto& v : x) nx += std::norm(v);
    nx = std::sqrt(nx);

    const auto same = [&](const wfrft::Signal& a, const wfrft::Signal& b) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - b[i]);
        return std::sqrt(d) / nx;
    };

    t.feed(same(wfrft::wfrft(x, 0.0), x), "identity order");
    t.feed(same(wfrft::wfrft(x, 1.0), wfrft::dft(x)), "unit order vs dft");
    t.feed(same(wfrft::idft(wfrft::dft(x)), x), "dft round trip");
    for (int i = 0; i < 10; ++i) {
        const double a = 8.0 * ((g.raw() >> 11) * 0x1.0p-53);
        const double b = 8.0 * ((g.raw() >> 11) * 0x1.0p-53);
        std::ostringstream os;
        os << "additivity a=" << a << " b=" << b;
        t.feed(same(wfrft::wfrft(wfrft::wfrft(x, a), b), wfrft::wfrft(x, a + b)),
               os.str());
        double ny = 0.0;
        for (const auto& v : wfrft::wfrft(x, a)) ny += std::norm(v);
        t.feed(std::fabs(std::sqrt(ny) / nx - 1.0), "norm preservation");
        t.feed(same(wfrft::wfrft(x, a + 4.0), wfrft::wfrft(x, a)), "period 4");
    }
    return make("transform algebra", t.worst <= 1e-10, t, 1e-10);
}

CheckResult check_specfun() {
    Tracker t;
    for (double x : {0.5, 1.0, 3.0, 7.81, 12.5, 30.0}) {
        std::ostringstream os;
        os << "J0(" << x << ")";
        t.feed(std::fabs(specfun::bessel_j0(x) - oracle_j0(x)), os.str());
    }
    for (double x : {0.1, 1.0, 19.9, 20.1, 50.0}) {
        std::ostringstream os;
        os << "scaled I0(" << x << ")";
        t.feed(rel_err(specfun::bessel_i0_scaled(x), oracle_i0_scaled(x)),
               os.str());
    }
    for (double x : {0.05, 0.5, 1.0, 1.5, 10.0, 100.0}) {
        std::ostringstream os;
        os << "e^x E1(" << x << ")";
        t.feed(rel_err(specfun::exp_e1_scaled(x), oracle_exp_e1_scaled(x)),
               os.str());
    }
    for (double m : {0.5, 2.0, 5.0}) {
        for (double n : {0.5, 2.0, 5.0}) {
            std::ostringstream os;
            os << "Q1(" << m << ", " << n << ")";
            t.feed(std::fabs(specfun::marcum_q1(m, n) - oracle_marcum_q1(m, n)),
                   os.str());
        }
    }
    // pinned boundary values
    t.feed(std::fabs(specfun::marcum_q1(3.0, 0.0) - 1.0), "Q1(m, 0)");
    t.feed(std::fabs(specfun::marcum_q1(0.0, 2.0) - std::exp(-2.0)),
           "Q1(0, n)");
    // series and large-argument evaluations agree across the switchover
    const double lo = specfun::marcum_q1(247.0, 247.4);
    const double hi = specfun::marcum_q1(247.6, 248.0);
    const double mid = specfun::marcum_q1(247.3, 247.7);
    if (!(lo > hi && lo > mid && mid > hi)) {
        return {"special functions", false,
                "Marcum switchover is not monotone in the arguments"};
    }
    return make("special functions", t.worst <= 1e-8, t, 1e-8);
}

CheckResult check_degraded_mean(bool canary) {
    Tracker t;
    for (double a : {1.0, 10.0, 1e5}) {
        for (int i = 1; i <= 9; ++i) {
            const double da = 0.1 * i;
            const double w02 = wfrft::mismatch_power_split(da).first;
            double got;
            if (canary) {
                got = channel::detail::mean_eve_snr_sign_variant(a, w02);
            } else {
                auto sp = base_params(20.0, 0.0, 1, 1, da);
                sp.p_mw = a * sp.n_e_mw / sp.sigma_e2;  // pin the matched mean to a
                got = channel::mean_snrs(sp).gamma_e;
            }
            std::ostringstream os;
            os << "a=" << a << " delta=" << da;
            t.feed(rel_err(got, oracle_degraded_mean(a, w02)), os.str());
        }
    }
    // integer-order limits must be exact
    for (int d = 0; d < 4; ++d) {
        auto sp = base_params(20.0, 0.0, 1, 1, static_cast<double>(d));
        const auto ms = channel::mean_snrs(sp);
        const double want = (d == 0) ? ms.a : 0.0;
        if (ms.gamma_e != want) {
            return {"degraded eavesdropper mean", false,
                    "integer-order limit is not exact"};
        }
    }
    return make("degraded eavesdropper mean", t.worst <= 1e-8, t, 1e-8);
}

CheckResult check_sign_variant_rejected() {
    // the flipped-sign assembly must sit far outside the acceptance band
    const double w02 = wfrft::mismatch_power_split(0.5).first;
    const double bad = channel::detail::mean_eve_snr_sign_variant(10.0, w02);
    const double want = oracle_degraded_mean(10.0, w02);
    const double err = rel_err(bad, want);
    std::ostringstream os;
    os << "flipped-sign value " << bad << " vs reference " << want
       << " (relative gap " << err << ")";
    return {"degraded mean rejects flipped sign", err > 1e-3, os.str()};
}

CheckResult check_densities() {
    Tracker t;
    quad::Options opt;
    opt.rel_tol = 1e-9;
    for (int n : {1, 4}) {
        auto sp = base_params(20.0, 0.5, n == 1 ? 1 : 2, n == 1 ? 1 : 2, 0.5);
        const double gm = channel::mean_snrs(sp).gamma_m;
        auto f = [&](double z) { return secrecy::pdf_bob_as(z, sp); };
        const double v =
            quad::integrate_semi_inf(f, gm, opt).checked("pdf_bob mass");
        std::ostringstream os;
        os << "selected-SNR density mass, N=" << n;
        t.feed(std::fabs(v - 1.0), os.str());
    }
    {
        auto sp = base_params(20.0, 0.5, 2, 2, 0.5);
        const auto ms = channel::mean_snrs(sp);
        quad::Options outer;
        outer.rel_tol = 1e-7;
        auto fz = [&](double z) {
            auto fy = [&](double y) { return secrecy::joint_pdf(z, y, sp); };
            return quad::integrate_semi_inf(fy, ms.gamma_e, opt)
                .checked("joint inner");
        };
        const double v = quad::integrate_semi_inf(fz, ms.gamma_m, outer)
                             .checked("joint mass");
        t.feed(std::fabs(v - 1.0), "joint density mass, N=4 rho=0.5");
    }
    {
        // conditional tail against direct integration of the joint density
        auto sp = base_params(20.0, 0.6, 2, 1, 0.3);
        const auto ms = channel::mean_snrs(sp);
        const double z = 1.7 * ms.gamma_m;
        const double y = 1.3 * ms.gamma_e;
        auto fy = [&](double u) { return secrecy::joint_pdf(z, u, sp); };
        const double tail =
            quad::integrate_semi_inf([&](double u) { return fy(y + u); },
                                     ms.gamma_e, opt)
                .checked("tail");
        const double denom = secrecy::pdf_bob_as(z, sp);
        t.feed(rel_err(secrecy::eve_tail_given_bob(y, z, sp), tail / denom),
               "conditional tail at a probe point");
    }
    return make("analytic densities", t.worst <= 1e-6, t, 1e-6);
}

CheckResult check_closed_vs_quadrature() {
    Tracker t;
    struct Pt {
        double rho, da, p;
        int na, nb;
    };
    const Pt pts[] = {{0.5, 0.5, 20.0, 2, 2},
                      {0.0, 0.0, 10.0, 1, 1},
                      {0.7, 1.0, 10.0, 4, 4},
                      {0.3, 2.5, 20.0, 1, 2}};
    for (const auto& pt : pts) {
        auto sp = base_params(pt.p, pt.rho, pt.na, pt.nb, pt.da);
        const double cf = secrecy::asc_closed_form(sp).bits;
        const double q = secrecy::asc_quadrature(sp).bits;
        std::ostringstream os;
        os << "rho=" << pt.rho << " delta=" << pt.da << " P=" << pt.p
           << " N=" << pt.na * pt.nb;
        t.feed(rel_err(cf, q), os.str());
    }
    return make("closed form vs quadrature", t.worst <= 1e-4, t, 1e-4);
}

CheckResult check_mc_agreement(std::uint64_t seed, int workers, long trials,
                               double nse, const std::string& name) {
    Tracker t;
    struct Pt {
        double rho, da;
        int na, nb;
    };
    const Pt pts[] = {{0.5, 0.0, 2, 2}, {0.3, 1.0, 2, 2}};
    bool ok = true;
    for (const auto& pt : pts) {
        auto sp = base_params(20.0, pt.rho, pt.na, pt.nb, pt.da);
        mc::McConfig cfg;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.workers = workers;
        const auto est = mc::run_asc_mc(sp, cfg);
        const double cf = secrecy::asc_closed_form(sp).bits;
        const double gap = std::fabs(est.mean - cf);
        const double limit = nse * std::max(est.std_error, 1e-12);
        std::ostringstream os;
        os << "rho=" << pt.rho << " delta=" << pt.da << " gap " << gap << " vs "
           << nse << " SE = " << limit;
        t.feed(gap / limit, os.str());
        ok = ok && gap <= limit;
    }
    return make(name, ok, t, 1.0);
}

CheckResult check_ks(std::uint64_t seed) {
    auto sp = base_params(20.0, 0.5, 1, 1, 0.5);
    const long n = 20000;
    const auto s = mc::sample_eve_power(sp, n, seed);
    const double d = mc::ks_exponential_check(s);
    const double crit = 1.63 / std::sqrt(static_cast<double>(n));
    std::ostringstream os;
    os << "D = " << d << " vs 1% critical " << crit;
    return {"eavesdropper gain is exponential (KS)", d < crit, os.str()};
}

CheckResult check_signal_mc(std::uint64_t seed) {
    Tracker t;
    bool ok = true;
    for (double da : {0.0, 0.5, 1.0}) {
        auto sp = base_params(20.0, 0.5, 1, 1, da);
        mc::McConfig cfg;
        cfg.seed = seed;
        const auto r = mc::run_signal_mc(sp, 100000, mc::Modulation::qpsk, cfg);
        const double tol = 0.05 * r.predicted_fraction + 3.0 / 1024.0;
        const double gap = std::fabs(r.useful_fraction - r.predicted_fraction);
        std::ostringstream os;
        os << "delta=" << da << " fraction " << r.useful_fraction
           << " predicted " << r.predicted_fraction;
        t.feed(gap / std::max(tol, 1e-300), os.str());
        ok = ok && gap <= tol;
    }
    return make("modulated mismatch power split", ok, t, 1.0);
}

CheckResult check_chi_square(std::uint64_t seed, int n_side) {
    auto sp = base_params(20.0, 0.5, n_side, n_side, 0.0);
    mc::McConfig cfg;
    cfg.trials = 1000000;
    cfg.seed = seed;
    const auto r = mc::chi_square_joint(sp, cfg);
    std::ostringstream os;
    os << "chi2 = " << r.stat << " vs 1% critical " << r.critical_1pc << " ("
       << r.cells << " cells, " << r.trials << " draws)";
    std::ostringstream name;
    name << "joint histogram chi-square, N=" << n_side * n_side;
    return {name.str(), r.pass, os.str()};
}

CheckResult check_reproducibility(std::uint64_t seed) {
    auto sp = base_params(20.0, 0.5, 2, 2, 0.5);
    mc::McConfig cfg;
    cfg.trials = 200000;
    cfg.seed = seed;
    cfg.workers = 1;
    const auto a = mc::run_asc_mc(sp, cfg);
    const auto b = mc::run_asc_mc(sp, cfg);
    cfg.workers = 4;
    const auto c = mc::run_asc_mc(sp, cfg);
    std::ostringstream os;
    os << "single-worker repeat gap " << std::fabs(a.mean - b.mean)
       << ", four-worker gap " << std::fabs(a.mean - c.mean);
    const bool pass = a.mean == b.mean && std::fabs(a.mean - c.mean) <= 1e-12;
    return {"seeded reproducibility", pass, os.str()};
}

}  // namespace

std::vector<CheckResult> run_fast_suite(const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    out.push_back(check_weights());
    out.push_back(check_transform_algebra(cfg.seed));
    out.push_back(check_specfun());
    out.push_back(check_degraded_mean(cfg.canary));
    out.push_back(check_sign_variant_rejected());
    out.push_back(check_densities());
    out.push_back(check_closed_vs_quadrature());
    out.push_back(check_mc_agreement(cfg.seed, cfg.workers, 100000, 4.0,
                                     "secrecy Monte Carlo vs closed form"));
    out.push_back(check_ks(cfg.seed));
    out.push_back(check_signal_mc(cfg.seed));
    return out;
}

std::vector<CheckResult> run_full_suite(const SuiteConfig& cfg) {
    auto out = run_fast_suite(cfg);
    out.push_back(check_mc_agreement(
        cfg.seed, cfg.workers, 1000000, 3.5,
        "secrecy Monte Carlo vs closed form (million trials)"));
    out.push_back(check_chi_square(cfg.seed, 1));
    out.push_back(check_chi_square(cfg.seed, 2));
    out.push_back(check_reproducibility(cfg.seed));
    return out;
}

}  // namespace seclab::selfcheck
