// Acceptance gates for the secrecy-capacity toolkit.  Each numbered gate
// prints exactly one [PASS]/[FAIL] line; failing points print indented
// detail lines above it.  A gate may carry an expected failure annotation
// when the discrepancy is a documented model limitation rather than a bug;
// the process exits 0 only when every unexpected check is green.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "seclab/channel.hpp"
#include "seclab/montecarlo.hpp"
#include "seclab/quadrature.hpp"
#include "seclab/secrecy.hpp"
#include "seclab/specfun.hpp"
#include "seclab/wfrft.hpp"

namespace ch = seclab::channel;
namespace mc = seclab::mc;
namespace sec = seclab::secrecy;
namespace sf = seclab::specfun;
namespace wf = seclab::wfrft;
namespace quad = seclab::quad;

namespace {

constexpr std::uint64_t kSeed = 20260816ULL;

int g_gates_total = 0;
int g_gates_green = 0;
int g_gates_expected_red = 0;
bool g_hard_fail = false;

void gate(bool pass, const std::string& name, const std::string& evidence,
          const std::string& expected_reason = "") {
    ++g_gates_total;
    if (pass) {
        ++g_gates_green;
        std::printf("[PASS] %s: %s\n", name.c_str(), evidence.c_str());
    } else if (!expected_reason.empty()) {
        ++g_gates_expected_red;
        std::printf("[FAIL (expected: %s)] %s: %s\n", expected_reason.c_str(),
                    name.c_str(), evidence.c_str());
    } else {
        g_hard_fail = true;
        std::printf("[FAIL] %s: %s\n", name.c_str(), evidence.c_str());
    }
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nt = static_cast<unsigned>(
        std::min<std::size_t>(hw, std::max<std::size_t>(1, n)));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n;
                 i = next.fetch_add(1))
                fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

ch::SystemParams ref_point(double p_dbm, double rho, int na, int nb,
                             double da) {
    return ch::params_from_db(p_dbm, -95.0, -100.0, -100.0, -100.0, rho, na,
                              nb, da);
}

struct Worst {
    double value = 0.0;
    std::string where;
    void feed(double v, const std::string& w) {
        if (v > value) {
            value = v;
            where = w;
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------- gate 1

void gate1_transform_algebra() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 g(kSeed);
    std::uniform_real_distribution<double> ud(0.0, 4.0);
    std::normal_distribution<double> nd;
    Worst comp;

    for (std::size_t n : {4u, 16u, 64u}) {
        for (int rep = 0; rep < 100; ++rep) {
            wf::Signal x(n);
            for (auto& v : x) v = {nd(g), nd(g)};
            const double a = ud(g);
            const double b = ud(g);
            const auto lhs = wf::wfrft(wf::wfrft(x, a), b);
            const auto rhs = wf::wfrft(x, a + b);
            const auto per = wf::wfrft(x, a + 4.0);
            const auto ya = wf::wfrft(x, a);
            double norm_in = 0.0, norm_out = 0.0;
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
                worst = std::max(worst, std::abs(per[i] - ya[i]));
                norm_in += std::norm(x[i]);
                norm_out += std::norm(ya[i]);
            }
            worst = std::max(worst,
                             std::abs(norm_out - norm_in) / norm_in);
            std::ostringstream os;
            os << "N=" << n;
            comp.feed(worst, os.str());
            // integer orders must reproduce the base states exactly
            const auto id = wf::wfrft(x, 0.0);
            const auto f1 = wf::wfrft(x, 1.0);
            const auto f = wf::dft(x);
            for (std::size_t i = 0; i < n; ++i) {
                if (id[i] != x[i] || f1[i] != f[i]) {
                    gate(false, "1. transform algebra",
                         "integer order is not bit-exact");
                    return;
                }
            }
        }
    }

    Worst wpow;
    for (int i = 0; i < 1000; ++i) {
        const double alpha = ud(g);
        const auto wv = wf::weights(alpha);
        double p = 0.0;
        for (const auto& c : wv.w) p += std::norm(c);
        wpow.feed(std::abs(p - 1.0), "alpha=" + fmt(alpha));
    }

    const double dt = seconds_since(t0);
    const bool ok = comp.value <= 1e-10 && wpow.value <= 1e-12 && dt < 5.0;
    std::ostringstream os;
    os << "composition/period/norm worst " << fmt(comp.value)
       << " (tol 1e-10, 100 random (alpha, beta, x) per N in {4,16,64}); "
       << "weight power worst " << fmt(wpow.value)
       << " (tol 1e-12, 1000 orders); " << fmt(dt) << " s (cap 5 s)";
    gate(ok, "1. transform algebra", os.str());
}

// ---------------------------------------------------------------- gate 2

void gate2_special_functions() {
    const auto t0 = std::chrono::steady_clock::now();
    Worst w;
    for (double x : {0.5, 1.0, 3.0, 7.81, 12.5, 30.0})
        w.feed(std::abs(sf::bessel_j0(x) - oracles::j0(x)), "J0(" + fmt(x) + ")");
    for (double x : {0.1, 1.0, 19.9, 20.1, 50.0})
        w.feed(std::abs(sf::bessel_i0_scaled(x) - oracles::i0_scaled(x)) /
                   oracles::i0_scaled(x),
               "I0s(" + fmt(x) + ")");
    for (double x : {0.05, 0.5, 1.0, 1.5, 10.0, 100.0})
        w.feed(std::abs(sf::exp_e1_scaled(x) - oracles::e1_scaled(x)) /
                   oracles::e1_scaled(x),
               "e^x E1(" + fmt(x) + ")");
    for (double m : {0.5, 2.0, 5.0})
        for (double n : {0.5, 2.0, 5.0})
            w.feed(std::abs(sf::marcum_q1(m, n) - oracles::marcum_q1(m, n)),
                   "Q1(" + fmt(m) + "," + fmt(n) + ")");

    bool ident = true;
    for (double m : {0.0, 0.5, 2.0, 5.0, 40.0})
        ident = ident && sf::marcum_q1(m, 0.0) == 1.0;
    for (double n : {0.5, 2.0, 5.0})
        ident = ident && sf::marcum_q1(0.0, n) == std::exp(-0.5 * n * n);

    const double dt = seconds_since(t0);
    const bool ok = w.value <= 1e-8 && ident && dt < 10.0;
    std::ostringstream os;
    os << "worst oracle deviation " << fmt(w.value) << " (tol 1e-8) at "
       << w.where << "; boundary identities Q1(m,0)=1, Q1(0,n)=e^{-n^2/2} "
       << (ident ? "exact" : "NOT exact") << "; " << fmt(dt)
       << " s (cap 10 s)";
    gate(ok, "2. special functions vs definitional oracles", os.str());
}

// ---------------------------------------------------------------- gate 3

void gate3_eve_mean() {
    Worst w, variant;
    for (double a : {1.0, 10.0, 1e5}) {
        for (int i = 1; i <= 9; ++i) {
            const double da = 0.1 * i;
            const double w02 = wf::mismatch_power_split(da).first;
            auto sp = ref_point(0.0, 0.0, 1, 1, da);
            sp.p_mw = a * sp.n_e_mw / sp.sigma_e2;
            const double want = oracles::degraded_mean(a, w02);
            const double got = ch::mean_snrs(sp).gamma_e;
            const double bad = ch::detail::mean_eve_snr_sign_variant(a, w02);
            std::ostringstream os;
            os << "a=" << a << " delta=" << da;
            w.feed(std::abs(got - want) / want, os.str());
            variant.feed(std::abs(bad - want) / want, os.str());
        }
    }
    bool limits = true;
    for (int d = 0; d < 4; ++d) {
        auto sp = ref_point(20.0, 0.0, 1, 1, static_cast<double>(d));
        const auto ms = ch::mean_snrs(sp);
        limits = limits && (d == 0 ? ms.gamma_e == ms.a : ms.gamma_e == 0.0);
    }
    const bool ok = w.value <= 1e-8 && limits && variant.value > 1e-3;
    std::ostringstream os;
    os << "closed form vs gain-expectation quadrature worst " << fmt(w.value)
       << " (tol 1e-8) over a in {1,10,1e5} x delta in {0.1..0.9}; integer "
          "limits "
       << (limits ? "exact" : "NOT exact")
       << "; sign-flipped variant misses by " << fmt(variant.value)
       << " (must exceed 1e-3)";
    gate(ok, "3. degraded eavesdropper mean", os.str());
}

// ---------------------------------------------------------------- gate 4

void gate4_distributions() {
    Worst w;
    for (int n : {1, 2, 4, 16}) {
        const int na = n == 1 ? 1 : 2;
        const int nb = n / na == 0 ? 1 : n / na;
        auto sp = ref_point(20.0, 0.3, na, nb, 0.5);
        const auto ms = ch::mean_snrs(sp);
        auto mass = quad::integrate_semi_inf(
            [&](double z) { return sec::pdf_bob_as(z, sp); }, ms.gamma_m);
        w.feed(std::abs(mass.checked("bob mass") - 1.0),
               "selected-branch pdf, N=" + std::to_string(n));
    }
    for (double rho : {0.0, 0.3, 0.7}) {
        for (int n : {1, 2, 4, 16}) {
            const int na = n == 1 ? 1 : 2;
            const int nb = n == 1 ? 1 : n / 2;
            auto sp = ref_point(20.0, rho, na, nb, 0.5);
            const auto ms = ch::mean_snrs(sp);
            auto outer = quad::integrate_semi_inf(
                [&](double z) {
                    auto inner = quad::integrate_semi_inf(
                        [&](double y) { return sec::joint_pdf(z, y, sp); },
                        ms.gamma_e);
                    return inner.checked("inner");
                },
                ms.gamma_m);
            std::ostringstream os;
            os << "joint pdf, N=" << n << " rho=" << rho;
            w.feed(std::abs(outer.checked("outer") - 1.0), os.str());
        }
    }

    mc::McConfig cfg;
    cfg.trials = 1000000;
    cfg.seed = kSeed;
    auto sp1 = ref_point(20.0, 0.5, 1, 1, 0.0);
    auto sp4 = ref_point(20.0, 0.5, 2, 2, 0.0);
    const auto c1 = mc::chi_square_joint(sp1, cfg);
    const auto c4 = mc::chi_square_joint(sp4, cfg);

    const bool ok = w.value <= 1e-6 && c1.pass && c4.pass;
    std::ostringstream os;
    os << "normalization worst " << fmt(w.value)
       << " (tol 1e-6) over N in {1,2,4,16} x rho in {0,0.3,0.7}; joint "
          "chi-square at 1e6 draws: N=1 "
       << fmt(c1.stat) << ", N=4 " << fmt(c4.stat) << " vs 1% critical "
       << fmt(c1.critical_1pc);
    gate(ok, "4. analytic distributions", os.str());
}

// ---------------------------------------------------------------- gate 5

struct GridPoint {
    double rho, da, p;
    int na, nb;
    double closed = 0.0, quadr = 0.0;
    double mc_mean = 0.0, mc_se = 0.0;
    double sur_mean = 0.0, sur_se = 0.0;
    std::string err;
};

void gate5_three_way() {
    std::vector<GridPoint> pts;
    for (double rho : {0.0, 0.3, 0.5, 0.7})
        for (int n : {1, 4, 16})
            for (double da : {0.0, 0.5, 1.0, 2.0})
                for (double p : {10.0, 20.0}) {
                    GridPoint gp;
                    gp.rho = rho;
                    gp.da = da;
                    gp.p = p;
                    gp.na = n == 1 ? 1 : (n == 4 ? 2 : 4);
                    gp.nb = gp.na == 1 ? 1 : n / gp.na;
                    pts.push_back(gp);
                }

    // analytic legs in parallel, Monte Carlo serial with internal workers
    parallel_for(pts.size(), [&](std::size_t i) {
        auto& gp = pts[i];
        try {
            auto sp = ref_point(gp.p, gp.rho, gp.na, gp.nb, gp.da);
            gp.closed = sec::asc_closed_form(sp).bits;
            gp.quadr = sec::asc_quadrature(sp).bits;
        } catch (const std::exception& e) {
            gp.err = e.what();
        }
    });
    for (auto& gp : pts) {
        if (!gp.err.empty()) continue;
        auto sp = ref_point(gp.p, gp.rho, gp.na, gp.nb, gp.da);
        mc::McConfig cfg;
        cfg.trials = 1000000;
        cfg.seed = kSeed;
        const auto est = mc::run_asc_mc(sp, cfg);
        gp.mc_mean = est.mean;
        gp.mc_se = est.std_error;
        if (gp.da == 0.5) {  // surrogate diagnostic on the waived set
            cfg.eve_model = mc::EveModel::exponential_mean;
            const auto sur = mc::run_asc_mc(sp, cfg);
            gp.sur_mean = sur.mean;
            gp.sur_se = sur.std_error;
        }
    }

    // 5a: closed form vs quadrature
    Worst wa;
    bool thrown = false;
    for (const auto& gp : pts) {
        if (!gp.err.empty()) {
            std::printf("  point rho=%g N=%d da=%g P=%g threw: %s\n", gp.rho,
                        gp.na * gp.nb, gp.da, gp.p, gp.err.c_str());
            thrown = true;
            continue;
        }
        std::ostringstream os;
        os << "rho=" << gp.rho << " N=" << gp.na * gp.nb << " da=" << gp.da
           << " P=" << gp.p;
        wa.feed(std::abs(gp.closed - gp.quadr) / std::abs(gp.quadr), os.str());
    }
    {
        std::ostringstream os;
        os << "worst relative gap " << fmt(wa.value) << " (tol 1e-4) at "
           << wa.where << ", 96 grid points";
        gate(!thrown && wa.value <= 1e-4,
             "5a. closed form vs nested quadrature", os.str());
    }

    // 5b: Monte Carlo within 3 SE, fractional-mismatch points expected red
    int unexpected = 0, expected = 0, sur_bad = 0;
    double worst_sigma = 0.0, worst_gap = 0.0;
    for (const auto& gp : pts) {
        if (!gp.err.empty()) {
            ++unexpected;
            continue;
        }
        const double gap = std::max(std::abs(gp.mc_mean - gp.closed),
                                    std::abs(gp.mc_mean - gp.quadr));
        const bool ok = gap <= 3.0 * gp.mc_se;
        const bool waived = gp.da == 0.5;
        if (!ok) {
            std::printf(
                "  %s rho=%g N=%d da=%g P=%g: |mc - analytic| = %.4g bits = "
                "%.1f SE%s\n",
                waived ? "waived" : "FAIL", gp.rho, gp.na * gp.nb, gp.da,
                gp.p, gap, gap / gp.mc_se,
                waived ? "" : " (tol 3 SE)");
            if (waived) {
                ++expected;
                worst_sigma = std::max(worst_sigma, gap / gp.mc_se);
                worst_gap = std::max(worst_gap, gap);
            } else {
                ++unexpected;
            }
        }
        if (waived) {
            const double sgap = std::abs(gp.sur_mean - gp.closed);
            if (sgap > 3.5 * gp.sur_se) {
                ++sur_bad;
                std::printf(
                    "  surrogate mismatch rho=%g N=%d P=%g: %.4g bits = %.1f "
                    "SE (tol 3.5 SE)\n",
                    gp.rho, gp.na * gp.nb, gp.p, sgap, sgap / gp.sur_se);
            }
        }
    }
    std::ostringstream os;
    os << expected
       << " of 96 points exceed 3 SE at 1e6 trials, all on the waived "
          "fractional-mismatch set da=0.5 (worst "
       << fmt(worst_gap) << " bits = " << fmt(worst_sigma)
       << " SE); 72 integer-mismatch points within 3 SE: "
       << (unexpected == 0 ? "yes" : "NO") << "; exponential-surrogate "
       << "Monte Carlo at the 24 waived points within 3.5 SE: "
       << (sur_bad == 0 ? "yes" : "NO");
    if (unexpected == 0 && sur_bad == 0 && expected > 0) {
        gate(false, "5b. Monte Carlo within 3 standard errors", os.str(),
             "the analytic eavesdropper is an exponential surrogate for the "
             "bounded mismatch SINR; the bias is real, resolved at 1e6 "
             "trials, and vanishes under the surrogate model");
    } else {
        gate(unexpected == 0 && sur_bad == 0 && expected == 0,
             "5b. Monte Carlo within 3 standard errors", os.str());
    }
}

// ---------------------------------------------------------------- gate 6

struct Curve {
    std::vector<double> x, bits, err;
};

Curve closed_curve(double p_dbm, double rho, int na, int nb,
                   const std::vector<double>& xs, char axis) {
    Curve c;
    c.x = xs;
    c.bits.resize(xs.size());
    c.err.resize(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        double p = p_dbm, r = rho, da = 1.0;
        switch (axis) {
            case 'd': da = xs[i]; break;
            case 'r': r = xs[i]; da = 1.0; break;
            case 'p': p = xs[i]; da = 0.0; break;
        }
        auto sp = ref_point(p, r, na, nb, da);
        const auto res = sec::asc_closed_form(sp);
        c.bits[i] = res.bits;
        c.err[i] = res.diag.err_estimate;
    });
    return c;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> xs;
    const long n = std::lround((hi - lo) / step);
    for (long i = 0; i <= n; ++i) xs.push_back(lo + step * i);
    return xs;
}

void gate6_figure_shapes() {
    bool all_ok = true;
    std::ostringstream ev;

    // --- mismatch sweep: symmetry about 2, maxima at {1,2,3}, N ordering
    const auto dxs = grid(0.0, 4.0, 0.05);
    struct Named {
        const char* label;
        int na, nb;
        Curve c;
    };
    std::vector<Named> curves{{"n1", 1, 1, {}},
                              {"n2", 1, 2, {}},
                              {"n4", 2, 2, {}},
                              {"n16", 4, 4, {}}};
    for (auto& nc : curves) nc.c = closed_curve(20.0, 0.5, nc.na, nc.nb, dxs, 'd');

    double worst_sym = 0.0;
    bool sym_ok = true, peak_ok = true, order_ok = true;
    const std::size_t last = dxs.size() - 1;
    for (const auto& nc : curves) {
        for (std::size_t i = 0; i < dxs.size(); ++i) {
            const std::size_t j = last - i;
            const double gap = std::abs(nc.c.bits[i] - nc.c.bits[j]);
            const double tol = nc.c.err[i] + nc.c.err[j] + 1e-12;
            worst_sym = std::max(worst_sym, gap);
            if (gap > tol) sym_ok = false;
        }
        // maxima exactly at the integer mismatches 1, 2, 3
        const double peak = nc.c.bits[20];
        for (std::size_t i = 0; i < dxs.size(); ++i) {
            const bool at_peak = i == 20 || i == 40 || i == 60;
            const double tol = nc.c.err[i] + nc.c.err[20];
            if (at_peak) {
                if (std::abs(nc.c.bits[i] - peak) > tol) peak_ok = false;
            } else if (nc.c.bits[i] >= peak - tol) {
                peak_ok = false;
            }
        }
    }
    for (std::size_t i = 0; i < dxs.size(); ++i) {
        for (std::size_t k = 1; k < curves.size(); ++k) {
            const double margin = curves[k].c.err[i] + curves[k - 1].c.err[i];
            if (curves[k].c.bits[i] <= curves[k - 1].c.bits[i] + margin)
                order_ok = false;
        }
    }
    all_ok = all_ok && sym_ok && peak_ok && order_ok;
    ev << "mismatch sweep: symmetry worst " << fmt(worst_sym)
       << " (within per-point error estimates: " << (sym_ok ? "yes" : "NO")
       << "), maxima only at {1,2,3}: " << (peak_ok ? "yes" : "NO")
       << ", curves ordered by N: " << (order_ok ? "yes" : "NO");

    // --- correlation sweep at integer mismatch: flat; fractional: decreasing
    const auto rxs = grid(0.0, 0.95, 0.05);
    bool flat_ok = true, dec_ok = true, gain_ok = true;
    for (const auto& nc : curves) {
        const auto c = closed_curve(10.0, 0.0, nc.na, nc.nb, rxs, 'r');
        double lo = c.bits[0], hi = c.bits[0], etol = 0.0;
        for (std::size_t i = 0; i < rxs.size(); ++i) {
            lo = std::min(lo, c.bits[i]);
            hi = std::max(hi, c.bits[i]);
            etol = std::max(etol, c.err[i]);
        }
        if (hi - lo > 2.0 * etol + 1e-9) flat_ok = false;
    }
    // companion sweep with a live eavesdropper (delta = 0): rho must bite
    std::vector<Curve> live(curves.size());
    for (std::size_t k = 0; k < curves.size(); ++k) {
        Curve c;
        c.x = rxs;
        c.bits.resize(rxs.size());
        c.err.resize(rxs.size());
        parallel_for(rxs.size(), [&](std::size_t i) {
            auto sp = ref_point(10.0, rxs[i], curves[k].na, curves[k].nb, 0.0);
            const auto res = sec::asc_closed_form(sp);
            c.bits[i] = res.bits;
            c.err[i] = res.diag.err_estimate;
        });
        live[k] = c;
        for (std::size_t i = 0; i + 1 < rxs.size(); ++i) {
            if (c.bits[i + 1] > c.bits[i] + c.err[i] + c.err[i + 1])
                dec_ok = false;
        }
    }
    {
        // antenna-selection gain compresses as correlation rises
        const auto& c16 = live[3];
        const auto& c1 = live[0];
        const double g0 = c16.bits[0] - c1.bits[0];
        const double g9 = c16.bits.back() - c1.bits.back();
        if (!(g9 < g0)) gain_ok = false;
        ev << "; correlation sweep: integer-mismatch curves rho-flat: "
           << (flat_ok ? "yes" : "NO")
           << ", live-eavesdropper curves nonincreasing: "
           << (dec_ok ? "yes" : "NO") << ", selection gain shrinks "
           << fmt(g0) << " -> " << fmt(g9) << " bits: "
           << (gain_ok ? "yes" : "NO");
    }
    all_ok = all_ok && flat_ok && dec_ok && gain_ok;

    // --- convergence across correlation near integer mismatch
    bool conv_ok = true;
    double worst_spread = 0.0;
    {
        std::vector<Curve> rc;
        double plateau = 1e300;
        for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            rc.push_back(closed_curve(10.0, rho, 2, 2, dxs, 'd'));
            plateau = std::min(plateau, rc.back().bits[20]);
        }
        for (std::size_t i = 18; i <= 22; ++i) {  // mismatch in [0.9, 1.1]
            double lo = 1e300, hi = -1e300;
            for (const auto& c : rc) {
                lo = std::min(lo, c.bits[i]);
                hi = std::max(hi, c.bits[i]);
            }
            worst_spread = std::max(worst_spread, (hi - lo) / plateau);
        }
        conv_ok = worst_spread <= 0.02;
        ev << "; plateau convergence: spread across rho curves "
           << fmt(100.0 * worst_spread) << "% of plateau (cap 2%)";
    }
    all_ok = all_ok && conv_ok;

    // --- near-linear growth in transmit power, overlap of da=0.8 and 1.0
    bool fit_ok = true, overlap_ok = true;
    {
        const auto pxs = grid(0.0, 30.0, 2.0);
        std::vector<Curve> pc;
        for (double da : {0.2, 0.5, 0.8, 1.0}) {
            Curve c;
            c.x = pxs;
            c.bits.resize(pxs.size());
            c.err.resize(pxs.size());
            parallel_for(pxs.size(), [&](std::size_t i) {
                auto sp = ref_point(pxs[i], 0.5, 2, 2, da);
                const auto res = sec::asc_closed_form(sp);
                c.bits[i] = res.bits;
                c.err[i] = res.diag.err_estimate;
            });
            pc.push_back(c);
            // least-squares R^2 of bits against dBm
            const std::size_t n = pxs.size();
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < n; ++i) {
                sx += pxs[i];
                sy += c.bits[i];
                sxx += pxs[i] * pxs[i];
                sxy += pxs[i] * c.bits[i];
            }
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            const double inter = (sy - slope * sx) / n;
            double ssr = 0, sst = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double f = slope * pxs[i] + inter;
                ssr += (c.bits[i] - f) * (c.bits[i] - f);
                sst += (c.bits[i] - sy / n) * (c.bits[i] - sy / n);
            }
            if (1.0 - ssr / sst < 0.99) fit_ok = false;
        }
        double worst_overlap = 0.0;
        for (std::size_t i = 0; i < pxs.size(); ++i) {
            const double rel = std::abs(pc[2].bits[i] - pc[3].bits[i]) /
                               std::max(pc[3].bits[i], 1e-12);
            worst_overlap = std::max(worst_overlap, rel);
        }
        overlap_ok = worst_overlap <= 0.01;
        ev << "; power sweep: R^2 >= 0.99 per curve: "
           << (fit_ok ? "yes" : "NO") << ", da 0.8 vs 1.0 within "
           << fmt(100.0 * worst_overlap) << "% (cap 1%)";
    }
    all_ok = all_ok && fit_ok && overlap_ok;

    // --- degraded-mean sweep: exact endpoints and symmetry
    bool mean_ok = true;
    {
        auto sp0 = ref_point(20.0, 0.5, 1, 1, 0.0);
        const auto m0 = ch::mean_snrs(sp0);
        if (m0.gamma_e != m0.a) mean_ok = false;
        for (int d : {1, 2, 3}) {
            auto sp = ref_point(20.0, 0.5, 1, 1, static_cast<double>(d));
            if (ch::mean_snrs(sp).gamma_e != 0.0) mean_ok = false;
        }
        for (std::size_t i = 0; i < dxs.size(); ++i) {
            auto spa = ref_point(20.0, 0.5, 1, 1, dxs[i]);
            auto spb = ref_point(20.0, 0.5, 1, 1, dxs[last - i]);
            const double ga = ch::mean_snrs(spa).gamma_e;
            const double gb = ch::mean_snrs(spb).gamma_e;
            if (ga == 0.0 && gb == 0.0) continue;
            if (std::abs(ga - gb) > 1e-11 * std::max(ga, gb)) mean_ok = false;
        }
        ev << "; degraded-mean sweep: endpoints exact and symmetric: "
           << (mean_ok ? "yes" : "NO");
    }
    all_ok = all_ok && mean_ok;

    gate(all_ok, "6. figure shapes", ev.str());
}

// ---------------------------------------------------------------- gate 7

void gate7_signal_level() {
    Worst w;
    bool ok = true;
    for (double da : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto sp = ref_point(20.0, 0.0, 1, 1, da);
        mc::McConfig cfg;
        cfg.seed = kSeed;
        const auto r = mc::run_signal_mc(sp, 100000, mc::Modulation::qpsk, cfg);
        const double tol = 0.05 * r.predicted_fraction + 3.0 / 1024.0;
        const double gap = std::abs(r.useful_fraction - r.predicted_fraction);
        if (gap > tol) ok = false;
        w.feed(gap, "delta=" + fmt(da));
    }
    std::ostringstream os;
    os << "QPSK blocks of 1024, 1e5 symbols: worst |fraction - |w0|^2| = "
       << fmt(w.value) << " at " << w.where
       << " (tol 5% of prediction + 3/1024), delta in {0,0.25,0.5,0.75,1}";
    gate(ok, "7. modulated mismatch power split", os.str());
}

// ---------------------------------------------------------------- gate 8

void gate8_reproducibility() {
    auto sp = ref_point(20.0, 0.5, 2, 2, 0.5);
    mc::McConfig one;
    one.trials = 300000;
    one.seed = kSeed;
    one.workers = 1;
    const auto a = mc::run_asc_mc(sp, one);
    const auto b = mc::run_asc_mc(sp, one);
    const bool bitwise = a.mean == b.mean && a.std_error == b.std_error;

    double worst = 0.0;
    for (int workers : {2, 4, 8}) {
        auto cfg = one;
        cfg.workers = workers;
        const auto c = mc::run_asc_mc(sp, cfg);
        worst = std::max(worst, std::abs(c.mean - a.mean));
    }
    const bool ok = bitwise && worst <= 1e-12;
    std::ostringstream os;
    os << "single worker repeat bit-identical: " << (bitwise ? "yes" : "NO")
       << "; worker count {2,4,8} deviation " << fmt(worst)
       << " (tol 1e-12, by construction 0)";
    gate(ok, "8. seeded reproducibility", os.str());
}

}  // namespace

int main() {
    std::printf("acceptance gates: seed %llu, %u hardware threads\n",
                static_cast<unsigned long long>(kSeed),
                std::thread::hardware_concurrency());
    const auto t0 = std::chrono::steady_clock::now();

    gate1_transform_algebra();
    gate2_special_functions();
    gate3_eve_mean();
    gate4_distributions();
    gate5_three_way();
    gate6_figure_shapes();
    gate7_signal_level();
    gate8_reproducibility();

    std::printf(
        "acceptance: %d of %d gates green, %d expected red, %d unexpected "
        "red; %.1f s total\n",
        g_gates_green, g_gates_total, g_gates_expected_red,
        g_gates_total - g_gates_green - g_gates_expected_red,
        seconds_since(t0));
    return g_hard_fail ? 1 : 0;
}
