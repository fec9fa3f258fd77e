#include "seclab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "seclab/quadrature.hpp"
#include "seclab/rng.hpp"
#include "seclab/secrecy.hpp"
#include "seclab/specfun.hpp"
#include "seclab/wfrft.hpp"

namespace seclab::mc {

namespace {

struct Moments {
    long double sum = 0.0L;
    long double sumsq = 0.0L;
};

// One deterministic batch of secrecy-rate trials.
Moments asc_chunk(const channel::SystemParams& sp, const channel::CorrWeights& w,
                  double w02, double gamma_e_mean, EveModel model,
                  std::uint64_t seed, long n_trials) {
    rng::NormalStream stream(seed);
    const int npairs = sp.pairs();
    Moments m;
    for (long t = 0; t < n_trials; ++t) {
        double best = -1.0;
        double he2 = 0.0;
        for (int i = 0; i < npairs; ++i) {
            const auto d = channel::sample_pair(sp, w, stream);
            const double hm2 = std::norm(d.h_m);
            if (hm2 > best) {
                best = hm2;
                he2 = std::norm(d.h_e);
            }
        }
        const double gm = sp.p_mw * best / sp.n_m_mw;
        double ge;
        if (model == EveModel::mismatch_sinr) {
            ge = channel::eve_snr_degraded(sp.p_mw, he2, sp.n_e_mw, w02);
        } else {
            ge = gamma_e_mean * (he2 / sp.sigma_e2);
        }
        const double cs = secrecy::instant_secrecy(gm, ge);
        m.sum += cs;
        m.sumsq += static_cast<long double>(cs) * cs;
    }
    return m;
}

// Run `nchunks` batches across workers and reduce them in batch order, so
// the result is independent of scheduling.
template <typename ChunkFn>
Estimate reduce_chunks(long trials, long chunk, int workers, ChunkFn&& fn) {
    const long nchunks = (trials + chunk - 1) / chunk;
    std::vector<Moments> parts(static_cast<std::size_t>(nchunks));
    int nw = workers > 0
                 ? workers
                 : static_cast<int>(std::thread::hardware_concurrency());
    if (nw < 1) nw = 1;
    nw = static_cast<int>(std::min<long>(nw, nchunks));
    std::atomic<long> next{0};
    auto work = [&]() {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= nchunks) break;
            const long lo = c * chunk;
            const long n = std::min(chunk, trials - lo);
            parts[static_cast<std::size_t>(c)] = fn(static_cast<std::uint64_t>(c), n);
        }
    };
    if (nw == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nw));
        for (int i = 0; i < nw; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    long double sum = 0.0L;
    long double sumsq = 0.0L;
    for (const auto& p : parts) {
        sum += p.sum;
        sumsq += p.sumsq;
    }
    Estimate est;
    est.trials = trials;
    est.mean = static_cast<double>(sum / trials);
    if (trials > 1) {
        const long double var =
            (sumsq - sum * sum / trials) / (trials - 1);
        est.std_error =
            var > 0.0L ? std::sqrt(static_cast<double>(var) / trials) : 0.0;
    }
    return est;
}

void check_config(const McConfig& cfg) {
    if (cfg.trials < 1) {
        throw std::domain_error("monte carlo: trials must be >= 1");
    }
    if (cfg.chunk < 1) {
        throw std::domain_error("monte carlo: chunk must be >= 1");
    }
    if (cfg.workers < 0) {
        throw std::domain_error("monte carlo: workers must be >= 0");
    }
}

}  // namespace

Estimate run_asc_mc(const channel::SystemParams& sp, const McConfig& cfg) {
    channel::validate(sp);
    check_config(cfg);
    const auto w = channel::corr_weights(sp.rho);
    const auto ms = channel::mean_snrs(sp);
    return reduce_chunks(
        cfg.trials, cfg.chunk, cfg.workers,
        [&](std::uint64_t idx, long n) {
            return asc_chunk(sp, w, ms.w02, ms.gamma_e, cfg.eve_model,
                             rng::chunk_seed(cfg.seed, idx), n);
        });
}

Estimate run_eve_snr_mc(const channel::SystemParams& sp, const McConfig& cfg) {
    channel::validate(sp);
    check_config(cfg);
    const auto w = channel::corr_weights(sp.rho);
    const double w02 = wfrft::mismatch_power_split(sp.delta_alpha).first;
    return reduce_chunks(
        cfg.trials, cfg.chunk, cfg.workers,
        [&](std::uint64_t idx, long n) {
            rng::NormalStream stream(rng::chunk_seed(cfg.seed, idx));
            Moments m;
            for (long t = 0; t < n; ++t) {
                const auto d = channel::sample_pair(sp, w, stream);
                const double ge = channel::eve_snr_degraded(
                    sp.p_mw, std::norm(d.h_e), sp.n_e_mw, w02);
                m.sum += ge;
                m.sumsq += static_cast<long double>(ge) * ge;
            }
            return m;
        });
}

SignalMcResult run_signal_mc(const channel::SystemParams& sp, long n_symbols,
                             Modulation, const McConfig& cfg) {
    channel::validate(sp);
    if (n_symbols < 1024) {
        throw std::domain_error("run_signal_mc: need at least 1024 symbols");
    }
    const long block = 1024;
    const long nblocks = (n_symbols + block - 1) / block;
    const double alpha = 1.5;  // arbitrary shared order
    const double beta = alpha - sp.delta_alpha;
    const double amp = std::sqrt(0.5);
    long double useful = 0.0L;
    long double interference = 0.0L;
    long double received = 0.0L;
    for (long b = 0; b < nblocks; ++b) {
        std::mt19937_64 gen(rng::chunk_seed(cfg.seed, static_cast<std::uint64_t>(b)));
        wfrft::Signal x(static_cast<std::size_t>(block));
        for (auto& v : x) {
            const std::uint64_t bits = gen();
            v = {(bits & 1) ? amp : -amp, (bits & 2) ? amp : -amp};
        }
        const auto tx = wfrft::wfrft(x, alpha);
        const auto rx = wfrft::wfrft(tx, -beta);
        std::complex<double> dot{0.0, 0.0};
        double ex = 0.0;
        double er = 0.0;
        for (long i = 0; i < block; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            dot += std::conj(x[idx]) * rx[idx];
            ex += std::norm(x[idx]);
            er += std::norm(rx[idx]);
        }
        const double u = std::norm(dot) / ex;  // power landing on the sent signal
        useful += u;
        received += er;
        interference += std::max(0.0, er - u);
    }
    SignalMcResult out;
    out.useful_fraction = static_cast<double>(useful / received);
    // interference below the rounding floor of the projection is a clean
    // round trip, not a measurable ratio
    out.sir = interference > 1e-12L * useful
                  ? static_cast<double>(useful / interference)
                  : std::numeric_limits<double>::infinity();
    out.predicted_fraction = wfrft::mismatch_power_split(sp.delta_alpha).first;
    out.symbols = nblocks * block;
    out.block_len = block;
    return out;
}

double ks_exponential_check(const std::vector<double>& samples) {
    if (samples.size() < 10000) {
        throw std::domain_error(
            "ks_exponential_check: need at least 1e4 samples");
    }
    std::vector<double> s(samples);
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = -std::expm1(-s[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        dmax = std::max(dmax, std::max(hi, lo));
    }
    return dmax;
}

ChiSquareResult chi_square_joint(const channel::SystemParams& sp,
                                 const McConfig& cfg) {
    channel::validate(sp);
    check_config(cfg);
    const auto ms = channel::mean_snrs(sp);
    if (!(ms.gamma_e > 0.0)) {
        throw std::domain_error("chi_square_joint: degenerate eavesdropper SNR");
    }
    const int nb = 20;
    const int n = sp.pairs();
    const double gm = ms.gamma_m;
    const double ge = ms.gamma_e;
    const double rho = sp.rho;
    const double om = 1.0 - rho * rho;
    const double arho = rho * std::sqrt(2.0 / (om * gm));
    const double bcoef = std::sqrt(2.0 / (om * ge));

    // equal-probability edges from the analytic marginals
    std::vector<double> ze(nb + 1), ye(nb + 1);
    ze[0] = 0.0;
    ye[0] = 0.0;
    for (int i = 1; i < nb; ++i) {
        const double q = static_cast<double>(i) / nb;
        ze[i] = -gm * std::log1p(-std::pow(q, 1.0 / n));
        ye[i] = -ge * std::log1p(-q);
    }
    ze[nb] = std::numeric_limits<double>::infinity();
    ye[nb] = std::numeric_limits<double>::infinity();

    // expected probability per cell: integrate the selected-SNR density over
    // the z strip, weighted by the conditional band mass between Marcum tails
    auto band = [&](double z, int j) {
        const double m1 = arho * std::sqrt(z);
        const double top = specfun::marcum_q1(m1, bcoef * std::sqrt(ye[j]));
        const double bot =
            j + 1 < nb ? specfun::marcum_q1(m1, bcoef * std::sqrt(ye[j + 1]))
                       : 0.0;
        return top - bot;
    };
    auto pdf_z = [&](double z) {
        const double u = std::exp(-z / gm);
        return (n / gm) * u * std::pow(1.0 - u, n - 1);
    };
    quad::Options opt;
    opt.rel_tol = 1e-9;
    opt.abs_tol = 1e-14;
    std::vector<double> prob(static_cast<std::size_t>(nb) * nb, 0.0);
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) {
            auto f = [&](double z) { return pdf_z(z) * band(z, j); };
            double p;
            if (i + 1 < nb) {
                p = quad::integrate(f, ze[i], ze[i + 1], opt)
                        .checked("chi_square_joint: cell probability");
            } else {
                auto g = [&](double t) { return f(ze[nb - 1] + t); };
                p = quad::integrate_semi_inf(g, gm, opt)
                        .checked("chi_square_joint: tail cell probability");
            }
            prob[static_cast<std::size_t>(i) * nb + j] = p;
        }
    }

    // sample the same statistic
    std::vector<long> counts(static_cast<std::size_t>(nb) * nb, 0);
    const auto w = channel::corr_weights(sp.rho);
    const double w02 = ms.w02;
    const long nchunks = (cfg.trials + cfg.chunk - 1) / cfg.chunk;
    for (long c = 0; c < nchunks; ++c) {
        rng::NormalStream stream(
            rng::chunk_seed(cfg.seed, static_cast<std::uint64_t>(c)));
        const long lo = c * cfg.chunk;
        const long nt = std::min(cfg.chunk, cfg.trials - lo);
        for (long t = 0; t < nt; ++t) {
            double best = -1.0;
            double he2 = 0.0;
            for (int i = 0; i < n; ++i) {
                const auto d = channel::sample_pair(sp, w, stream);
                const double hm2 = std::norm(d.h_m);
                if (hm2 > best) {
                    best = hm2;
                    he2 = std::norm(d.h_e);
                }
            }
            const double z = sp.p_mw * best / sp.n_m_mw;
            double y;
            if (cfg.eve_model == EveModel::mismatch_sinr) {
                y = channel::eve_snr_degraded(sp.p_mw, he2, sp.n_e_mw, w02);
            } else {
                y = ge * (he2 / sp.sigma_e2);
            }
            const auto iz = static_cast<std::size_t>(
                std::upper_bound(ze.begin() + 1, ze.end(), z) - (ze.begin() + 1));
            const auto iy = static_cast<std::size_t>(
                std::upper_bound(ye.begin() + 1, ye.end(), y) - (ye.begin() + 1));
            counts[std::min<std::size_t>(iz, nb - 1) * nb +
                   std::min<std::size_t>(iy, nb - 1)]++;
        }
    }

    ChiSquareResult out;
    out.cells = nb * nb;
    out.trials = cfg.trials;
    for (int idx = 0; idx < nb * nb; ++idx) {
        const double expd = prob[static_cast<std::size_t>(idx)] * cfg.trials;
        const double diff = counts[static_cast<std::size_t>(idx)] - expd;
        out.stat += diff * diff / expd;
    }
    // Wilson-Hilferty approximation of the 99th chi-square percentile
    const int df = nb * nb - 1;
    const double z99 = 2.3263478740408408;
    const double tq = 2.0 / (9.0 * df);
    const double vv = 1.0 - tq + z99 * std::sqrt(tq);
    out.critical_1pc = df * vv * vv * vv;
    out.pass = out.stat < out.critical_1pc;
    return out;
}

std::vector<double> sample_eve_power(const channel::SystemParams& sp, long n,
                                     std::uint64_t seed) {
    channel::validate(sp);
    if (n < 1) throw std::domain_error("sample_eve_power: n must be >= 1");
    const auto w = channel::corr_weights(sp.rho);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    rng::NormalStream stream(seed);
    for (long i = 0; i < n; ++i) {
        const auto d = channel::sample_pair(sp, w, stream);
        out.push_back(std::norm(d.h_e) / sp.sigma_e2);
    }
    return out;
}

}  // namespace seclab::mc
