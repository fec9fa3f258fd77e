#include "seclab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "seclab/channel.hpp"
#include "seclab/montecarlo.hpp"
#include "seclab/secrecy.hpp"
#include "seclab/selfcheck.hpp"
#include "seclab/sweep.hpp"
#include "seclab/wfrft.hpp"

namespace seclab::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20260816ULL;

std::uint64_t seed_from_env() {
    const char* env = std::getenv("SECRECY_LAB_SEED");
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
        throw std::domain_error(
            "SECRECY_LAB_SEED must be an unsigned integer, got: " +
            std::string(env));
    }
    return static_cast<std::uint64_t>(v);
}

struct ParamFlags {
    double p_dbm = 20.0;
    double sigma_m2_db = -95.0;
    double sigma_e2_db = -100.0;
    double n_m_dbm = -100.0;
    double n_e_dbm = -100.0;
    double rho = 0.5;
    int na = 2;
    int nb = 2;
    double delta_alpha = 0.5;

    channel::SystemParams build() const {
        return channel::params_from_db(p_dbm, sigma_m2_db, sigma_e2_db,
                                       n_m_dbm, n_e_dbm, rho, na, nb,
                                       delta_alpha);
    }
};

void add_param_flags(CLI::App* sub, ParamFlags& pf) {
    sub->add_option("--power-dbm", pf.p_dbm, "transmit power, dBm")
        ->capture_default_str();
    sub->add_option("--sigma-m2-db", pf.sigma_m2_db,
                    "main-channel mean power gain, dB")
        ->capture_default_str();
    sub->add_option("--sigma-e2-db", pf.sigma_e2_db,
                    "eavesdropper mean power gain, dB")
        ->capture_default_str();
    sub->add_option("--noise-m-dbm", pf.n_m_dbm,
                    "main receiver noise power, dBm")
        ->capture_default_str();
    sub->add_option("--noise-e-dbm", pf.n_e_dbm,
                    "eavesdropper noise power, dBm")
        ->capture_default_str();
    sub->add_option("--rho", pf.rho, "gain correlation coefficient in [0, 1)")
        ->capture_default_str();
    sub->add_option("--na", pf.na, "transmit antennas")->capture_default_str();
    sub->add_option("--nb", pf.nb, "receive antennas")->capture_default_str();
    sub->add_option("--delta-alpha", pf.delta_alpha,
                    "demodulation order mismatch")
        ->capture_default_str();
}

struct McFlags {
    long trials = 1000000;
    std::uint64_t seed = kDefaultSeed;
    int workers = 0;
    long chunk = 65536;
    std::string eve_model = "sinr";
};

void add_mc_flags(CLI::App* sub, McFlags& mf, bool with_model) {
    sub->add_option("--trials", mf.trials, "Monte Carlo trials")
        ->capture_default_str();
    sub->add_option("--seed", mf.seed, "base RNG seed")->capture_default_str();
    sub->add_option("--workers", mf.workers, "worker threads (0 = all cores)")
        ->capture_default_str();
    sub->add_option("--chunk", mf.chunk, "trials per deterministic batch")
        ->capture_default_str();
    if (with_model) {
        sub->add_option("--eve-model", mf.eve_model,
                        "per-trial eavesdropper SNR: sinr | exponential")
            ->capture_default_str();
    }
}

mc::McConfig build_mc(const McFlags& mf) {
    mc::McConfig cfg;
    cfg.trials = mf.trials;
    cfg.seed = mf.seed;
    cfg.workers = mf.workers;
    cfg.chunk = mf.chunk;
    if (mf.eve_model == "sinr") {
        cfg.eve_model = mc::EveModel::mismatch_sinr;
    } else if (mf.eve_model == "exponential") {
        cfg.eve_model = mc::EveModel::exponential_mean;
    } else {
        throw CLI::ValidationError(
            "--eve-model", "unknown model '" + mf.eve_model +
                               "' (expected sinr or exponential)");
    }
    return cfg;
}

sweep::Methods parse_methods(const std::string& list) {
    sweep::Methods m{false, false, false};
    std::istringstream is(list);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item == "closed_form") {
            m.closed_form = true;
        } else if (item == "quadrature") {
            m.quadrature = true;
        } else if (item == "monte_carlo") {
            m.monte_carlo = true;
        } else {
            throw CLI::ValidationError(
                "--methods",
                "unknown method '" + item +
                    "' (expected closed_form, quadrature, monte_carlo)");
        }
    }
    if (!m.closed_form && !m.quadrature && !m.monte_carlo) {
        throw CLI::ValidationError("--methods", "no methods selected");
    }
    return m;
}

void enable_config(CLI::App* sub, std::string& path_slot) {
    sub->add_option("--config", path_slot,
                    "key=value file mirroring the flags; explicit flags win");
}

// The library only reads a config registered on the root app, and here every
// flag lives on a subcommand, so the file is applied by hand before the
// subcommand acts on its bound values.
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream fh(path);
    if (!fh) {
        throw CLI::ValidationError("--config", "cannot open '" + path + "'");
    }
    const auto trim = [](const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string line;
    int lineno = 0;
    while (std::getline(fh, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError(
                "--config",
                path + ":" + std::to_string(lineno) + " is not key=value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        auto* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config") {
            throw CLI::ValidationError(
                "--config", path + ":" + std::to_string(lineno) +
                                " unknown key '" + key + "'");
        }
        if (opt->count() > 0) continue;  // explicit flags win
        opt->add_result(value);
        opt->run_callback();
    }
}

void cmd_weights(std::ostream& out, double alpha) {
    const auto wv = wfrft::weights(alpha);
    out << "order " << alpha << " reduced to " << wv.order << "\n";
    out << std::left << std::setw(4) << "p" << std::setw(24) << "re"
        << std::setw(24) << "im" << "|w|^2" << "\n";
    double power = 0.0;
    for (int p = 0; p < 4; ++p) {
        out << std::left << std::setw(4) << p << std::setw(24)
            << wv.w[p].real() << std::setw(24) << wv.w[p].imag()
            << std::norm(wv.w[p]) << "\n";
        power += std::norm(wv.w[p]);
    }
    out << "total weight power " << power << "\n";
    const auto split = wfrft::mismatch_power_split(alpha);
    out << "matched power fraction " << split.first
        << ", interference fraction " << split.second << "\n";
}

void cmd_asc(std::ostream& out, const channel::SystemParams& sp,
             const sweep::Methods& methods, const mc::McConfig& mc_cfg,
             const std::string& out_csv) {
    const auto ms = channel::mean_snrs(sp);
    out << "link: N = " << sp.pairs() << " selectable pairs, rho = " << sp.rho
        << ", delta_alpha = " << sp.delta_alpha << "\n";
    out << "mean SNRs: main " << ms.gamma_m << ", eavesdropper " << ms.gamma_e
        << " (matched " << ms.a << ", matched fraction " << ms.w02 << ")\n";
    sweep::Table t;
    t.axis = "p_dbm";
    t.x = {10.0 * std::log10(sp.p_mw)};
    t.cells.emplace_back();
    auto emit = [&](const std::string& name, double v) {
        t.columns.push_back(name);
        t.cells[0].push_back(v);
    };
    out.precision(12);
    if (methods.closed_form) {
        const auto r = secrecy::asc_closed_form(sp);
        out << "closed_form   " << r.bits << " bits/s/Hz  (terms "
            << r.diag.term_magnitudes.size() << ", err est "
            << r.diag.err_estimate << ")\n";
        emit("asc_closed_form", r.bits);
    }
    if (methods.quadrature) {
        const auto r = secrecy::asc_quadrature(sp);
        out << "quadrature    " << r.bits << " bits/s/Hz  (" << r.diag.note
            << ")\n";
        emit("asc_quadrature", r.bits);
    }
    if (methods.monte_carlo) {
        const auto est = mc::run_asc_mc(sp, mc_cfg);
        out << "monte_carlo   " << est.mean << " bits/s/Hz  (se "
            << est.std_error << ", trials " << est.trials << ")\n";
        emit("asc_monte_carlo", est.mean);
        emit("asc_monte_carlo_se", est.std_error);
    }
    if (!out_csv.empty()) {
        std::ofstream fh(out_csv, std::ios::binary);
        if (!fh) throw std::runtime_error("cannot open " + out_csv);
        sweep::write_csv(t, fh);
        out << "wrote " << out_csv << "\n";
    }
}

void cmd_figure(std::ostream& out, const std::string& preset,
                const std::string& out_dir, double step,
                const sweep::Methods& methods, const mc::McConfig& mc_cfg) {
    sweep::FigureSpec spec;
    spec.preset = preset;
    spec.step = step;
    spec.methods = methods;
    spec.mc = mc_cfg;
    const auto table = sweep::run_figure(spec);
    std::filesystem::create_directories(out_dir);
    const auto csv_path = std::filesystem::path(out_dir) / (preset + ".csv");
    {
        std::ofstream fh(csv_path, std::ios::binary);
        if (!fh) throw std::runtime_error("cannot open " + csv_path.string());
        sweep::write_csv(table, fh);
    }
    out << "wrote " << csv_path.string() << "\n";
    const auto py_path =
        std::filesystem::path(out_dir) / (preset + "_plot.py");
    {
        std::ofstream fh(py_path, std::ios::binary);
        if (!fh) throw std::runtime_error("cannot open " + py_path.string());
        fh << sweep::plot_script(table, preset + ".csv",
                                 sweep::preset_title(preset),
                                 sweep::preset_ylabel(preset));
    }
    out << "wrote " << py_path.string() << "\n";
}

int cmd_validate(std::ostream& out, const std::string& level,
                 const selfcheck::SuiteConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<selfcheck::CheckResult> results;
    if (level == "fast") {
        results = selfcheck::run_fast_suite(cfg);
    } else if (level == "full") {
        results = selfcheck::run_full_suite(cfg);
    } else {
        throw CLI::ValidationError("--level",
                                   "expected fast or full, got '" + level + "'");
    }
    int passed = 0;
    for (const auto& r : results) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
            << "\n";
        if (r.pass) ++passed;
    }
    const auto dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    out << "validate: " << passed << " of " << results.size()
        << " checks passed (level " << level << ", " << std::fixed
        << std::setprecision(1) << dt << " s)\n";
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    CLI::App app{
        "secrecy_lab: physical-layer secrecy of a fading wiretap link with "
        "antenna selection and order-mismatch precoding"};
    app.require_subcommand(1);
    int rc = 0;

    std::uint64_t env_seed = kDefaultSeed;
    try {
        env_seed = seed_from_env();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    // weights -------------------------------------------------------------
    auto* sub_w = app.add_subcommand(
        "weights", "print the four transform weights of an order");
    double alpha = 0.5;
    std::string cfg_w;
    sub_w->add_option("--alpha", alpha, "transform order")
        ->capture_default_str();
    enable_config(sub_w, cfg_w);
    sub_w->callback([&]() {
        apply_config(sub_w, cfg_w);
        cmd_weights(out, alpha);
    });

    // wfrft ----------------------------------------------------------------
    auto* sub_t = app.add_subcommand(
        "wfrft", "measure the modulated power split under order mismatch");
    ParamFlags pf_t;
    McFlags mf_t;
    mf_t.seed = env_seed;
    long symbols = 102400;
    add_param_flags(sub_t, pf_t);
    add_mc_flags(sub_t, mf_t, /*with_model=*/false);
    std::string cfg_t;
    sub_t->add_option("--symbols", symbols, "modulated symbols (>= 1024)")
        ->capture_default_str();
    enable_config(sub_t, cfg_t);
    sub_t->callback([&]() {
        apply_config(sub_t, cfg_t);
        const auto sp = pf_t.build();
        const auto r = mc::run_signal_mc(sp, symbols, mc::Modulation::qpsk,
                                         build_mc(mf_t));
        out.precision(12);
        out << "delta_alpha " << sp.delta_alpha << ", symbols " << r.symbols
            << " (blocks of " << r.block_len << ")\n";
        out << "useful fraction   " << r.useful_fraction << "\n";
        out << "predicted |w0|^2  " << r.predicted_fraction << "\n";
        out << "gap               "
            << std::fabs(r.useful_fraction - r.predicted_fraction) << "\n";
        out << "signal/interference ";
        if (std::isinf(r.sir)) {
            out << "inf (orders matched)\n";
        } else {
            out << 10.0 * std::log10(r.sir) << " dB\n";
        }
    });

    // asc -------------------------------------------------------------------
    auto* sub_a = app.add_subcommand(
        "asc", "average secrecy capacity at one operating point");
    ParamFlags pf_a;
    McFlags mf_a;
    mf_a.seed = env_seed;
    std::string methods_a = "closed_form,quadrature,monte_carlo";
    std::string out_a;
    add_param_flags(sub_a, pf_a);
    add_mc_flags(sub_a, mf_a, /*with_model=*/true);
    sub_a->add_option("--methods", methods_a,
                      "comma list: closed_form,quadrature,monte_carlo")
        ->capture_default_str();
    std::string cfg_a;
    sub_a->add_option("--out", out_a, "also write the values to this CSV");
    enable_config(sub_a, cfg_a);
    sub_a->callback([&]() {
        apply_config(sub_a, cfg_a);
        cmd_asc(out, pf_a.build(), parse_methods(methods_a), build_mc(mf_a),
                out_a);
    });

    // mc ---------------------------------------------------------------------
    auto* sub_m = app.add_subcommand(
        "mc", "Monte Carlo secrecy estimate at one operating point");
    ParamFlags pf_m;
    McFlags mf_m;
    mf_m.seed = env_seed;
    std::string cfg_m;
    add_param_flags(sub_m, pf_m);
    add_mc_flags(sub_m, mf_m, /*with_model=*/true);
    enable_config(sub_m, cfg_m);
    sub_m->callback([&]() {
        apply_config(sub_m, cfg_m);
        const auto est = mc::run_asc_mc(pf_m.build(), build_mc(mf_m));
        out.precision(12);
        out << "monte_carlo " << est.mean << " bits/s/Hz (se " << est.std_error
            << ", trials " << est.trials << ")\n";
    });

    // figure ------------------------------------------------------------------
    auto* sub_f =
        app.add_subcommand("figure", "reproduce a preset sweep as CSV + plot");
    std::string preset;
    std::string out_dir = ".";
    double step = 0.0;
    std::string methods_f = "closed_form,monte_carlo";
    McFlags mf_f;
    mf_f.seed = env_seed;
    sub_f->add_option("--preset", preset, "fig4|fig7|fig8|fig9|fig10|fig11")
        ->required()
        ->check(CLI::IsMember(sweep::preset_names()));
    sub_f->add_option("--out", out_dir, "output directory")
        ->capture_default_str();
    sub_f->add_option("--step", step, "axis step (0 = preset default)")
        ->capture_default_str();
    sub_f->add_option("--methods", methods_f,
                      "comma list: closed_form,quadrature,monte_carlo")
        ->capture_default_str();
    std::string cfg_f;
    add_mc_flags(sub_f, mf_f, /*with_model=*/true);
    enable_config(sub_f, cfg_f);
    sub_f->callback([&]() {
        apply_config(sub_f, cfg_f);
        cmd_figure(out, preset, out_dir, step, parse_methods(methods_f),
                   build_mc(mf_f));
    });

    // validate ------------------------------------------------------------------
    auto* sub_v = app.add_subcommand(
        "validate", "run the built-in numerical validation suite");
    std::string level = "fast";
    selfcheck::SuiteConfig vcfg;
    vcfg.seed = env_seed;
    sub_v->add_option("--level", level, "fast | full")->capture_default_str();
    sub_v->add_option("--seed", vcfg.seed, "base RNG seed")
        ->capture_default_str();
    sub_v->add_option("--workers", vcfg.workers,
                      "worker threads (0 = all cores)")
        ->capture_default_str();
    std::string cfg_v;
    sub_v->add_flag("--canary", vcfg.canary,
                    "flip the degraded-mean sign internally; the suite must "
                    "then fail");
    enable_config(sub_v, cfg_v);
    sub_v->callback([&]() {
        apply_config(sub_v, cfg_v);
        rc = cmd_validate(out, level, vcfg);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace seclab::cli
