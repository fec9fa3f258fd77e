#include "seclab/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "seclab/rng.hpp"
#include "seclab/secrecy.hpp"
#include "seclab/wfrft.hpp"

namespace seclab::sweep {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> grid(double lo, double hi, double step, bool inclusive) {
    // never step past hi: a coarse step that does not divide the range
    // truncates instead of overshooting (axis values feed validators)
    const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) {
        if (!inclusive && i == n) break;
        x.push_back(lo + static_cast<double>(i) * step);
    }
    return x;
}

// Reference link budget shared by all presets (dBm / dB figures).
channel::SystemParams link_params(double p_dbm, double rho, int na, int nb,
                                  double delta_alpha) {
    return channel::params_from_db(p_dbm, -95.0, -100.0, -100.0, -100.0, rho,
                                   na, nb, delta_alpha);
}

struct Curve {
    std::string label;
    channel::SystemParams sp;
};

enum class Axis { delta_alpha, rho, p_dbm };

void apply_axis(channel::SystemParams& sp, Axis axis, double v) {
    switch (axis) {
        case Axis::delta_alpha:
            sp.delta_alpha = wfrft::reduce_order(v);
            break;
        case Axis::rho:
            sp.rho = v;
            break;
        case Axis::p_dbm:
            sp.p_mw = std::pow(10.0, v / 10.0);
            break;
    }
}

Table secrecy_sweep(const std::string& axis_name, Axis axis,
                    const std::vector<double>& xs,
                    const std::vector<Curve>& curves, const Methods& methods,
                    const mc::McConfig& mc_cfg) {
    Table t;
    t.axis = axis_name;
    t.x = xs;
    for (const auto& c : curves) {
        if (methods.closed_form) t.columns.push_back(c.label + "_closed_form");
        if (methods.quadrature) t.columns.push_back(c.label + "_quadrature");
        if (methods.monte_carlo) {
            t.columns.push_back(c.label + "_monte_carlo");
            t.columns.push_back(c.label + "_monte_carlo_se");
        }
    }
    t.cells.assign(xs.size(), std::vector<double>(t.columns.size(), 0.0));
    std::uint64_t point = 0;
    for (std::size_t r = 0; r < xs.size(); ++r) {
        std::size_t col = 0;
        for (const auto& c : curves) {
            channel::SystemParams sp = c.sp;
            apply_axis(sp, axis, xs[r]);
            if (methods.closed_form) {
                t.cells[r][col++] = secrecy::asc_closed_form(sp).bits;
            }
            if (methods.quadrature) {
                t.cells[r][col++] = secrecy::asc_quadrature(sp).bits;
            }
            if (methods.monte_carlo) {
                mc::McConfig cfg = mc_cfg;
                cfg.seed = rng::chunk_seed(mc_cfg.seed, point);
                const auto est = mc::run_asc_mc(sp, cfg);
                t.cells[r][col++] = est.mean;
                t.cells[r][col++] = est.std_error;
            }
            ++point;
        }
    }
    return t;
}

Table figure_weights(double step) {
    Table t;
    t.axis = "alpha";
    t.columns = {"w0_sq", "w1_sq", "w2_sq", "w3_sq"};
    t.x = grid(0.0, 4.0, step, /*inclusive=*/false);
    t.cells.assign(t.x.size(), std::vector<double>(4, 0.0));
    for (std::size_t r = 0; r < t.x.size(); ++r) {
        const auto wv = wfrft::weights(t.x[r]);
        for (int p = 0; p < 4; ++p) t.cells[r][p] = std::norm(wv.w[p]);
    }
    return t;
}

Table figure_eve_mean(double step, const Methods& methods,
                      const mc::McConfig& mc_cfg) {
    Table t;
    t.axis = "delta_alpha";
    t.columns = {"gamma_e_analytic"};
    if (methods.monte_carlo) {
        t.columns.push_back("gamma_e_mc");
        t.columns.push_back("gamma_e_mc_se");
    }
    t.x = grid(0.0, 4.0, step, /*inclusive=*/true);
    t.cells.assign(t.x.size(), std::vector<double>(t.columns.size(), 0.0));
    for (std::size_t r = 0; r < t.x.size(); ++r) {
        auto sp = link_params(20.0, 0.5, 1, 1, t.x[r]);
        t.cells[r][0] = channel::mean_snrs(sp).gamma_e;
        if (methods.monte_carlo) {
            mc::McConfig cfg = mc_cfg;
            cfg.seed = rng::chunk_seed(mc_cfg.seed, static_cast<std::uint64_t>(r));
            const auto est = mc::run_eve_snr_mc(sp, cfg);
            t.cells[r][1] = est.mean;
            t.cells[r][2] = est.std_error;
        }
    }
    return t;
}

std::vector<Curve> antenna_curves(double p_dbm, double rho, double da) {
    return {{"n1", link_params(p_dbm, rho, 1, 1, da)},
            {"n2", link_params(p_dbm, rho, 1, 2, da)},
            {"n4", link_params(p_dbm, rho, 2, 2, da)},
            {"n16", link_params(p_dbm, rho, 4, 4, da)}};
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig4", "fig7",  "fig8",
                                                   "fig9", "fig10", "fig11"};
    return names;
}

std::string preset_title(const std::string& preset) {
    if (preset == "fig4") return "transform weight power split vs order";
    if (preset == "fig7") return "mean eavesdropper SNR vs order mismatch";
    if (preset == "fig8")
        return "secrecy capacity vs order mismatch, antenna selection";
    if (preset == "fig9") return "secrecy capacity vs channel correlation";
    if (preset == "fig10")
        return "secrecy capacity vs order mismatch across correlation";
    if (preset == "fig11") return "secrecy capacity vs transmit power";
    throw std::domain_error("unknown preset: " + preset);
}

std::string preset_ylabel(const std::string& preset) {
    if (preset == "fig4") return "squared weight magnitude";
    if (preset == "fig7") return "mean eavesdropper SNR (linear)";
    preset_title(preset);  // validates the name
    return "average secrecy capacity (bits/s/Hz)";
}

Table run_figure(const FigureSpec& spec) {
    const double step = spec.step;
    if (step < 0.0 || !std::isfinite(step)) {
        throw std::domain_error("run_figure: step must be positive");
    }
    if (spec.preset == "fig4") {
        return figure_weights(step > 0.0 ? step : 0.01);
    }
    if (spec.preset == "fig7") {
        return figure_eve_mean(step > 0.0 ? step : 0.05, spec.methods, spec.mc);
    }
    if (spec.preset == "fig8") {
        return secrecy_sweep("delta_alpha", Axis::delta_alpha,
                             grid(0.0, 4.0, step > 0.0 ? step : 0.05, true),
                             antenna_curves(20.0, 0.5, 0.0), spec.methods,
                             spec.mc);
    }
    if (spec.preset == "fig9") {
        return secrecy_sweep("rho", Axis::rho,
                             grid(0.0, 0.95, step > 0.0 ? step : 0.05, true),
                             antenna_curves(10.0, 0.0, 1.0), spec.methods,
                             spec.mc);
    }
    if (spec.preset == "fig10") {
        std::vector<Curve> curves;
        for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            std::ostringstream os;
            os << "rho" << rho;
            curves.push_back({os.str(), link_params(10.0, rho, 2, 2, 0.0)});
        }
        return secrecy_sweep("delta_alpha", Axis::delta_alpha,
                             grid(0.0, 4.0, step > 0.0 ? step : 0.05, true),
                             curves, spec.methods, spec.mc);
    }
    if (spec.preset == "fig11") {
        std::vector<Curve> curves;
        for (double da : {0.2, 0.5, 0.8, 1.0}) {
            std::ostringstream os;
            os << "da" << da;
            curves.push_back({os.str(), link_params(0.0, 0.5, 2, 2, da)});
        }
        return secrecy_sweep("p_dbm", Axis::p_dbm,
                             grid(0.0, 30.0, step > 0.0 ? step : 2.0, true),
                             curves, spec.methods, spec.mc);
    }
    throw std::domain_error("unknown preset: " + spec.preset);
}

void write_csv(const Table& t, std::ostream& out) {
    out << t.axis;
    for (const auto& c : t.columns) out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < t.x.size(); ++r) {
        out << fmt(t.x[r]);
        for (double v : t.cells[r]) out << ',' << fmt(v);
        out << '\n';
    }
}

Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("read_csv: empty input");
    }
    {
        std::istringstream hs(line);
        std::string cell;
        bool first = true;
        while (std::getline(hs, cell, ',')) {
            if (first) {
                t.axis = cell;
                first = false;
            } else {
                t.columns.push_back(cell);
            }
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != t.columns.size() + 1) {
            throw std::runtime_error("read_csv: ragged row");
        }
        t.x.push_back(row[0]);
        t.cells.emplace_back(row.begin() + 1, row.end());
    }
    return t;
}

std::string plot_script(const Table& t, const std::string& csv_name,
                        const std::string& title, const std::string& ylabel) {
    std::ostringstream os;
    std::string png = csv_name;
    const auto dot = png.rfind('.');
    if (dot != std::string::npos) png.resize(dot);
    png += ".png";
    os << "#!/usr/bin/env python3\n"
       << "\"\"\"Re-draw '" << title << "' from " << csv_name << ".\"\"\"\n"
       << "import csv\n"
       << "import os\n"
       << "\n"
       << "import matplotlib\n"
       << "\n"
       << "matplotlib.use(\"Agg\")\n"
       << "import matplotlib.pyplot as plt\n"
       << "\n"
       << "here = os.path.dirname(os.path.abspath(__file__))\n"
       << "with open(os.path.join(here, \"" << csv_name
       << "\"), newline=\"\") as fh:\n"
       << "    rows = list(csv.reader(fh))\n"
       << "header = rows[0]\n"
       << "data = [[float(v) for v in row] for row in rows[1:]]\n"
       << "cols = {name: [row[i] for row in data] for i, name in "
          "enumerate(header)}\n"
       << "x = cols[header[0]]\n"
       << "\n"
       << "fig, ax = plt.subplots(figsize=(7.2, 4.8))\n"
       << "for name in header[1:]:\n"
       << "    if name.endswith(\"_se\"):\n"
       << "        continue\n"
       << "    se = cols.get(name + \"_se\")\n"
       << "    if se is None:\n"
       << "        ax.plot(x, cols[name], label=name)\n"
       << "    else:\n"
       << "        ax.errorbar(x, cols[name], yerr=[3.0 * s for s in se],\n"
       << "                    fmt=\"o\", ms=2.5, capsize=2, label=name)\n"
       << "ax.set_xlabel(\"" << t.axis << "\")\n"
       << "ax.set_ylabel(\"" << ylabel << "\")\n"
       << "ax.set_title(\"" << title << "\")\n"
       << "ax.grid(True, alpha=0.3)\n"
       << "ax.legend(fontsize=8)\n"
       << "fig.tight_layout()\n"
       << "out = os.path.join(here, \"" << png << "\")\n"
       << "fig.savefig(out, dpi=160)\n"
       << "print(\"wrote\", out)\n";
    return os.str();
}

}  // namespace seclab::sweep
