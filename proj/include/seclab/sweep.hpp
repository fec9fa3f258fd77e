#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seclab/channel.hpp"
#include "seclab/montecarlo.hpp"

namespace seclab::sweep {

struct Methods {
    bool closed_form = true;
    bool quadrature = false;
    bool monte_carlo = true;
};

// One sweep result: an axis column plus named value columns.
struct Table {
    std::string axis;
    std::vector<std::string> columns;
    std::vector<double> x;
    std::vector<std::vector<double>> cells;  // cells[row][column]
};

struct FigureSpec {
    std::string preset;  // fig4 | fig7 | fig8 | fig9 | fig10 | fig11
    double step = 0.0;   // 0 = preset default
    Methods methods;
    mc::McConfig mc;
};

const std::vector<std::string>& preset_names();
std::string preset_title(const std::string& preset);
std::string preset_ylabel(const std::string& preset);

// Compute a preset sweep.  Monte Carlo columns get a trailing "_se" column;
// per-point seeds derive from mc.seed, so the table is reproducible for any
// worker count.
Table run_figure(const FigureSpec& spec);

// UTF-8, LF line endings, %.17g values.
void write_csv(const Table& t, std::ostream& out);
Table read_csv(std::istream& in);

// Standalone matplotlib script that re-draws the table from its CSV.
std::string plot_script(const Table& t, const std::string& csv_name,
                        const std::string& title, const std::string& ylabel);

}  // namespace seclab::sweep
