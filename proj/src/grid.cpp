#include "gridpg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gridpg/common.hpp"

namespace gridpg {

int Grid::locate(double x) const {
    if (x < lo) return 0;
    if (x >= hi) return cell_count - 1;
    const int n = 1 + static_cast<int>((x - lo) / finite_width);
    return std::min(n, cell_count - 2);
}

double Grid::lower_edge(int n) const {
    if (n == 0) return -std::numeric_limits<double>::infinity();
    return lo + (n - 1) * finite_width;
}

double Grid::upper_edge(int n) const {
    if (n == cell_count - 1) return std::numeric_limits<double>::infinity();
    return lo + n * finite_width;
}

Grid build_grid(double lo, double hi, int cells) {
    if (cells < 3) throw ConfigError("build_grid: need at least 3 cells (one finite, two outer)");
    if (!(lo < hi)) throw ConfigError("build_grid: lo must be less than hi");

    Grid g;
    g.lo = lo;
    g.hi = hi;
    g.cell_count = cells;
    g.finite_width = (hi - lo) / (cells - 2);
    g.midpoints.resize(cells);
    g.lengths.assign(cells, g.finite_width);

    g.midpoints[0] = lo - 0.5 * g.finite_width;
    g.midpoints[cells - 1] = hi + 0.5 * g.finite_width;
    for (int n = 1; n <= cells - 2; ++n) g.midpoints[n] = lo + (n - 0.5) * g.finite_width;
    return g;
}

}  // namespace gridpg
