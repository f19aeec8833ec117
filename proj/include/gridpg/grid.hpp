#pragma once

#include <vector>

namespace gridpg {

// One-dimensional state-space partition: N-2 equal-width finite cells over
// [lo, hi] flanked by two semi-infinite outer cells. Outer cells carry the
// mean finite length and a midpoint half a width beyond the boundary.
// Cell intervals are half-open [edge, next_edge), so every real lands in
// exactly one cell.
struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    int cell_count = 0;      // N, outer cells included
    double finite_width = 0.0;
    std::vector<double> midpoints;  // N
    std::vector<double> lengths;    // N

    int locate(double x) const;

    // Finite boundaries of cell n; outer cells return an infinite side.
    double lower_edge(int n) const;
    double upper_edge(int n) const;

    bool is_outer(int n) const { return n == 0 || n == cell_count - 1; }
};

// lo < hi, N >= 3.
Grid build_grid(double lo, double hi, int cells);

// Joint (cell, regime) alphabet used by the HMM approximation. The fixed
// ordering is joint = (regime - 1) * N + cell with 0-based cells, so tables
// are reproducible byte-for-byte across runs.
inline int joint_index(int cell, int regime, int cell_count) {
    return (regime - 1) * cell_count + cell;
}
inline int cell_of_joint(int joint, int cell_count) { return joint % cell_count; }
inline int regime_of_joint(int joint, int cell_count) { return joint / cell_count + 1; }

}  // namespace gridpg
