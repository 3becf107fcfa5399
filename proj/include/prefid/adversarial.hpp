#pragma once

// Rationalizations that look like total indifference: the interval is cut
// into small cells, each holding at most one observed alternative, and every
// cell contains both a very good and a very bad point.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/extension.hpp"
#include "prefid/preferences.hpp"
#include "prefid/revealed.hpp"

namespace prefid {

struct Cell {
    std::size_t begin = 0;  // first lattice index
    std::size_t end = 0;    // one past the last
};

/// Largest cell diameter allowed after k experiments.
inline double prop1_cell_diameter(std::size_t k, double step) {
    return std::max(1.0 / (2.0 * static_cast<double>(k)), 2.0 * step);
}

/// Partition of 0..n-1 into runs of 2..max_len points where a run holding a
/// data point has at least 3 points and no run holds two data points.
inline std::vector<Cell> partition_cells(const std::vector<bool>& is_data, std::size_t max_len) {
    const std::size_t n = is_data.size();
    std::vector<std::size_t> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (is_data[i] ? 1 : 0);
    std::vector<char> ok(n + 1, 0);
    std::vector<std::size_t> choice(n + 1, 0);
    ok[0] = 1;
    for (std::size_t e = 2; e <= n; ++e) {
        for (std::size_t len = std::min(max_len, e); len >= 2; --len) {
            const std::size_t b = e - len;
            if (!ok[b]) continue;
            const std::size_t data = prefix[e] - prefix[b];
            if (data > 1 || (data == 1 && len < 3)) continue;
            ok[e] = 1;
            choice[e] = len;
            break;
        }
    }
    if (!ok[n]) throw ResolutionError("grid too coarse to separate the observed alternatives into cells");
    std::vector<Cell> cells;
    for (std::size_t e = n; e > 0; e -= choice[e]) cells.push_back({e - choice[e], e});
    std::reverse(cells.begin(), cells.end());
    return cells;
}

struct Prop1Result {
    Preference preference;
    std::vector<Cell> cells;
    std::vector<double> values;
    double cell_diameter_bound = 0.0;
};

/// Requires a one-dimensional euclidean grid.
inline Prop1Result prop1_construction(const ExperimentSequence& e, const ChoiceSequence& c) {
    const auto& space = *e.space;
    const auto& d = space.descriptor();
    if (space.kind() != SpaceKind::euclidean_grid || d.explicit_points || d.dims != 1) {
        throw DomainError("the cell construction needs a one-dimensional grid");
    }
    const std::size_t k = c.size();
    if (k == 0) throw DomainError("the cell construction needs at least one experiment");
    const std::size_t n = space.size();
    const double step = space.grid_step();
    const double diam = prop1_cell_diameter(k, step);
    const auto max_len = static_cast<std::size_t>(std::floor(diam / step + 1e-9)) + 1;

    // Observed ranking, made into values in [0, 1].
    const Preference observed = canonical_extension(revealed_relation(e, c, Monotonicity::none));
    std::vector<bool> is_data(n, false);
    for (std::size_t i = 0; i < k; ++i) {
        is_data[e.pairs[i].first] = true;
        is_data[e.pairs[i].second] = true;
    }
    int top = 0;
    for (std::size_t x = 0; x < n; ++x) {
        if (is_data[x]) top = std::max(top, observed.rank(x));
    }

    Prop1Result out;
    out.cell_diameter_bound = diam;
    out.cells = partition_cells(is_data, max_len);
    out.values.assign(n, 0.0);
    for (const auto& cell : out.cells) {
        std::vector<std::size_t> others;
        for (std::size_t x = cell.begin; x < cell.end; ++x) {
            if (is_data[x]) {
                out.values[x] = top == 0 ? 0.5 : static_cast<double>(observed.rank(x)) / top;
            } else {
                others.push_back(x);
            }
        }
        const double center = 0.5 * static_cast<double>(cell.begin + cell.end - 1);
        std::stable_sort(others.begin(), others.end(), [&](std::size_t a, std::size_t b) {
            return std::abs(static_cast<double>(a) - center) < std::abs(static_cast<double>(b) - center);
        });
        out.values[others[0]] = 2.0;
        out.values[others[1]] = -2.0;
    }
    out.preference = from_utility(e.space, out.values);
    return out;
}

}  // namespace prefid
