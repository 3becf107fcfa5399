#pragma once

// Rationalization within parametric classes (expected utility on lotteries,
// Lipschitz-banded utilities on grids) by maximum-margin linear programs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/lp.hpp"
#include "prefid/preferences.hpp"
#include "prefid/revealed.hpp"

namespace prefid {

inline constexpr double margin_tolerance = 1e-9;

struct LinearFit {
    bool feasible = false;
    /// No strict comparison in the data, so the margin is meaningless.
    bool degenerate = false;
    double margin = 0.0;
    std::vector<double> values;  // index vector (EU) or utility per point
    std::optional<Preference> preference;
};

namespace detail {

struct Row {
    std::vector<double> diff;  // coefficients of u in u.diff >= strict ? t : 0
    bool strict = false;

    friend bool operator<(const Row& a, const Row& b) {
        if (a.strict != b.strict) return a.strict < b.strict;
        return a.diff < b.diff;
    }
};

inline std::vector<Row> unique_rows(std::vector<Row> rows) {
    for (auto& r : rows) {
        for (double& v : r.diff) v = std::round(v * 1e12) / 1e12 + 0.0;
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [](const Row& a, const Row& b) { return a.strict == b.strict && a.diff == b.diff; }),
               rows.end());
    return rows;
}

}  // namespace detail

/// Expected-utility index u on the prizes: weak edges p >= q need u.p >= u.q,
/// strict ones u.p >= u.q + t with t maximized, subject to sum u = 0 and
/// |u_i| <= 1; the result is scaled to unit length.
inline LinearFit eu_rationalize(const ExperimentSequence& e, const ChoiceSequence& c) {
    const auto& space = *e.space;
    if (space.kind() != SpaceKind::lottery_simplex) throw DomainError("expected utility needs a lottery space");
    const std::size_t m = space.descriptor().num_prizes;
    const RevealedRelation rel = revealed_relation(e, c, Monotonicity::none);

    std::vector<detail::Row> rows;
    for (const auto& edge : rel.data_edges()) {
        detail::Row r;
        r.diff.resize(m);
        for (std::size_t i = 0; i < m; ++i) r.diff[i] = space.point(edge.from)[i] - space.point(edge.to)[i];
        r.strict = edge.strength == EdgeStrength::strict;
        rows.push_back(std::move(r));
    }
    rows = detail::unique_rows(std::move(rows));
    const bool any_strict = std::any_of(rows.begin(), rows.end(), [](const detail::Row& r) { return r.strict; });

    // Variables v = u + 1 (m of them) and t.
    const std::size_t nv = m + 1;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (const auto& r : rows) {
        std::vector<double> a(nv, 0.0);
        double shift = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            a[i] = -r.diff[i];
            shift += r.diff[i];
        }
        if (r.strict) a[m] = 1.0;
        A.push_back(std::move(a));
        b.push_back(-shift);
    }
    {
        std::vector<double> up(nv, 0.0);
        std::vector<double> down(nv, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            up[i] = 1.0;
            down[i] = -1.0;
        }
        A.push_back(up);
        b.push_back(static_cast<double>(m));
        A.push_back(down);
        b.push_back(-static_cast<double>(m));
    }
    for (std::size_t i = 0; i < nv; ++i) {
        std::vector<double> a(nv, 0.0);
        a[i] = 1.0;
        A.push_back(std::move(a));
        b.push_back(i < m ? 2.0 : 1.0);
    }
    std::vector<double> obj(nv, 0.0);
    if (any_strict) obj[m] = 1.0;
    const lp::Solution sol = lp::maximize(A, b, obj);

    LinearFit out;
    if (sol.status != lp::Status::optimal) return out;
    out.margin = any_strict ? sol.x[m] : 0.0;
    out.degenerate = !any_strict;
    if (any_strict && out.margin <= margin_tolerance) return out;
    out.feasible = true;
    out.values.resize(m);
    double norm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        out.values[i] = sol.x[i] - 1.0;
        norm += out.values[i] * out.values[i];
    }
    norm = std::sqrt(norm);
    if (norm > 1e-12) {
        for (double& v : out.values) v /= norm;
        out.margin /= norm;
    } else {
        std::fill(out.values.begin(), out.values.end(), 0.0);
    }
    std::vector<double> util(space.size());
    for (std::size_t x = 0; x < space.size(); ++x) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += out.values[i] * space.point(x)[i];
        util[x] = s;
    }
    out.preference = from_utility(e.space, util);
    return out;
}

/// Utility on a euclidean grid whose increments between lattice neighbours
/// along each axis lie in [a*h, b*h], consistent with the revealed data
/// (strict comparisons with maximized margin).
inline LinearFit lipschitz_rationalize(const ExperimentSequence& e, const ChoiceSequence& c, double a, double b) {
    const auto& space = *e.space;
    if (space.kind() != SpaceKind::euclidean_grid || space.descriptor().explicit_points) {
        throw DomainError("the Lipschitz class needs a euclidean grid");
    }
    if (!(0.0 < a && a < b)) throw ConfigError("Lipschitz band needs 0 < a < b");
    const std::size_t n = space.size();
    const std::size_t dims = space.descriptor().dims;
    const RevealedRelation rel = revealed_relation(e, c, Monotonicity::none);

    const std::size_t nv = n + 1;
    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    auto add_row = [&](std::size_t hi, std::size_t lo, double t_coef, double bound) {
        // u(lo) - u(hi) + t_coef * t <= bound
        std::vector<double> row(nv, 0.0);
        row[lo] += 1.0;
        row[hi] -= 1.0;
        row[n] = t_coef;
        A.push_back(std::move(row));
        rhs.push_back(bound);
    };
    for (std::size_t x = 0; x < n; ++x) {
        const auto lx = space.lattice(x);
        for (std::size_t d = 0; d < dims; ++d) {
            std::vector<int> up(lx.begin(), lx.end());
            ++up[d];
            const auto y = space.find_lattice(up);
            if (!y) continue;
            const double h = space.point(*y)[d] - space.point(x)[d];
            add_row(*y, x, 0.0, -a * h);  // u(y) - u(x) >= a h
            add_row(x, *y, 0.0, b * h);   // u(y) - u(x) <= b h
        }
    }
    bool any_strict = false;
    std::map<std::pair<std::size_t, std::size_t>, bool> edges;
    for (const auto& edge : rel.data_edges()) {
        auto& s = edges[{edge.from, edge.to}];
        s = s || edge.strength == EdgeStrength::strict;
    }
    for (const auto& [pair, strict] : edges) {
        add_row(pair.first, pair.second, strict ? 1.0 : 0.0, 0.0);
        any_strict = any_strict || strict;
    }
    {
        std::vector<double> row(nv, 0.0);
        row[n] = 1.0;
        A.push_back(std::move(row));
        rhs.push_back(1.0);
    }
    std::vector<double> obj(nv, 0.0);
    if (any_strict) obj[n] = 1.0;
    const lp::Solution sol = lp::maximize(A, rhs, obj);

    LinearFit out;
    if (sol.status != lp::Status::optimal) return out;
    out.margin = any_strict ? sol.x[n] : 0.0;
    out.degenerate = !any_strict;
    if (any_strict && out.margin <= margin_tolerance) return out;
    out.feasible = true;
    out.values.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(n));
    out.preference = from_utility(e.space, out.values);
    return out;
}

}  // namespace prefid
