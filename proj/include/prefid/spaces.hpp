#pragma once

// Discretized ordered metric spaces: finite point sets carrying a partial
// order, a strict dominance relation, the max-coordinate metric and an
// optional chain of reference points.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prefid/bit_matrix.hpp"
#include "prefid/error.hpp"
#include "prefid/metric_index.hpp"

namespace prefid {

using Point = std::vector<double>;
using Interval = std::pair<double, double>;

enum class SpaceKind { euclidean_grid, lottery_simplex, dated_rewards, aa_acts };

inline const char* to_string(SpaceKind kind) {
    switch (kind) {
    case SpaceKind::euclidean_grid: return "euclidean_grid";
    case SpaceKind::lottery_simplex: return "lottery_simplex";
    case SpaceKind::dated_rewards: return "dated_rewards";
    case SpaceKind::aa_acts: return "aa_acts";
    }
    return "unknown";
}

inline SpaceKind space_kind_from_string(const std::string& s) {
    if (s == "euclidean_grid") return SpaceKind::euclidean_grid;
    if (s == "lottery_simplex") return SpaceKind::lottery_simplex;
    if (s == "dated_rewards") return SpaceKind::dated_rewards;
    if (s == "aa_acts") return SpaceKind::aa_acts;
    throw ConfigError("unknown space kind '" + s + "'");
}

/// Parameters a space was built from; enough to regenerate it.
struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::euclidean_grid;
    std::size_t dims = 0;
    std::size_t resolution = 0;
    std::vector<Interval> bounds;
    std::size_t num_prizes = 0;
    std::size_t num_states = 0;
    std::size_t money_resolution = 0;
    std::size_t time_resolution = 0;
    /// Set for spaces built from an explicit coordinate list.
    bool explicit_points = false;
    double explicit_step = 0.0;

    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;
};

inline constexpr std::size_t default_point_budget = 4096;
inline constexpr double probability_tolerance = 1e-9;

class OrderedSpace;
using SpacePtr = std::shared_ptr<const OrderedSpace>;

/// Immutable after construction. Relations are stored as bit matrices:
/// weak(i, j) means points[i] >= points[j]; strict(i, j) is the configured
/// strict dominance (>> on euclidean grids, the strict part of >= elsewhere).
class OrderedSpace {
public:
    SpaceKind kind() const { return descriptor_.kind; }
    const SpaceDescriptor& descriptor() const { return descriptor_; }

    std::size_t size() const { return points_.size(); }
    const Point& point(std::size_t i) const { return points_[i]; }
    std::span<const Point> points() const { return points_; }

    /// Integer lattice coordinates (grid indices, prize counts, ...).
    std::span<const int> lattice(std::size_t i) const { return lattice_[i]; }

    double distance(std::size_t i, std::size_t j) const {
        return max_coordinate_distance(points_[i], points_[j]);
    }

    bool geq(std::size_t i, std::size_t j) const { return weak_.test(i, j); }
    bool greater(std::size_t i, std::size_t j) const { return i != j && weak_.test(i, j); }
    bool strictly_dominates(std::size_t i, std::size_t j) const { return strict_.test(i, j); }

    const BitMatrix& weak_order() const { return weak_; }
    const BitMatrix& strict_order() const { return strict_; }

    const std::optional<std::vector<std::size_t>>& chain() const { return chain_; }

    /// Built on first use; thread-safe.
    const MetricIndex& metric() const {
        std::call_once(metric_once_, [this] { metric_ = std::make_unique<MetricIndex>(points()); });
        return *metric_;
    }

    /// Distance between lattice neighbours; the topological resolution.
    double grid_step() const { return step_; }

    static double max_coordinate_distance(const Point& a, const Point& b) {
        double d = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
        return d;
    }

    /// Index of the point with the given lattice coordinates, if any.
    std::optional<std::size_t> find_lattice(std::span<const int> coords) const {
        for (std::size_t i = 0; i < lattice_.size(); ++i) {
            if (std::equal(coords.begin(), coords.end(), lattice_[i].begin(), lattice_[i].end())) return i;
        }
        return std::nullopt;
    }

    std::optional<std::size_t> find_point(const Point& p, double tol = 1e-9) const {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (points_[i].size() == p.size() && max_coordinate_distance(points_[i], p) <= tol) return i;
        }
        return std::nullopt;
    }

    struct Parts {
        SpaceDescriptor descriptor;
        std::vector<Point> points;
        std::vector<std::vector<int>> lattice;
        BitMatrix weak;
        BitMatrix strict;
        std::optional<std::vector<std::size_t>> chain;
        double step = 0.0;
    };

    explicit OrderedSpace(Parts parts)
        : descriptor_(std::move(parts.descriptor)),
          points_(std::move(parts.points)),
          lattice_(std::move(parts.lattice)),
          weak_(std::move(parts.weak)),
          strict_(std::move(parts.strict)),
          chain_(std::move(parts.chain)),
          step_(parts.step) {}

private:
    SpaceDescriptor descriptor_;
    std::vector<Point> points_;
    std::vector<std::vector<int>> lattice_;
    BitMatrix weak_;
    BitMatrix strict_;
    std::optional<std::vector<std::size_t>> chain_;
    double step_ = 0.0;
    mutable std::once_flag metric_once_;
    mutable std::unique_ptr<MetricIndex> metric_;
};

namespace detail {

template <typename WeakPred, typename StrictPred>
SpacePtr assemble(SpaceDescriptor desc, std::vector<Point> points, std::vector<std::vector<int>> lattice,
                  WeakPred&& weak_pred, StrictPred&& strict_pred, std::optional<std::vector<std::size_t>> chain,
                  double step) {
    const std::size_t n = points.size();
    BitMatrix weak(n);
    BitMatrix strict(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (weak_pred(i, j)) weak.set(i, j);
            if (strict_pred(i, j)) strict.set(i, j);
        }
    }
    OrderedSpace::Parts parts{std::move(desc), std::move(points), std::move(lattice), std::move(weak),
                              std::move(strict), std::move(chain), step};
    return std::make_shared<const OrderedSpace>(std::move(parts));
}

inline void check_budget(std::size_t count, std::size_t budget) {
    if (count > budget) {
        throw CapacityError("space would have " + std::to_string(count) + " points, budget is " +
                            std::to_string(budget));
    }
}

// All compositions of `total` into `parts` nonnegative parts, lexicographic.
inline std::vector<std::vector<int>> compositions(int total, std::size_t parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(parts, 0);
    auto rec = [&](auto& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == parts) {
            cur[pos] = remaining;
            out.push_back(cur);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            cur[pos] = c;
            self(self, pos + 1, remaining - c);
        }
    };
    rec(rec, 0, total);
    return out;
}

// Upper cumulative counts dominate: sum of the first k entries (best prizes).
inline bool fosd_counts_geq(std::span<const int> a, std::span<const int> b) {
    int ca = 0;
    int cb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ca += a[k];
        cb += b[k];
        if (ca < cb) return false;
    }
    return true;
}

}  // namespace detail

/// Regular lattice on a box; order is coordinatewise, strict order is >>,
/// chain is the equal-index diagonal.
inline SpacePtr make_grid_euclidean(std::size_t dims, std::size_t resolution, std::vector<Interval> bounds,
                                    std::size_t point_budget = default_point_budget) {
    if (dims == 0) throw ConfigError("euclidean grid needs at least one dimension");
    if (resolution < 2) throw ConfigError("euclidean grid resolution must be at least 2");
    if (bounds.size() == 1 && dims > 1) bounds.assign(dims, bounds.front());
    if (bounds.size() != dims) throw ConfigError("bounds must be given once or per dimension");
    for (const auto& [lo, hi] : bounds) {
        if (!(lo < hi)) throw ConfigError("degenerate bounds interval");
    }
    double total = 1.0;
    for (std::size_t d = 0; d < dims; ++d) total *= static_cast<double>(resolution);
    if (total > static_cast<double>(point_budget)) detail::check_budget(point_budget + 1, point_budget);
    const std::size_t n = static_cast<std::size_t>(total);

    std::vector<Point> points(n, Point(dims));
    std::vector<std::vector<int>> lattice(n, std::vector<int>(dims));
    double step = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
        step = std::max(step, (bounds[d].second - bounds[d].first) / static_cast<double>(resolution - 1));
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (std::size_t d = dims; d-- > 0;) {
            const auto idx = static_cast<int>(rest % resolution);
            rest /= resolution;
            lattice[i][d] = idx;
            const auto [lo, hi] = bounds[d];
            points[i][d] = lo + (hi - lo) * static_cast<double>(idx) / static_cast<double>(resolution - 1);
        }
    }
    std::vector<std::size_t> diagonal;
    for (std::size_t t = 0; t < resolution; ++t) {
        std::size_t idx = 0;
        for (std::size_t d = 0; d < dims; ++d) idx = idx * resolution + t;
        diagonal.push_back(idx);
    }
    auto weak = [&](std::size_t i, std::size_t j) {
        for (std::size_t d = 0; d < dims; ++d) {
            if (lattice[i][d] < lattice[j][d]) return false;
        }
        return true;
    };
    auto strict = [&](std::size_t i, std::size_t j) {
        for (std::size_t d = 0; d < dims; ++d) {
            if (lattice[i][d] <= lattice[j][d]) return false;
        }
        return true;
    };
    SpaceDescriptor desc;
    desc.kind = SpaceKind::euclidean_grid;
    desc.dims = dims;
    desc.resolution = resolution;
    desc.bounds = std::move(bounds);
    return detail::assemble(std::move(desc), points, lattice, weak, strict, std::move(diagonal), step);
}

/// Euclidean-kind space over an explicit coordinate list (e.g. a union of
/// intervals). Order is coordinatewise, strict order is >>. `step` is the
/// resolution used for neighbourhood radii. No chain is attached.
inline SpacePtr make_euclidean_points(std::vector<Point> points, double step,
                                      std::size_t point_budget = default_point_budget) {
    if (points.empty()) throw ConfigError("explicit point set is empty");
    detail::check_budget(points.size(), point_budget);
    const std::size_t dims = points.front().size();
    if (dims == 0) throw ConfigError("explicit points need at least one coordinate");
    for (const auto& p : points) {
        if (p.size() != dims) throw ConfigError("explicit points have inconsistent dimension");
    }
    if (!(step > 0.0)) throw ConfigError("explicit point set needs a positive grid step");
    std::vector<std::vector<int>> lattice(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        lattice[i].resize(dims);
        for (std::size_t d = 0; d < dims; ++d) lattice[i][d] = static_cast<int>(std::lround(points[i][d] / step));
    }
    auto weak = [&](std::size_t i, std::size_t j) {
        for (std::size_t d = 0; d < dims; ++d) {
            if (points[i][d] < points[j][d]) return false;
        }
        return true;
    };
    auto strict = [&](std::size_t i, std::size_t j) {
        for (std::size_t d = 0; d < dims; ++d) {
            if (points[i][d] <= points[j][d]) return false;
        }
        return true;
    };
    SpaceDescriptor desc;
    desc.kind = SpaceKind::euclidean_grid;
    desc.dims = dims;
    desc.explicit_points = true;
    desc.explicit_step = step;
    return detail::assemble(std::move(desc), points, lattice, weak, strict, std::nullopt, step);
}

/// Lotteries over ranked prizes (prize 0 best) with probabilities in
/// multiples of 1/resolution, ordered by first-order stochastic dominance.
inline SpacePtr make_lottery_simplex(std::size_t num_prizes, std::size_t resolution,
                                     std::size_t point_budget = default_point_budget) {
    if (num_prizes < 2) throw ConfigError("lottery space needs at least two prizes");
    if (resolution < 1) throw ConfigError("lottery resolution must be at least 1");
    auto lattice = detail::compositions(static_cast<int>(resolution), num_prizes);
    detail::check_budget(lattice.size(), point_budget);
    const std::size_t n = lattice.size();
    std::vector<Point> points(n, Point(num_prizes));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < num_prizes; ++k) {
            points[i][k] = static_cast<double>(lattice[i][k]) / static_cast<double>(resolution);
        }
    }
    // Mixtures of the best and worst degenerate lotteries, worst first.
    std::vector<std::size_t> chain;
    for (std::size_t j = 0; j <= resolution; ++j) {
        std::vector<int> counts(num_prizes, 0);
        counts.front() = static_cast<int>(j);
        counts.back() = static_cast<int>(resolution - j);
        for (std::size_t i = 0; i < n; ++i) {
            if (lattice[i] == counts) chain.push_back(i);
        }
    }
    auto weak = [&](std::size_t i, std::size_t j) { return detail::fosd_counts_geq(lattice[i], lattice[j]); };
    auto strict = [&](std::size_t i, std::size_t j) { return i != j && weak(i, j); };
    SpaceDescriptor desc;
    desc.kind = SpaceKind::lottery_simplex;
    desc.num_prizes = num_prizes;
    desc.resolution = resolution;
    return detail::assemble(std::move(desc), points, lattice, weak, strict, std::move(chain),
                            1.0 / static_cast<double>(resolution));
}

/// Dated rewards (money, date): more money earlier is better. The chain is
/// a staircase from (least money, latest date) to (most money, earliest date).
inline SpacePtr make_dated_rewards(std::size_t money_resolution, std::size_t time_resolution,
                                   std::vector<Interval> bounds,
                                   std::size_t point_budget = default_point_budget) {
    if (money_resolution < 2 || time_resolution < 2) throw ConfigError("dated reward resolutions must be at least 2");
    if (bounds.size() != 2) throw ConfigError("dated rewards need money and time bounds");
    for (const auto& [lo, hi] : bounds) {
        if (!(lo < hi)) throw ConfigError("degenerate bounds interval");
    }
    detail::check_budget(money_resolution * time_resolution, point_budget);
    const std::size_t n = money_resolution * time_resolution;
    const double money_step = (bounds[0].second - bounds[0].first) / static_cast<double>(money_resolution - 1);
    const double time_step = (bounds[1].second - bounds[1].first) / static_cast<double>(time_resolution - 1);
    std::vector<Point> points(n, Point(2));
    std::vector<std::vector<int>> lattice(n, std::vector<int>(2));
    for (std::size_t m = 0; m < money_resolution; ++m) {
        for (std::size_t t = 0; t < time_resolution; ++t) {
            const std::size_t i = m * time_resolution + t;
            lattice[i] = {static_cast<int>(m), static_cast<int>(t)};
            points[i] = {bounds[0].first + money_step * static_cast<double>(m),
                         bounds[1].first + time_step * static_cast<double>(t)};
        }
    }
    // Merge the money moves (at fractions a/(M-1)) with the date moves
    // (at b/(T-1)); every step changes one lattice index by one.
    std::vector<std::size_t> chain;
    {
        std::size_t m = 0;
        std::size_t t_done = 0;
        const std::size_t mr = money_resolution - 1;
        const std::size_t tr = time_resolution - 1;
        chain.push_back(0 * time_resolution + tr);
        while (m < mr || t_done < tr) {
            const bool move_money = t_done == tr || (m < mr && (m + 1) * tr <= (t_done + 1) * mr);
            if (move_money) {
                ++m;
            } else {
                ++t_done;
            }
            chain.push_back(m * time_resolution + (tr - t_done));
        }
    }
    auto weak = [&](std::size_t i, std::size_t j) {
        return lattice[i][0] >= lattice[j][0] && lattice[i][1] <= lattice[j][1];
    };
    auto strict = [&](std::size_t i, std::size_t j) { return i != j && weak(i, j); };
    SpaceDescriptor desc;
    desc.kind = SpaceKind::dated_rewards;
    desc.money_resolution = money_resolution;
    desc.time_resolution = time_resolution;
    desc.bounds = std::move(bounds);
    return detail::assemble(std::move(desc), points, lattice, weak, strict, std::move(chain),
                            std::max(money_step, time_step));
}

/// Anscombe-Aumann acts: one lottery per state, ordered statewise by FOSD.
inline SpacePtr make_aa_acts(std::size_t num_states, const OrderedSpace& lottery,
                             std::size_t point_budget = default_point_budget) {
    if (lottery.kind() != SpaceKind::lottery_simplex) throw ConfigError("aa acts need a lottery space");
    if (num_states == 0) throw ConfigError("aa acts need at least one state");
    const std::size_t base = lottery.size();
    double total = 1.0;
    for (std::size_t s = 0; s < num_states; ++s) total *= static_cast<double>(base);
    if (total > static_cast<double>(point_budget)) {
        throw CapacityError("aa act space would have " + std::to_string(static_cast<long long>(total)) +
                            " points, budget is " + std::to_string(point_budget));
    }
    const std::size_t n = static_cast<std::size_t>(total);
    std::vector<std::vector<std::size_t>> tuples(n, std::vector<std::size_t>(num_states));
    std::vector<Point> points(n);
    std::vector<std::vector<int>> lattice(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (std::size_t s = num_states; s-- > 0;) {
            tuples[i][s] = rest % base;
            rest /= base;
        }
        for (std::size_t s = 0; s < num_states; ++s) {
            const auto& p = lottery.point(tuples[i][s]);
            points[i].insert(points[i].end(), p.begin(), p.end());
            const auto l = lottery.lattice(tuples[i][s]);
            lattice[i].insert(lattice[i].end(), l.begin(), l.end());
        }
    }
    std::optional<std::vector<std::size_t>> chain;
    if (lottery.chain()) {
        std::vector<std::size_t> c;
        for (std::size_t l : *lottery.chain()) {
            std::size_t idx = 0;
            for (std::size_t s = 0; s < num_states; ++s) idx = idx * base + l;
            c.push_back(idx);
        }
        chain = std::move(c);
    }
    auto weak = [&](std::size_t i, std::size_t j) {
        for (std::size_t s = 0; s < num_states; ++s) {
            if (!lottery.geq(tuples[i][s], tuples[j][s])) return false;
        }
        return true;
    };
    auto strict = [&](std::size_t i, std::size_t j) { return i != j && weak(i, j); };
    SpaceDescriptor desc;
    desc.kind = SpaceKind::aa_acts;
    desc.num_states = num_states;
    desc.num_prizes = lottery.descriptor().num_prizes;
    desc.resolution = lottery.descriptor().resolution;
    return detail::assemble(std::move(desc), points, lattice, weak, strict, std::move(chain), lottery.grid_step());
}

/// Rebuilds a space from its descriptor (explicit point sets need `points`).
inline SpacePtr make_space(const SpaceDescriptor& d, const std::vector<Point>& points = {},
                           std::size_t point_budget = default_point_budget) {
    if (d.explicit_points) return make_euclidean_points(points, d.explicit_step, point_budget);
    switch (d.kind) {
    case SpaceKind::euclidean_grid: return make_grid_euclidean(d.dims, d.resolution, d.bounds, point_budget);
    case SpaceKind::lottery_simplex: return make_lottery_simplex(d.num_prizes, d.resolution, point_budget);
    case SpaceKind::dated_rewards:
        return make_dated_rewards(d.money_resolution, d.time_resolution, d.bounds, point_budget);
    case SpaceKind::aa_acts: {
        auto lottery = make_lottery_simplex(d.num_prizes, d.resolution, point_budget);
        return make_aa_acts(d.num_states, *lottery, point_budget);
    }
    }
    throw ConfigError("unknown space kind");
}

enum class Comparison { greater, less, equal, incomparable };

inline const char* to_string(Comparison c) {
    switch (c) {
    case Comparison::greater: return "greater";
    case Comparison::less: return "less";
    case Comparison::equal: return "equal";
    case Comparison::incomparable: return "incomparable";
    }
    return "unknown";
}

/// First-order stochastic dominance between probability vectors whose
/// entries are listed from the best prize down.
inline Comparison fosd_compare(std::span<const double> x, std::span<const double> y) {
    auto validate = [](std::span<const double> v) {
        double sum = 0.0;
        for (double p : v) {
            if (p < -probability_tolerance) throw DomainError("negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > probability_tolerance) throw DomainError("probabilities do not sum to 1");
    };
    if (x.size() != y.size() || x.empty()) throw DomainError("lotteries must have the same nonzero length");
    validate(x);
    validate(y);
    bool x_above = false;
    bool y_above = false;
    double cx = 0.0;
    double cy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        cx += x[k];
        cy += y[k];
        if (cx > cy + probability_tolerance) x_above = true;
        if (cy > cx + probability_tolerance) y_above = true;
    }
    if (x_above && y_above) return Comparison::incomparable;
    if (x_above) return Comparison::greater;
    if (y_above) return Comparison::less;
    return Comparison::equal;
}

/// A designated subset B of the points, with its exact covering radius.
struct DenseSubset {
    SpacePtr space;
    std::vector<std::size_t> members;
    double covering_radius = 0.0;

    bool contains(std::size_t i) const { return std::binary_search(members.begin(), members.end(), i); }
};

inline DenseSubset make_dense_subset(SpacePtr space, std::vector<std::size_t> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw DomainError("subset B must be nonempty");
    for (std::size_t m : members) {
        if (m >= space->size()) throw DomainError("subset member outside the space");
    }
    double radius = 0.0;
    for (std::size_t x = 0; x < space->size(); ++x) {
        double best = INFINITY;
        for (std::size_t b : members) best = std::min(best, space->distance(x, b));
        radius = std::max(radius, best);
    }
    return DenseSubset{std::move(space), std::move(members), radius};
}

inline DenseSubset full_subset(SpacePtr space) {
    std::vector<std::size_t> all(space->size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return DenseSubset{std::move(space), std::move(all), 0.0};
}

/// Sub-lattice whose lattice coordinates are all multiples of `stride`
/// (explicit point sets fall back to every stride-th point).
inline DenseSubset strided_subset(SpacePtr space, std::size_t stride) {
    if (stride == 0) throw ConfigError("stride must be positive");
    if (stride == 1) return full_subset(std::move(space));
    std::vector<std::size_t> members;
    const int s = static_cast<int>(stride);
    for (std::size_t i = 0; i < space->size(); ++i) {
        if (space->descriptor().explicit_points) {
            if (i % stride == 0) members.push_back(i);
            continue;
        }
        const auto l = space->lattice(i);
        if (std::all_of(l.begin(), l.end(), [s](int v) { return v % s == 0; })) members.push_back(i);
    }
    return make_dense_subset(std::move(space), std::move(members));
}

struct CountableOrderResult {
    bool holds = true;
    std::vector<std::size_t> violations;
};

/// Every x must be bracketed b' <= x <= b'' by members of B within `radius`.
inline CountableOrderResult check_countable_order_property(const OrderedSpace& space, const DenseSubset& subset,
                                                           double radius) {
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    CountableOrderResult out;
    const double tol = 1e-12 * (1.0 + radius);
    for (std::size_t x = 0; x < space.size(); ++x) {
        bool below = false;
        bool above = false;
        for (std::size_t b : subset.members) {
            if (space.distance(x, b) > radius + tol) continue;
            below = below || space.geq(x, b);
            above = above || space.geq(b, x);
            if (below && above) break;
        }
        if (!(below && above)) {
            out.holds = false;
            out.violations.push_back(x);
        }
    }
    return out;
}

/// Discrete forms of the three reference-chain conditions.
struct ChainCheck {
    bool present = false;
    bool totally_ordered = false;
    bool locally_bracketed = false;
    bool bounds_every_point = false;

    bool ok() const { return present && totally_ordered && locally_bracketed && bounds_every_point; }
};

inline ChainCheck check_chain(const OrderedSpace& space) {
    ChainCheck out;
    if (!space.chain() || space.chain()->size() < 2) return out;
    out.present = true;
    const auto& chain = *space.chain();
    out.totally_ordered = true;
    for (std::size_t a = 0; a < chain.size(); ++a) {
        for (std::size_t b = a + 1; b < chain.size(); ++b) {
            if (!space.greater(chain[b], chain[a]) || space.geq(chain[a], chain[b])) out.totally_ordered = false;
        }
    }
    const double tol = 1e-9 * (1.0 + space.grid_step());
    out.locally_bracketed = true;
    for (std::size_t a = 0; a + 1 < chain.size(); ++a) {
        if (space.distance(chain[a], chain[a + 1]) > space.grid_step() + tol) out.locally_bracketed = false;
    }
    out.bounds_every_point = space.geq(chain.back(), chain.front());
    for (std::size_t x = 0; x < space.size(); ++x) {
        if (!space.geq(x, chain.front()) || !space.geq(chain.back(), x)) out.bounds_every_point = false;
    }
    return out;
}

/// How meets and joins are formed for squeeze envelopes.
struct LatticeOrder {
    enum class Kind { coordinatewise, dated, fosd } kind = Kind::coordinatewise;
    /// For fosd: probability vectors are consecutive blocks of this size
    /// (one block per state for acts). Zero means a single block.
    std::size_t block = 0;
};

inline LatticeOrder lattice_order_of(const OrderedSpace& space) {
    switch (space.kind()) {
    case SpaceKind::euclidean_grid: return {LatticeOrder::Kind::coordinatewise, 0};
    case SpaceKind::dated_rewards: return {LatticeOrder::Kind::dated, 0};
    case SpaceKind::lottery_simplex: return {LatticeOrder::Kind::fosd, 0};
    case SpaceKind::aa_acts: return {LatticeOrder::Kind::fosd, space.descriptor().num_prizes};
    }
    return {};
}

namespace detail {

inline Point lattice_bound(std::span<const Point> values, LatticeOrder order, bool meet) {
    Point out = values.front();
    const std::size_t dim = out.size();
    auto better = [meet](double a, double b) { return meet ? std::min(a, b) : std::max(a, b); };
    switch (order.kind) {
    case LatticeOrder::Kind::coordinatewise:
        for (const auto& v : values) {
            for (std::size_t k = 0; k < dim; ++k) out[k] = better(out[k], v[k]);
        }
        break;
    case LatticeOrder::Kind::dated:
        // money follows the order, the date runs against it
        for (const auto& v : values) {
            out[0] = better(out[0], v[0]);
            out[1] = meet ? std::max(out[1], v[1]) : std::min(out[1], v[1]);
        }
        break;
    case LatticeOrder::Kind::fosd: {
        const std::size_t block = order.block == 0 ? dim : order.block;
        for (std::size_t start = 0; start < dim; start += block) {
            std::vector<double> cum(block, 0.0);
            bool first = true;
            for (const auto& v : values) {
                double c = 0.0;
                for (std::size_t k = 0; k < block; ++k) {
                    c += v[start + k];
                    cum[k] = first ? c : better(cum[k], c);
                }
                first = false;
            }
            double prev = 0.0;
            for (std::size_t k = 0; k < block; ++k) {
                const double c = (k + 1 == block) ? 1.0 : cum[k];
                out[start + k] = std::max(0.0, c - prev);
                prev = c;
            }
        }
        break;
    }
    }
    return out;
}

}  // namespace detail

struct Envelopes {
    std::vector<Point> lower;  // x'_n = inf of the tail, nondecreasing
    std::vector<Point> upper;  // x''_n = sup of the tail, nonincreasing
};

inline Envelopes squeeze_envelopes(std::span<const Point> sequence, LatticeOrder order) {
    if (sequence.empty()) throw DomainError("squeeze envelopes of an empty sequence");
    Envelopes out;
    const std::size_t n = sequence.size();
    out.lower.resize(n);
    out.upper.resize(n);
    for (std::size_t i = n; i-- > 0;) {
        std::vector<Point> pair_lo{sequence[i]};
        std::vector<Point> pair_hi{sequence[i]};
        if (i + 1 < n) {
            pair_lo.push_back(out.lower[i + 1]);
            pair_hi.push_back(out.upper[i + 1]);
        }
        out.lower[i] = detail::lattice_bound(pair_lo, order, true);
        out.upper[i] = detail::lattice_bound(pair_hi, order, false);
    }
    return out;
}

/// Order comparison of raw points under a lattice order (used to verify
/// envelope conclusions without a materialized space).
inline bool lattice_leq(const Point& a, const Point& b, LatticeOrder order, double tol = 1e-9) {
    switch (order.kind) {
    case LatticeOrder::Kind::coordinatewise:
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[k] > b[k] + tol) return false;
        }
        return true;
    case LatticeOrder::Kind::dated: return a[0] <= b[0] + tol && a[1] + tol >= b[1];
    case LatticeOrder::Kind::fosd: {
        const std::size_t block = order.block == 0 ? a.size() : order.block;
        for (std::size_t start = 0; start < a.size(); start += block) {
            double ca = 0.0;
            double cb = 0.0;
            for (std::size_t k = 0; k < block; ++k) {
                ca += a[start + k];
                cb += b[start + k];
                if (ca > cb + tol) return false;
            }
        }
        return true;
    }
    }
    return false;
}

}  // namespace prefid
