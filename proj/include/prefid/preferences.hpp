#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "prefid/bit_matrix.hpp"
#include "prefid/error.hpp"
#include "prefid/spaces.hpp"

namespace prefid {

/// Arbitrary relation on a space, stored as its graph in X x X.
class BinaryRelation {
public:
    BinaryRelation() = default;
    explicit BinaryRelation(SpacePtr space) : space_(std::move(space)), graph_(space_->size()) {}
    BinaryRelation(SpacePtr space, BitMatrix graph) : space_(std::move(space)), graph_(std::move(graph)) {
        if (graph_.size() != space_->size()) throw DomainError("relation size does not match its space");
    }

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return graph_.size(); }
    const BitMatrix& graph() const { return graph_; }

    bool contains(std::size_t i, std::size_t j) const { return graph_.test(i, j); }
    void insert(std::size_t i, std::size_t j) { graph_.set(i, j); }
    void erase(std::size_t i, std::size_t j) { graph_.set(i, j, false); }

    std::size_t count() const { return graph_.count(); }
    bool empty() const { return graph_.empty(); }

    bool is_complete() const {
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = i; j < size(); ++j) {
                if (!contains(i, j) && !contains(j, i)) return false;
            }
        }
        return true;
    }

    /// x > y iff (x,y) in R and (y,x) not in R.
    BitMatrix strict_part() const {
        const BitMatrix t = graph_.transposed();
        BitMatrix s(size());
        for (std::size_t i = 0; i < size(); ++i) {
            auto out = s.row(i);
            const auto a = graph_.row(i);
            const auto b = t.row(i);
            for (std::size_t w = 0; w < out.size(); ++w) out[w] = a[w] & ~b[w];
        }
        return s;
    }

    friend bool operator==(const BinaryRelation& a, const BinaryRelation& b) { return a.graph_ == b.graph_; }

private:
    SpacePtr space_;
    BitMatrix graph_;
};

/// Total preorder stored as dense ranks; a higher rank is weakly better.
class Preference {
public:
    Preference() = default;
    /// Ranks may be any integers; they are compressed to 0..levels-1.
    Preference(SpacePtr space, std::vector<int> ranks) : space_(std::move(space)), ranks_(std::move(ranks)) {
        if (ranks_.size() != space_->size()) throw DomainError("rank vector does not cover the space");
        std::vector<int> distinct(ranks_);
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (int& r : ranks_) r = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), r) - distinct.begin());
        levels_ = distinct.size();
    }

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return ranks_.size(); }
    int rank(std::size_t i) const { return ranks_[i]; }
    const std::vector<int>& ranks() const { return ranks_; }
    std::size_t num_classes() const { return levels_; }

    bool weakly_prefers(std::size_t i, std::size_t j) const { return ranks_[i] >= ranks_[j]; }
    bool strictly_prefers(std::size_t i, std::size_t j) const { return ranks_[i] > ranks_[j]; }
    bool indifferent(std::size_t i, std::size_t j) const { return ranks_[i] == ranks_[j]; }

    BinaryRelation relation() const {
        BitMatrix g(size());
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = 0; j < size(); ++j) {
                if (ranks_[i] >= ranks_[j]) g.set(i, j);
            }
        }
        return BinaryRelation(space_, std::move(g));
    }

    friend bool operator==(const Preference& a, const Preference& b) { return a.ranks_ == b.ranks_; }

private:
    SpacePtr space_;
    std::vector<int> ranks_;
    std::size_t levels_ = 0;
};

inline constexpr double utility_tie_tolerance = 1e-10;

/// Values closer than `tol` (relative to magnitude) along the sorted order
/// are treated as ties.
inline Preference from_utility(SpacePtr space, std::span<const double> values, double tol = utility_tie_tolerance) {
    if (values.size() != space->size()) throw DomainError("utility values missing for some points");
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("utility value is not finite");
    }
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<int> ranks(values.size(), 0);
    int r = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k > 0) {
            const double prev = values[idx[k - 1]];
            const double cur = values[idx[k]];
            if (cur - prev > tol * std::max(1.0, std::abs(cur))) ++r;
        }
        ranks[idx[k]] = r;
    }
    return Preference(std::move(space), std::move(ranks));
}

inline Preference total_indifference(SpacePtr space) {
    const std::size_t n = space->size();
    return Preference(std::move(space), std::vector<int>(n, 0));
}

inline bool is_weakly_monotone(const Preference& p) {
    const auto& space = *p.space();
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool ok = true;
        space.weak_order().for_each_in_row(i, [&](std::size_t j) { ok = ok && p.weakly_prefers(i, j); });
        if (!ok) return false;
    }
    return true;
}

inline bool is_strictly_monotone(const Preference& p) {
    const auto& space = *p.space();
    for (std::size_t i = 0; i < p.size(); ++i) {
        bool ok = true;
        space.strict_order().for_each_in_row(i, [&](std::size_t j) { ok = ok && p.strictly_prefers(i, j); });
        if (!ok) return false;
    }
    return true;
}

struct LocalStrictness {
    bool holds = true;
    std::vector<std::pair<std::size_t, std::size_t>> violations;
};

/// Every pair x >= y must have a strict pair x' > y' within `radius` of it.
inline LocalStrictness is_locally_strict(const Preference& p, double radius) {
    const auto& metric = p.space()->metric();
    const auto L = metric.level_at_most(radius);
    const std::size_t n = p.size();
    std::vector<int> hi(n);
    std::vector<int> lo(n);
    for (std::size_t x = 0; x < n; ++x) {
        int h = std::numeric_limits<int>::min();
        int l = std::numeric_limits<int>::max();
        for (auto z : metric.ball(x, L)) {
            h = std::max(h, p.rank(z));
            l = std::min(l, p.rank(z));
        }
        hi[x] = h;
        lo[x] = l;
    }
    LocalStrictness out;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            if (p.weakly_prefers(x, y) && !(hi[x] > lo[y])) {
                out.holds = false;
                out.violations.emplace_back(x, y);
            }
        }
    }
    return out;
}

inline bool is_quasitransitive(const BinaryRelation& r) {
    if (!r.is_complete()) throw DomainError("quasitransitivity is only defined here for complete relations");
    const BitMatrix s = r.strict_part();
    for (std::size_t a = 0; a < s.size(); ++a) {
        bool ok = true;
        const auto row_a = s.row(a);
        s.for_each_in_row(a, [&](std::size_t b) {
            const auto row_b = s.row(b);
            for (std::size_t w = 0; w < row_b.size(); ++w) {
                if (row_b[w] & ~row_a[w]) ok = false;
            }
        });
        if (!ok) return false;
    }
    return true;
}

inline bool is_transitive(const BinaryRelation& r) {
    const auto& g = r.graph();
    for (std::size_t a = 0; a < g.size(); ++a) {
        bool ok = true;
        const auto row_a = g.row(a);
        g.for_each_in_row(a, [&](std::size_t b) {
            const auto row_b = g.row(b);
            for (std::size_t w = 0; w < row_b.size(); ++w) {
                if (row_b[w] & ~row_a[w]) ok = false;
            }
        });
        if (!ok) return false;
    }
    return true;
}

/// Set of (x,y) within product distance of level L from some pair of g.
inline BitMatrix dilate(const BitMatrix& g, const MetricIndex& metric, MetricIndex::Level L) {
    const std::size_t n = g.size();
    auto rows = [&](const BitMatrix& m) {
        BitMatrix out(n);
        for (std::size_t x = 0; x < n; ++x) {
            auto dst = out.row(x);
            for (auto z : metric.ball(x, L)) or_into(dst, m.row(z));
        }
        return out;
    };
    const BitMatrix t = rows(g).transposed();
    return rows(t).transposed();
}

namespace detail {

inline void check_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a->size() != b->size()) throw DomainError("relations live on different spaces");
}

// Smallest level at which `covered(L)` holds; covered is monotone in L.
template <typename Pred>
MetricIndex::Level smallest_level(const MetricIndex& metric, Pred&& covered) {
    MetricIndex::Level lo = 0;
    auto hi = static_cast<MetricIndex::Level>(metric.num_levels() - 1);
    while (lo < hi) {
        const auto mid = static_cast<MetricIndex::Level>(lo + (hi - lo) / 2);
        if (covered(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

// For preferences, P is inside the L-dilation of Q iff for every y,
// min over {x : p(x) >= p(y)} of max q-rank in ball(x) >= min q-rank in ball(y).
inline bool pref_covered(const Preference& p, const Preference& q, const MetricIndex& metric, MetricIndex::Level L) {
    const std::size_t n = p.size();
    std::vector<int> hi(n);
    std::vector<int> lo(n);
    for (std::size_t x = 0; x < n; ++x) {
        int h = std::numeric_limits<int>::min();
        int l = std::numeric_limits<int>::max();
        for (auto z : metric.ball(x, L)) {
            h = std::max(h, q.rank(z));
            l = std::min(l, q.rank(z));
        }
        hi[x] = h;
        lo[x] = l;
    }
    const std::size_t classes = p.num_classes();
    std::vector<int> min_hi(classes + 1, std::numeric_limits<int>::max());
    for (std::size_t x = 0; x < n; ++x) {
        auto& slot = min_hi[static_cast<std::size_t>(p.rank(x))];
        slot = std::min(slot, hi[x]);
    }
    for (std::size_t c = classes; c-- > 0;) min_hi[c] = std::min(min_hi[c], min_hi[c + 1]);
    for (std::size_t y = 0; y < n; ++y) {
        if (min_hi[static_cast<std::size_t>(p.rank(y))] < lo[y]) return false;
    }
    return true;
}

}  // namespace detail

/// Hausdorff distance between the graphs in X x X under the max metric.
inline double closed_convergence_distance(const BinaryRelation& p, const BinaryRelation& q) {
    if (p.empty() || q.empty()) throw DomainError("closed convergence distance needs nonempty relations");
    detail::check_same_space(p.space(), q.space());
    if (p == q) return 0.0;
    const auto& metric = p.space()->metric();
    const auto L = detail::smallest_level(metric, [&](MetricIndex::Level lv) {
        return p.graph().subset_of(dilate(q.graph(), metric, lv)) && q.graph().subset_of(dilate(p.graph(), metric, lv));
    });
    return metric.levels()[L];
}

inline double closed_convergence_distance(const Preference& p, const Preference& q) {
    detail::check_same_space(p.space(), q.space());
    if (p == q) return 0.0;
    const auto& metric = p.space()->metric();
    const auto L = detail::smallest_level(metric, [&](MetricIndex::Level lv) {
        return detail::pref_covered(p, q, metric, lv) && detail::pref_covered(q, p, metric, lv);
    });
    return metric.levels()[L];
}

/// Whether the distance is at most the given level (cheaper than computing it).
inline bool closed_convergence_within(const Preference& p, const Preference& q, MetricIndex::Level L) {
    const auto& metric = p.space()->metric();
    return detail::pref_covered(p, q, metric, L) && detail::pref_covered(q, p, metric, L);
}

struct LimitPair {
    BinaryRelation li;
    BinaryRelation ls;
};

/// Finite-sequence analogue of the lower and upper closed limits. Radius
/// r_j (j = 0..m-1) is tested on the tail starting at floor(j*len/m):
/// (x,y) is in Li when every relation of each tail meets its r_j-ball, and
/// in Ls when some relation of each tail does.
inline LimitPair li_ls_limit(std::span<const BinaryRelation> seq, std::span<const double> radius_schedule) {
    if (seq.empty()) throw DomainError("limit of an empty sequence");
    if (radius_schedule.empty()) throw DomainError("empty radius schedule");
    const SpacePtr& space = seq.front().space();
    for (const auto& r : seq) detail::check_same_space(space, r.space());
    const auto& metric = space->metric();
    const std::size_t n = space->size();
    const std::size_t len = seq.size();
    const std::size_t m = radius_schedule.size();

    BitMatrix li(n);
    BitMatrix ls(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            li.set(i, j);
            ls.set(i, j);
        }
    }
    for (std::size_t j = 0; j < m; ++j) {
        const auto L = metric.level_at_most(radius_schedule[j]);
        const std::size_t start = j * len / m;
        BitMatrix any(n);
        for (std::size_t k = start; k < len; ++k) {
            const BitMatrix d = dilate(seq[k].graph(), metric, L);
            li &= d;
            any |= d;
        }
        ls &= any;
    }
    return {BinaryRelation(space, std::move(li)), BinaryRelation(space, std::move(ls))};
}

inline BinaryRelation full_relation(SpacePtr space) {
    return total_indifference(std::move(space)).relation();
}

}  // namespace prefid
