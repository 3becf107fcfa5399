#pragma once

// Diameter of the set of preferences rationalizing a data set: sampled
// lower bound on mid-size spaces, exact value on tiny ones.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/extension.hpp"
#include "prefid/preferences.hpp"
#include "prefid/random.hpp"
#include "prefid/revealed.hpp"

namespace prefid {

enum class DiameterMethod { automatic, sampled, exhaustive };

struct DiameterEstimate {
    double value = 0.0;
    DiameterMethod method = DiameterMethod::sampled;
    std::size_t rationalizations = 0;  // samples drawn, or preorders that survived
};

inline const char* to_string(DiameterMethod m) {
    switch (m) {
    case DiameterMethod::automatic: return "automatic";
    case DiameterMethod::sampled: return "sampled";
    case DiameterMethod::exhaustive: return "exhaustive";
    }
    return "unknown";
}

inline constexpr std::size_t exhaustive_point_limit = 8;

/// All total preorders on n points as rank vectors (ordered set partitions).
inline std::vector<std::vector<int>> all_total_preorders(std::size_t n) {
    std::vector<std::vector<int>> out;
    std::vector<int> ranks(n, 0);
    // Each rank vector with ranks forming 0..L-1 without gaps.
    auto rec = [&](auto& self, std::size_t i, int max_used) -> void {
        if (i == n) {
            // surjectivity onto 0..max_used
            std::vector<char> seen(static_cast<std::size_t>(max_used + 1), 0);
            for (int r : ranks) seen[static_cast<std::size_t>(r)] = 1;
            if (std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; })) out.push_back(ranks);
            return;
        }
        for (int r = 0; r <= static_cast<int>(n) - 1; ++r) {
            ranks[i] = r;
            self(self, i + 1, std::max(max_used, r));
        }
    };
    if (n == 0) return {{}};
    rec(rec, 0, 0);
    return out;
}

namespace detail {

// Rank extremes over balls of one level, cached per preference.
struct BallExtremes {
    std::vector<int> hi;
    std::vector<int> lo;
};

inline BallExtremes ball_extremes(const Preference& q, const MetricIndex& metric, MetricIndex::Level L) {
    BallExtremes out{std::vector<int>(q.size()), std::vector<int>(q.size())};
    for (std::size_t x = 0; x < q.size(); ++x) {
        int h = std::numeric_limits<int>::min();
        int l = std::numeric_limits<int>::max();
        for (auto z : metric.ball(x, L)) {
            h = std::max(h, q.rank(z));
            l = std::min(l, q.rank(z));
        }
        out.hi[x] = h;
        out.lo[x] = l;
    }
    return out;
}

inline bool covered_with(const Preference& p, const BallExtremes& q_ext, std::vector<int>& scratch) {
    const std::size_t classes = p.num_classes();
    scratch.assign(classes + 1, std::numeric_limits<int>::max());
    for (std::size_t x = 0; x < p.size(); ++x) {
        auto& slot = scratch[static_cast<std::size_t>(p.rank(x))];
        slot = std::min(slot, q_ext.hi[x]);
    }
    for (std::size_t c = classes; c-- > 0;) scratch[c] = std::min(scratch[c], scratch[c + 1]);
    for (std::size_t y = 0; y < p.size(); ++y) {
        if (scratch[static_cast<std::size_t>(p.rank(y))] < q_ext.lo[y]) return false;
    }
    return true;
}

}  // namespace detail

/// Largest pairwise closed convergence distance in a list of preferences.
inline double max_pairwise_distance(const std::vector<Preference>& prefs) {
    if (prefs.size() < 2) return 0.0;
    const auto& metric = prefs.front().space()->metric();
    const auto top = static_cast<MetricIndex::Level>(metric.num_levels() - 1);
    MetricIndex::Level cur = 0;
    std::vector<detail::BallExtremes> ext;
    auto refresh = [&] {
        ext.clear();
        for (const auto& p : prefs) ext.push_back(detail::ball_extremes(p, metric, cur));
    };
    refresh();
    std::vector<int> scratch;
    for (std::size_t a = 0; a < prefs.size() && cur < top; ++a) {
        for (std::size_t b = a + 1; b < prefs.size() && cur < top; ++b) {
            if (detail::covered_with(prefs[a], ext[b], scratch) && detail::covered_with(prefs[b], ext[a], scratch)) {
                continue;
            }
            const double d = closed_convergence_distance(prefs[a], prefs[b]);
            cur = metric.level_at_most(d);
            refresh();
        }
    }
    return metric.levels()[cur];
}

namespace detail {

// Exhaustive diameter on spaces of at most 8 points; relations as 64-bit masks.
inline DiameterEstimate exhaustive_diameter(const ExperimentSequence& e, const ChoiceSequence& c,
                                            Monotonicity monotone) {
    const auto& space = e.space;
    const std::size_t n = space->size();
    const auto& metric = space->metric();
    std::vector<std::uint64_t> masks;
    for (const auto& ranks : all_total_preorders(n)) {
        Preference p(space, ranks);
        if (!replays(p, e, c)) continue;
        if (monotone == Monotonicity::weak && !is_weakly_monotone(p)) continue;
        if (monotone == Monotonicity::strict && (!is_weakly_monotone(p) || !is_strictly_monotone(p))) continue;
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (ranks[i] >= ranks[j]) m |= std::uint64_t{1} << (i * n + j);
            }
        }
        masks.push_back(m);
    }
    DiameterEstimate out;
    out.method = DiameterMethod::exhaustive;
    out.rationalizations = masks.size();
    if (masks.empty()) throw PreconditionError("no preference rationalizes the data");
    const std::size_t levels = metric.num_levels();
    // dil[L][pair bit] = mask of pairs within level L of that pair
    std::vector<std::vector<std::uint64_t>> near(levels, std::vector<std::uint64_t>(n * n, 0));
    for (std::size_t L = 0; L < levels; ++L) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                std::uint64_t m = 0;
                for (auto a : metric.ball(i, static_cast<MetricIndex::Level>(L))) {
                    for (auto b : metric.ball(j, static_cast<MetricIndex::Level>(L))) m |= std::uint64_t{1} << (a * n + b);
                }
                near[L][i * n + j] = m;
            }
        }
    }
    auto dilate_mask = [&](std::uint64_t g, std::size_t L) {
        std::uint64_t out_mask = 0;
        while (g) {
            const int bit = std::countr_zero(g);
            out_mask |= near[L][static_cast<std::size_t>(bit)];
            g &= g - 1;
        }
        return out_mask;
    };
    std::size_t cur = 0;
    std::vector<std::uint64_t> dil(masks.size());
    auto refresh = [&] {
        for (std::size_t k = 0; k < masks.size(); ++k) dil[k] = dilate_mask(masks[k], cur);
    };
    refresh();
    for (std::size_t a = 0; a < masks.size() && cur + 1 < levels; ++a) {
        for (std::size_t b = a + 1; b < masks.size() && cur + 1 < levels; ++b) {
            if ((masks[a] & ~dil[b]) == 0 && (masks[b] & ~dil[a]) == 0) continue;
            std::size_t L = cur + 1;
            while (L + 1 < levels) {
                const auto da = dilate_mask(masks[a], L);
                const auto db = dilate_mask(masks[b], L);
                if ((masks[a] & ~db) == 0 && (masks[b] & ~da) == 0) break;
                ++L;
            }
            cur = L;
            refresh();
        }
    }
    out.value = metric.levels()[cur];
    return out;
}

}  // namespace detail

/// Max pairwise distance among rationalizations of (e, c) in the given
/// monotonicity class. Sampled estimates are lower bounds; exhaustive mode
/// enumerates every total preorder.
inline DiameterEstimate diameter_estimate(const ExperimentSequence& e, const ChoiceSequence& c, Monotonicity monotone,
                                          std::size_t num_samples, std::uint64_t seed,
                                          DiameterMethod method = DiameterMethod::automatic) {
    const RevealedRelation r = revealed_relation(e, c, monotone);
    if (!check_consistency(r).consistent) throw PreconditionError("data are inconsistent with the policy class");
    if (method == DiameterMethod::automatic) {
        method = e.space->size() <= exhaustive_point_limit ? DiameterMethod::exhaustive : DiameterMethod::sampled;
    }
    if (method == DiameterMethod::exhaustive) {
        if (e.space->size() > exhaustive_point_limit) throw CapacityError("exhaustive diameter needs at most 8 points");
        return detail::exhaustive_diameter(e, c, monotone);
    }
    if (num_samples == 0) throw ConfigError("sampled diameter needs at least one sample");
    const ExtensionSampler sampler(r);
    auto rng = make_rng(seed);
    std::vector<Preference> samples;
    samples.reserve(num_samples);
    // Layered draws alternate with linear extensions along a random direction
    // and its opposite, which reach far-apart completions more often.
    const auto& space = *e.space;
    std::vector<double> w;
    std::vector<double> key(space.size());
    for (std::size_t s = 0; s < num_samples; ++s) {
        switch (s % 4) {
        case 2:
            w.assign(space.point(0).size(), 0.0);
            for (double& x : w) x = 2.0 * uniform_unit(rng) - 1.0;
            [[fallthrough]];
        case 3:
            for (std::size_t i = 0; i < space.size(); ++i) {
                double k = 0.0;
                for (std::size_t d = 0; d < w.size(); ++d) k += w[d] * space.point(i)[d];
                key[i] = s % 4 == 2 ? k : -k;
            }
            samples.push_back(sampler.sample_ordered(key));
            break;
        default: samples.push_back(sampler.sample(rng));
        }
    }
    DiameterEstimate out;
    out.method = DiameterMethod::sampled;
    out.rationalizations = samples.size();
    out.value = max_pairwise_distance(samples);
    return out;
}

}  // namespace prefid
