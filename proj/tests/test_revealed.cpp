#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <random>

#include "prefid/experiments.hpp"
#include "prefid/revealed.hpp"

using namespace prefid;

namespace {

// All weak orders on n points as rank vectors, built by ordered set partition.
std::vector<std::vector<int>> weak_orders(std::size_t n) {
    std::vector<std::vector<int>> out;
    std::vector<int> ranks(n, -1);
    auto rec = [&](auto& self, std::size_t placed, int level) -> void {
        if (placed == n) {
            out.push_back(ranks);
            return;
        }
        // choose a nonempty set of unplaced points for this level
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < n; ++i) {
            if (ranks[i] < 0) free.push_back(i);
        }
        for (std::size_t mask = 1; mask < (std::size_t{1} << free.size()); ++mask) {
            std::size_t cnt = 0;
            for (std::size_t b = 0; b < free.size(); ++b) {
                if (mask >> b & 1U) ranks[free[b]] = level, ++cnt;
            }
            self(self, placed + cnt, level + 1);
            for (std::size_t b = 0; b < free.size(); ++b) {
                if (mask >> b & 1U) ranks[free[b]] = -1;
            }
        }
    };
    rec(rec, 0, 0);
    return out;
}

bool satisfies(const std::vector<int>& rank, const RevealedRelation& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r.has_weak(i, j) && rank[i] < rank[j]) return false;
            if (r.has_strict(i, j) && rank[i] <= rank[j]) return false;
        }
    }
    return true;
}

// Length (edges) of the shortest cycle through a strict edge, or 0.
std::size_t shortest_strict_cycle(const RevealedRelation& r) {
    const std::size_t n = r.size();
    std::size_t best = 0;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (!r.has_strict(u, v)) continue;
            std::vector<int> dist(n, -1);
            std::deque<std::size_t> q{v};
            dist[v] = 0;
            while (!q.empty()) {
                const auto a = q.front();
                q.pop_front();
                for (std::size_t b = 0; b < n; ++b) {
                    if (dist[b] < 0 && (r.has_weak(a, b) || r.has_strict(a, b))) {
                        dist[b] = dist[a] + 1;
                        q.push_back(b);
                    }
                }
            }
            if (dist[u] >= 0) {
                const std::size_t len = static_cast<std::size_t>(dist[u]) + 1;
                if (best == 0 || len < best) best = len;
            }
        }
    }
    return best;
}

RevealedRelation random_relation(const SpacePtr& s, std::mt19937_64& rng, std::size_t edges, Monotonicity m) {
    std::vector<IndexPair> pairs;
    std::vector<Choice> choices;
    for (std::size_t k = 0; k < edges; ++k) {
        std::size_t x = rng() % s->size(), y = rng() % s->size();
        if (x == y) continue;
        pairs.emplace_back(x, y);
        const auto roll = rng() % 3;
        choices.push_back({roll != 1, roll != 0});
    }
    const auto e = experiment_from_pairs(s, pairs);
    return revealed_relation(e, ChoiceSequence{rng() % 2 ? ChoiceMode::strong : ChoiceMode::weak, choices}, m);
}

}  // namespace

TEST(RevealedRelationTest, WeakModeChoiceGivesOneWeakEdge) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 2}});
    const auto r = revealed_relation(e, {ChoiceMode::weak, {{true, false}}}, Monotonicity::none);
    EXPECT_TRUE(r.has_weak(0, 2));
    EXPECT_EQ(r.weak_edges().count(), 1u);
    EXPECT_TRUE(r.strict_edges().empty());
    ASSERT_EQ(r.data_edges().size(), 1u);
    EXPECT_EQ(r.data_edges()[0].k, 1u);
    EXPECT_EQ(r.source(0, 2), EdgeSource::data);
    EXPECT_FALSE(r.source(2, 0).has_value());
}

TEST(RevealedRelationTest, StrongModeIndifferenceGivesWeakEdgesBothWays) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 2}, {1, 2}});
    const auto r = revealed_relation(e, {ChoiceMode::strong, {{true, true}, {false, true}}}, Monotonicity::none);
    EXPECT_TRUE(r.has_weak(0, 2));
    EXPECT_TRUE(r.has_weak(2, 0));
    EXPECT_TRUE(r.has_strict(2, 1));
    EXPECT_EQ(r.strict_edges().count(), 1u);
    EXPECT_EQ(r.data_edges().back().k, 2u);
}

TEST(RevealedRelationTest, StrictMonotonicityWithoutData) {
    auto s = make_grid_euclidean(1, 4, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {});
    const auto r = revealed_relation(e, {ChoiceMode::strong, {}}, Monotonicity::strict);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            EXPECT_EQ(r.has_strict(i, j), s->strictly_dominates(i, j));
            if (s->strictly_dominates(i, j)) {
                EXPECT_EQ(r.source(i, j), EdgeSource::monotonicity);
            }
        }
    }
    EXPECT_TRUE(r.data_edges().empty());
    // Covering pairs only: three weak and three strict.
    EXPECT_EQ(r.constraints().size(), 6u);
}

TEST(RevealedRelationTest, EmptyChoiceIsRejected) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}});
    EXPECT_THROW(revealed_relation(e, {ChoiceMode::weak, {{false, false}}}), DomainError);
}

TEST(Consistency, DirectContradiction) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 2}, {2, 0}});
    const auto r = revealed_relation(e, {ChoiceMode::strong, {{true, false}, {true, false}}});
    const auto res = check_consistency(r);
    EXPECT_FALSE(res.consistent);
    EXPECT_EQ(res.witness, (std::vector<std::size_t>{0, 2, 0}));
}

TEST(Consistency, MonotonicityConflict) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 2}});
    const auto r = revealed_relation(e, {ChoiceMode::strong, {{true, false}}}, Monotonicity::strict);
    const auto res = check_consistency(r);
    EXPECT_FALSE(res.consistent);
    EXPECT_EQ(res.witness.front(), res.witness.back());
    EXPECT_TRUE(check_consistency(revealed_relation(e, {ChoiceMode::strong, {{true, false}}})).consistent);
}

TEST(Consistency, GeneratorDataIsConsistentInItsClass) {
    std::mt19937_64 rng(3);
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    for (int t = 0; t < 15; ++t) {
        std::vector<double> v(s->size());
        const double w = 0.2 + (rng() % 100) / 50.0;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = w * s->point(i)[0] + s->point(i)[1] + (t % 2 ? 0.0 : 0.05 * (i % 3 == 0));
        const Preference p = from_utility(s, v);
        const Monotonicity m = is_strictly_monotone(p) ? Monotonicity::strict
                               : is_weakly_monotone(p) ? Monotonicity::weak
                                                       : Monotonicity::none;
        const auto e = enumerate_pairs(full_subset(s), Schedule::shuffled(t));
        for (auto mode : {ChoiceMode::strong, ChoiceMode::weak}) {
            const auto c = generate_choices(p, e, mode, mode == ChoiceMode::strong ? TiePolicy::both() : TiePolicy::random(t));
            EXPECT_TRUE(check_consistency(revealed_relation(e, c, m)).consistent);
        }
    }
}

TEST(Consistency, WitnessIsAShortestCanonicalCycle) {
    // Two strict cycles: 3 -> 1 -> 3 (length 2) and 0 -> 2 -> 4 -> 0 (length 3).
    auto s = make_euclidean_points({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}}, 1.0);
    const auto e = experiment_from_pairs(s, {{0, 2}, {2, 4}, {4, 0}, {3, 1}, {1, 3}});
    const auto r = revealed_relation(e, {ChoiceMode::weak, {{true, false}, {true, false}, {true, false}, {true, false}, {true, false}}});
    EXPECT_TRUE(check_consistency(r).consistent);  // weak edges only
    const auto strong = revealed_relation(
        e, {ChoiceMode::strong, {{true, false}, {true, false}, {true, false}, {true, false}, {true, false}}});
    const auto res = check_consistency(strong);
    EXPECT_FALSE(res.consistent);
    EXPECT_EQ(res.witness, (std::vector<std::size_t>{1, 3, 1}));
}

TEST(Consistency, WitnessTieBreaksLexicographically) {
    auto s = make_euclidean_points({{0.0}, {1.0}, {2.0}, {3.0}}, 1.0);
    // Cycles 2 > 3 > 2 and 0 > 1 > 0, both of length 2.
    const auto e = experiment_from_pairs(s, {{2, 3}, {3, 2}, {1, 0}, {0, 1}});
    const auto r = revealed_relation(e, {ChoiceMode::strong, {{true, false}, {true, false}, {true, false}, {true, false}}});
    EXPECT_EQ(check_consistency(r).witness, (std::vector<std::size_t>{0, 1, 0}));
}

TEST(Consistency, AgreesWithBruteForceOnRandomRelations) {
    std::mt19937_64 rng(4);
    for (std::size_t n = 2; n <= 5; ++n) {
        auto s = make_grid_euclidean(1, n, {{0.0, 1.0}});
        const auto orders = weak_orders(n);
        for (int t = 0; t < 60; ++t) {
            const auto m = static_cast<Monotonicity>(t % 3);
            const auto r = random_relation(s, rng, 1 + t % 6, m);
            const bool exists = std::any_of(orders.begin(), orders.end(), [&](const auto& o) { return satisfies(o, r); });
            const auto res = check_consistency(r);
            ASSERT_EQ(res.consistent, exists);
            if (exists) continue;
            // Witness: a closed walk in weak or strict edges through a strict edge, of minimal length.
            const auto& w = res.witness;
            ASSERT_GE(w.size(), 2u);
            EXPECT_EQ(w.front(), w.back());
            EXPECT_EQ(*std::min_element(w.begin(), w.end()), w.front());
            bool has_strict = false;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                EXPECT_TRUE(r.has_weak(w[i], w[i + 1]) || r.has_strict(w[i], w[i + 1]));
                has_strict = has_strict || r.has_strict(w[i], w[i + 1]);
            }
            EXPECT_TRUE(has_strict);
            EXPECT_EQ(w.size() - 1, shortest_strict_cycle(r));
        }
    }
}

TEST(Condensation, EdgesPointToSmallerComponents) {
    std::mt19937_64 rng(5);
    auto s = make_grid_euclidean(2, 3, {{0.0, 1.0}});
    for (int t = 0; t < 30; ++t) {
        const auto r = random_relation(s, rng, 8, Monotonicity::weak);
        const auto cond = condense(r);
        for (std::size_t i = 0; i < r.size(); ++i) {
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (r.has_weak(i, j) || r.has_strict(i, j)) {
                    EXPECT_LE(cond.comp[j], cond.comp[i]);
                }
            }
        }
        for (std::size_t c = 0; c < cond.count; ++c) {
            for (auto [d, strict] : cond.succ[c]) EXPECT_LT(d, c);
        }
        EXPECT_EQ(cond.consistent, check_consistency(r).consistent);
    }
}

TEST(MonotonicityNames, RoundTrip) {
    for (auto m : {Monotonicity::none, Monotonicity::weak, Monotonicity::strict}) {
        EXPECT_EQ(monotonicity_from_string(to_string(m)), m);
    }
    EXPECT_THROW(monotonicity_from_string("very"), ConfigError);
}
