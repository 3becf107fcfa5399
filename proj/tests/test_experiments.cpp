#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "prefid/experiments.hpp"
#include "prefid/revealed.hpp"

using namespace prefid;

namespace {

std::vector<double> sums(const OrderedSpace& s) {
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (double x : s.point(i)) v[i] += x;
    }
    return v;
}

}  // namespace

TEST(EnumeratePairs, ThreeMembersGiveThreePairs) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = enumerate_pairs(full_subset(s), Schedule::diagonal());
    ASSERT_EQ(e.size(), 3u);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [x, y] : e.pairs) seen.insert({std::min(x, y), std::max(x, y)});
    EXPECT_EQ(seen.size(), 3u);
}

TEST(EnumeratePairs, ShuffleIsSeedDeterministic) {
    auto s = make_grid_euclidean(1, 10, {{0.0, 1.0}});
    const auto a = enumerate_pairs(full_subset(s), Schedule::shuffled(7));
    const auto b = enumerate_pairs(full_subset(s), Schedule::shuffled(7));
    const auto c = enumerate_pairs(full_subset(s), Schedule::shuffled(8));
    EXPECT_EQ(a.pairs, b.pairs);
    EXPECT_NE(a.pairs, c.pairs);
    EXPECT_EQ(a.size(), 45u);
}

TEST(EnumeratePairs, DiagonalOrderMatchesClosedForm) {
    // Rank of {i, j}, i < j, in the diagonal order: all pairs with a smaller
    // index sum come first, then those with the same sum and smaller i.
    const std::size_t m = 4;
    auto s = make_grid_euclidean(1, m, {{0.0, 1.0}});
    const auto e = enumerate_pairs(full_subset(s), Schedule::diagonal());
    auto rank = [&](std::size_t i, std::size_t j) {
        std::size_t r = 0;
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a + 1; b < m; ++b) {
                if (a + b < i + j || (a + b == i + j && a < i)) ++r;
            }
        }
        return r;
    };
    for (std::size_t k = 0; k < e.size(); ++k) {
        const auto [x, y] = e.pairs[k];
        EXPECT_EQ(rank(std::min(x, y), std::max(x, y)), k);
    }
}

TEST(EnumeratePairs, EveryPairOfBOnceAndNothingOutside) {
    auto s = make_grid_euclidean(2, 5, {{0.0, 1.0}});
    const auto b = strided_subset(s, 2);
    const auto e = enumerate_pairs(b, Schedule::shuffled(3));
    const std::size_t m = b.members.size();
    EXPECT_EQ(e.size(), m * (m - 1) / 2);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [x, y] : e.pairs) {
        EXPECT_TRUE(b.contains(x));
        EXPECT_TRUE(b.contains(y));
        EXPECT_NE(x, y);
        EXPECT_TRUE(seen.insert({std::min(x, y), std::max(x, y)}).second);
    }
}

TEST(EnumeratePairs, TooSmallSubset) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    EXPECT_THROW(enumerate_pairs(make_dense_subset(s, {1}), Schedule::diagonal()), DomainError);
}

TEST(GenerateChoices, StrictPairsGiveTheBetterElementInBothModes) {
    auto s = make_grid_euclidean(1, 4, {{0.0, 1.0}});
    const auto p = from_utility(s, sums(*s));
    const auto e = enumerate_pairs(full_subset(s), Schedule::diagonal());
    for (auto mode : {ChoiceMode::strong, ChoiceMode::weak}) {
        const auto c = generate_choices(p, e, mode, TiePolicy::first());
        for (std::size_t k = 0; k < e.size(); ++k) {
            const auto [x, y] = e.pairs[k];
            EXPECT_EQ(c.choices[k].x, p.strictly_prefers(x, y));
            EXPECT_EQ(c.choices[k].y, p.strictly_prefers(y, x));
        }
    }
}

TEST(GenerateChoices, IndifferenceInStrongModeGivesBoth) {
    auto s = make_grid_euclidean(1, 4, {{0.0, 1.0}});
    const auto p = total_indifference(s);
    const auto e = enumerate_pairs(full_subset(s), Schedule::diagonal());
    const auto c = generate_choices(p, e, ChoiceMode::strong, TiePolicy::both());
    for (const auto& ch : c.choices) EXPECT_TRUE(ch.x && ch.y);
}

TEST(GenerateChoices, WeakRandomTiesAreSeedReproducibleSingletons) {
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    const auto p = total_indifference(s);
    const auto e = enumerate_pairs(full_subset(s), Schedule::diagonal());
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto a = generate_choices(p, e, ChoiceMode::weak, TiePolicy::random(seed));
        const auto b = generate_choices(p, e, ChoiceMode::weak, TiePolicy::random(seed));
        EXPECT_EQ(a.choices, b.choices);
        std::size_t xs = 0;
        for (const auto& ch : a.choices) {
            EXPECT_NE(ch.x, ch.y);
            xs += ch.x ? 1 : 0;
        }
        // Both sides get picked.
        EXPECT_GT(xs, 0u);
        EXPECT_LT(xs, a.size());
    }
}

TEST(GenerateChoices, WeakModeRejectsBothTies) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = enumerate_pairs(full_subset(s), Schedule::diagonal());
    EXPECT_THROW(generate_choices(total_indifference(s), e, ChoiceMode::weak, TiePolicy::both()), ConfigError);
}

TEST(GenerateChoices, GeneratorAlwaysReplaysItsData) {
    std::mt19937_64 rng(1);
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    for (int t = 0; t < 20; ++t) {
        std::vector<int> ranks(s->size());
        for (auto& r : ranks) r = static_cast<int>(rng() % 4);
        const Preference p(s, ranks);
        const auto e = enumerate_pairs(full_subset(s), Schedule::shuffled(t));
        for (auto mode : {ChoiceMode::strong, ChoiceMode::weak}) {
            const auto c = generate_choices(p, e, mode, mode == ChoiceMode::strong ? TiePolicy::both() : TiePolicy::random(t));
            EXPECT_TRUE(replays(p, e, c));
            for (std::size_t k = 1; k <= e.size(); k += 17) {
                const auto [ek, ck] = restrict(e, c, k);
                EXPECT_TRUE(replays(p, ek, ck));
            }
            // Weak-mode output never contains a strictly worse element.
            for (std::size_t k = 0; k < e.size(); ++k) {
                const auto [x, y] = e.pairs[k];
                EXPECT_TRUE(!c.choices[k].x || p.weakly_prefers(x, y));
                EXPECT_TRUE(!c.choices[k].y || p.weakly_prefers(y, x));
            }
        }
    }
}

TEST(Replay, DetectsTheFirstMismatch) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}, {1, 2}, {0, 2}});
    ChoiceSequence c{ChoiceMode::strong, {{false, true}, {true, true}, {false, true}}};
    const Preference p(s, {0, 1, 2});
    EXPECT_EQ(first_replay_failure(p, e, c), 1u);
    const Preference q(s, {0, 1, 1});
    EXPECT_TRUE(replays(q, e, c));
    ChoiceSequence weak{ChoiceMode::weak, {{false, true}, {true, false}, {false, true}}};
    EXPECT_TRUE(replays(q, e, weak));
    EXPECT_FALSE(replays(p, e, weak));
}

TEST(Restrict, PrefixViews) {
    auto s = make_grid_euclidean(1, 5, {{0.0, 1.0}});
    const auto p = from_utility(s, sums(*s));
    const auto e = enumerate_pairs(full_subset(s), Schedule::shuffled(2));
    const auto c = generate_choices(p, e, ChoiceMode::strong, TiePolicy::both());
    const auto [ef, cf] = restrict(e, c, e.size());
    EXPECT_EQ(ef.pairs, e.pairs);
    EXPECT_EQ(cf.choices, c.choices);
    const auto [e1, c1] = restrict(e, c, 1);
    EXPECT_EQ(e1.size(), 1u);
    EXPECT_EQ(c1.size(), 1u);
    EXPECT_THROW(restrict(e, c, 0), DomainError);
    EXPECT_THROW(restrict(e, c, e.size() + 1), DomainError);
}

TEST(Restrict, RevealedRelationsGrowWithThePrefix) {
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    const auto p = from_utility(s, sums(*s));
    const auto e = enumerate_pairs(full_subset(s), Schedule::shuffled(9));
    const auto c = generate_choices(p, e, ChoiceMode::strong, TiePolicy::both());
    RevealedRelation prev = revealed_relation(restrict(e, c, 1).first, restrict(e, c, 1).second, Monotonicity::none);
    for (std::size_t k = 2; k <= e.size(); ++k) {
        const auto [ek, ck] = restrict(e, c, k);
        const RevealedRelation cur = revealed_relation(ek, ck, Monotonicity::none);
        EXPECT_TRUE(prev.weak_edges().subset_of(cur.weak_edges()));
        EXPECT_TRUE(prev.strict_edges().subset_of(cur.strict_edges()));
        prev = cur;
    }
}

TEST(Coverage, FullRunAsksEveryPair) {
    auto s = make_grid_euclidean(2, 3, {{0.0, 1.0}});
    const auto e = enumerate_pairs(full_subset(s), Schedule::shuffled(4));
    std::map<std::pair<std::size_t, std::size_t>, int> count;
    for (auto [x, y] : e.pairs) ++count[{std::min(x, y), std::max(x, y)}];
    for (std::size_t i = 0; i < s->size(); ++i) {
        for (std::size_t j = i + 1; j < s->size(); ++j) EXPECT_EQ((count[{i, j}]), 1);
    }
}

TEST(ExperimentFromPairs, Validation) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    EXPECT_THROW(experiment_from_pairs(s, {{0, 3}}), DomainError);
    EXPECT_THROW(experiment_from_pairs(s, {{1, 1}}), DomainError);
    const auto e = experiment_from_pairs(s, {{2, 0}});
    EXPECT_EQ(e.subset.members, (std::vector<std::size_t>{0, 2}));
}

TEST(ChoiceModeNames, RoundTrip) {
    EXPECT_EQ(choice_mode_from_string("strong"), ChoiceMode::strong);
    EXPECT_EQ(choice_mode_from_string(to_string(ChoiceMode::weak)), ChoiceMode::weak);
    EXPECT_THROW(choice_mode_from_string("partial"), ConfigError);
}
