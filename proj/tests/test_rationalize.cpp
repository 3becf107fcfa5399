#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "prefid/diameter.hpp"
#include "prefid/rationalize.hpp"

using namespace prefid;

namespace {

std::vector<std::vector<int>> weak_orders(std::size_t n) {
    // Rank vectors with values 0..n-1; duplicates across relabelings are
    // removed by compressing through Preference.
    std::set<std::vector<int>> seen;
    std::vector<int> r(n, 0);
    auto rec = [&](auto& self, std::size_t i) -> void {
        if (i == n) {
            std::vector<int> sorted(r);
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            std::vector<int> c(n);
            for (std::size_t k = 0; k < n; ++k) {
                c[k] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), r[k]) - sorted.begin());
            }
            seen.insert(c);
            return;
        }
        for (int v = 0; v < static_cast<int>(n); ++v) {
            r[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return {seen.begin(), seen.end()};
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

std::vector<double> sums(const OrderedSpace& s) {
    std::vector<double> v(s.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (double x : s.point(i)) v[i] += x;
    }
    return v;
}

// Random data drawn from a random weak order, so it is always consistent.
std::pair<ExperimentSequence, ChoiceSequence> consistent_data(const SpacePtr& s, std::mt19937_64& rng, std::size_t k,
                                                          ChoiceMode mode) {
    std::vector<int> ranks(s->size());
    for (auto& r : ranks) r = static_cast<int>(rng() % 4);
    const Preference gen(s, ranks);
    std::vector<IndexPair> pairs;
    while (pairs.size() < k) {
        const std::size_t x = rng() % s->size(), y = rng() % s->size();
        if (x != y) pairs.emplace_back(x, y);
    }
    const auto e = experiment_from_pairs(s, pairs);
    const auto c =
        generate_choices(gen, e, mode, mode == ChoiceMode::strong ? TiePolicy::both() : TiePolicy::random(rng()));
    return {e, c};
}

std::size_t find_point(const OrderedSpace& s, const Point& p) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        bool same = true;
        for (std::size_t d = 0; d < p.size(); ++d) same = same && std::abs(s.point(i)[d] - p[d]) < 1e-9;
        if (same) return i;
    }
    throw std::runtime_error("point not found");
}

Choice pick_x() { return {true, false}; }

}  // namespace

TEST(CanonicalExtension, EmptyDataGiveTotalIndifference) {
    auto s = make_grid_euclidean(2, 3, {{0.0, 1.0}});
    const auto r = revealed_relation(experiment_from_pairs(s, {}), {ChoiceMode::strong, {}});
    EXPECT_EQ(canonical_extension(r), total_indifference(s));
}

TEST(CanonicalExtension, ExtendsTheRelationWithTheFewestClasses) {
    std::mt19937_64 rng(11);
    auto s = make_grid_euclidean(1, 5, {{0.0, 1.0}});
    const auto orders = weak_orders(5);
    for (int t = 0; t < 40; ++t) {
        const auto [e, c] = consistent_data(s, rng, 1 + t % 7, t % 2 ? ChoiceMode::strong : ChoiceMode::weak);
        const auto r = revealed_relation(e, c, static_cast<Monotonicity>(t % 3));
        if (!check_consistency(r).consistent) continue;
        const Preference p = canonical_extension(r);
        EXPECT_TRUE(satisfies(p.ranks(), r));
        std::size_t fewest = 99;
        for (const auto& o : orders) {
            if (satisfies(o, r)) fewest = std::min(fewest, Preference(s, o).num_classes());
        }
        EXPECT_EQ(p.num_classes(), fewest);
    }
}

TEST(CanonicalExtension, InconsistentDataThrow) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}, {1, 0}});
    const auto r = revealed_relation(e, {ChoiceMode::strong, {pick_x(), pick_x()}});
    EXPECT_THROW(canonical_extension(r), PreconditionError);
}

TEST(ExtensionSampler, EnumerationMatchesBruteForce) {
    std::mt19937_64 rng(12);
    for (std::size_t n = 2; n <= 5; ++n) {
        auto s = make_grid_euclidean(1, n, {{0.0, 1.0}});
        const auto orders = weak_orders(n);
        for (int t = 0; t < 25; ++t) {
            const auto [e, c] = consistent_data(s, rng, t % 5, t % 2 ? ChoiceMode::strong : ChoiceMode::weak);
            const auto r = revealed_relation(e, c, t % 3 == 0 ? Monotonicity::weak : Monotonicity::none);
            if (!check_consistency(r).consistent) continue;
            std::set<std::vector<int>> expected;
            for (const auto& o : orders) {
                if (satisfies(o, r)) expected.insert(o);
            }
            const ExtensionSampler sampler(r);
            std::set<std::vector<int>> got;
            for (const auto& p : sampler.enumerate()) got.insert(p.ranks());
            ASSERT_EQ(got, expected);
        }
    }
}

TEST(ExtensionSampler, SamplesStayInTheSupportAndReachAllOfIt) {
    auto s = make_grid_euclidean(1, 4, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}});
    const auto r = revealed_relation(e, {ChoiceMode::strong, {{false, true}}});
    const ExtensionSampler sampler(r);
    std::set<std::vector<int>> support;
    for (const auto& p : sampler.enumerate()) support.insert(p.ranks());
    auto rng = make_rng(5);
    std::set<std::vector<int>> seen;
    for (int i = 0; i < 20000; ++i) {
        const auto p = sampler.sample(rng);
        ASSERT_TRUE(support.count(p.ranks()));
        seen.insert(p.ranks());
    }
    EXPECT_EQ(seen, support);
}

TEST(ExtensionSampler, OrderedExtensionsAreRationalizationsSortedByKey) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    for (int t = 0; t < 30; ++t) {
        const auto [e, c] = consistent_data(s, rng, 1 + t % 9, t % 2 ? ChoiceMode::strong : ChoiceMode::weak);
        const auto r = revealed_relation(e, c, static_cast<Monotonicity>(t % 3));
        if (!check_consistency(r).consistent) continue;
        std::vector<double> key(s->size());
        for (double& k : key) k = unit(rng);
        const ExtensionSampler sampler(r);
        const auto p = sampler.sample_ordered(key);
        EXPECT_TRUE(satisfies(p.ranks(), r));
        EXPECT_TRUE(replays(p, e, c));
        // One class per component.
        EXPECT_EQ(p.num_classes(), sampler.num_components());
    }
    // Without constraints the order follows the keys.
    const auto free = revealed_relation(experiment_from_pairs(s, {}), {ChoiceMode::strong, {}});
    std::vector<double> key(s->size());
    for (std::size_t i = 0; i < key.size(); ++i) key[i] = -static_cast<double>(i);
    const auto p = ExtensionSampler(free).sample_ordered(key);
    for (std::size_t i = 0; i + 1 < key.size(); ++i) EXPECT_TRUE(p.strictly_prefers(i, i + 1));
    EXPECT_THROW(ExtensionSampler(free).sample_ordered(std::vector<double>{1.0}), DomainError);
}

TEST(ExtensionSampler, SeedDeterminism) {
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    std::mt19937_64 rng(3);
    const auto [e, c] = consistent_data(s, rng, 12, ChoiceMode::weak);
    const auto r = revealed_relation(e, c);
    auto a = make_rng(9), b = make_rng(9);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(random_extension(r, a), random_extension(r, b));
}

TEST(AdversarialFar, ReportsItsOwnDistanceAndRationalizes) {
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    const Preference target = from_utility(s, sums(*s));
    std::mt19937_64 rng(21);
    const auto [e, c] = consistent_data(s, rng, 10, ChoiceMode::strong);
    const auto r = revealed_relation(e, c);
    const auto adv = adversarial_far(r, target, 4, 400, 2);
    EXPECT_TRUE(satisfies(adv.preference.ranks(), r));
    EXPECT_DOUBLE_EQ(adv.distance, closed_convergence_distance(adv.preference, target));
    EXPECT_LE(adv.evaluations, 400u + 16u);
    EXPECT_TRUE(adversarial_far(r, target, 4, 1, 1).budget_exhausted);
}

TEST(Prop1Construction, CellsAndBound) {
    auto s = make_grid_euclidean(1, 101, {{0.0, 1.0}});
    const Preference gen = from_utility(s, sums(*s));
    const auto e = enumerate_pairs(strided_subset(s, 10), Schedule::shuffled(3));
    const auto c = generate_choices(gen, e, ChoiceMode::strong, TiePolicy::both());
    for (std::size_t k : {1u, 2u, 5u, 20u}) {
        const auto [ek, ck] = restrict(e, c, k);
        const auto res = prop1_construction(ek, ck);
        EXPECT_DOUBLE_EQ(res.cell_diameter_bound, std::max(1.0 / (2.0 * k), 2.0 * s->grid_step()));
        std::size_t next = 0;
        for (const auto& cell : res.cells) {
            EXPECT_EQ(cell.begin, next);
            EXPECT_GE(cell.end - cell.begin, 2u);
            EXPECT_LE((cell.end - 1 - cell.begin) * s->grid_step(), res.cell_diameter_bound + 1e-12);
            next = cell.end;
        }
        EXPECT_EQ(next, s->size());
        EXPECT_TRUE(replays(res.preference, ek, ck));
        EXPECT_LE(closed_convergence_distance(res.preference, total_indifference(s)),
                  res.cell_diameter_bound + 1e-12);
    }
}

TEST(Prop1Construction, NeedsAOneDimensionalGrid) {
    auto s = make_grid_euclidean(2, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}});
    EXPECT_THROW(prop1_construction(e, {ChoiceMode::strong, {pick_x()}}), DomainError);
}

TEST(Simplex, TextbookProblem) {
    const auto sol = lp::maximize({{1, 2}, {3, 1}}, {4, 6}, {1, 1});
    ASSERT_EQ(sol.status, lp::Status::optimal);
    EXPECT_NEAR(sol.value, 2.8, 1e-9);
    EXPECT_NEAR(sol.x[0], 1.6, 1e-9);
    EXPECT_NEAR(sol.x[1], 1.2, 1e-9);
}

TEST(Simplex, InfeasibleAndUnbounded) {
    EXPECT_EQ(lp::maximize({{1}}, {-1}, {1}).status, lp::Status::infeasible);
    EXPECT_EQ(lp::maximize({{-1}}, {0}, {1}).status, lp::Status::unbounded);
}

TEST(Simplex, AgreesWithVertexEnumerationIn2D) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::vector<double>> A{{1, 0}, {0, 1}};
        std::vector<double> b{10, 10};
        for (int i = 0; i < 4; ++i) {
            A.push_back({coef(rng), coef(rng)});
            b.push_back(coef(rng) + 1.0);
        }
        const std::vector<double> obj{coef(rng), coef(rng)};
        // All constraints including x >= 0, y >= 0.
        auto rows = A;
        auto rhs = b;
        rows.push_back({-1, 0});
        rhs.push_back(0);
        rows.push_back({0, -1});
        rhs.push_back(0);
        bool feasible = false;
        double best = -1e300;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                const double det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
                if (std::abs(det) < 1e-12) continue;
                const double x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det;
                const double y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det;
                bool ok = true;
                for (std::size_t k = 0; k < rows.size(); ++k) ok = ok && rows[k][0] * x + rows[k][1] * y <= rhs[k] + 1e-9;
                if (ok) {
                    feasible = true;
                    best = std::max(best, obj[0] * x + obj[1] * y);
                }
            }
        }
        const auto sol = lp::maximize(A, b, obj);
        ASSERT_EQ(sol.status == lp::Status::optimal, feasible) << "trial " << t;
        if (feasible) {
            EXPECT_NEAR(sol.value, best, 1e-7);
        }
    }
}

TEST(ExpectedUtility, RecoversTheGeneratorFromFullData) {
    auto s = make_lottery_simplex(3, 4);
    const std::vector<double> u{0.0, 0.3, 1.0};
    std::vector<double> v(s->size());
    for (std::size_t x = 0; x < s->size(); ++x) {
        for (std::size_t i = 0; i < 3; ++i) v[x] += u[i] * s->point(x)[i];
    }
    const Preference gen = from_utility(s, v);
    const auto e = enumerate_pairs(full_subset(s), Schedule::shuffled(1));
    const auto c = generate_choices(gen, e, ChoiceMode::strong, TiePolicy::both());
    const auto fit = eu_rationalize(e, c);
    ASSERT_TRUE(fit.feasible);
    EXPECT_FALSE(fit.degenerate);
    EXPECT_GT(fit.margin, 0.0);
    EXPECT_EQ(*fit.preference, gen);
    double norm = 0.0;
    for (double x : fit.values) norm += x * x;
    EXPECT_NEAR(norm, 1.0, 1e-9);
}

TEST(ExpectedUtility, ForcedOrderingOfPrizes) {
    auto s = make_lottery_simplex(3, 1);
    const auto p0 = find_point(*s, {1, 0, 0}), p1 = find_point(*s, {0, 1, 0}), p2 = find_point(*s, {0, 0, 1});
    const auto e = experiment_from_pairs(s, {{p2, p1}, {p1, p0}});
    const auto fit = eu_rationalize(e, {ChoiceMode::strong, {pick_x(), pick_x()}});
    ASSERT_TRUE(fit.feasible);
    EXPECT_GT(fit.values[2], fit.values[1]);
    EXPECT_GT(fit.values[1], fit.values[0]);
}

TEST(ExpectedUtility, InteriorPeakIsInfeasible) {
    // With two prizes, expected utility is affine along the segment, so a
    // strict interior maximum cannot be rationalized.
    auto s = make_lottery_simplex(2, 2);
    const auto lo = find_point(*s, {1, 0}), mid = find_point(*s, {0.5, 0.5}), hi = find_point(*s, {0, 1});
    const auto e = experiment_from_pairs(s, {{mid, lo}, {mid, hi}});
    const ChoiceSequence c{ChoiceMode::strong, {pick_x(), pick_x()}};
    EXPECT_TRUE(check_consistency(revealed_relation(e, c)).consistent);
    EXPECT_FALSE(eu_rationalize(e, c).feasible);
}

TEST(ExpectedUtility, WeakDataAreDegenerate) {
    auto s = make_lottery_simplex(2, 2);
    const auto e = experiment_from_pairs(s, {{0, 1}});
    const auto fit = eu_rationalize(e, {ChoiceMode::weak, {pick_x()}});
    EXPECT_TRUE(fit.feasible);
    EXPECT_TRUE(fit.degenerate);
}

TEST(Lipschitz, NoDataIsFeasible) {
    auto s = make_grid_euclidean(2, 3, {{0.0, 1.0}});
    const auto fit = lipschitz_rationalize(experiment_from_pairs(s, {}), {ChoiceMode::strong, {}}, 0.5, 2.0);
    EXPECT_TRUE(fit.feasible);
    EXPECT_TRUE(fit.degenerate);
    EXPECT_TRUE(is_strictly_monotone(*fit.preference));
}

TEST(Lipschitz, MonotonicityViolationIsInfeasible) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 2}});
    EXPECT_FALSE(lipschitz_rationalize(e, {ChoiceMode::weak, {pick_x()}}, 0.5, 2.0).feasible);
}

TEST(Lipschitz, IncrementsStayInTheBand) {
    auto s = make_grid_euclidean(2, 4, {{0.0, 1.0}});
    const Preference gen = from_utility(s, sums(*s));
    const auto e = enumerate_pairs(full_subset(s), Schedule::shuffled(6));
    const auto c = generate_choices(gen, e, ChoiceMode::strong, TiePolicy::both());
    for (std::size_t k : {std::size_t{5}, std::size_t{40}, e.size()}) {
        const auto [ek, ck] = restrict(e, c, k);
        const auto fit = lipschitz_rationalize(ek, ck, 0.5, 2.0);
        ASSERT_TRUE(fit.feasible);
        EXPECT_TRUE(replays(*fit.preference, ek, ck));
        for (std::size_t x = 0; x < s->size(); ++x) {
            const auto lx = s->lattice(x);
            for (std::size_t d = 0; d < 2; ++d) {
                std::vector<int> up(lx.begin(), lx.end());
                ++up[d];
                if (const auto y = s->find_lattice(up)) {
                    const double inc = fit.values[*y] - fit.values[x];
                    const double h = s->grid_step();
                    EXPECT_GE(inc, 0.5 * h - 1e-9);
                    EXPECT_LE(inc, 2.0 * h + 1e-9);
                }
            }
        }
        if (k == e.size()) {
            EXPECT_EQ(closed_convergence_distance(*fit.preference, gen), 0.0);
        }
    }
}

TEST(Lipschitz, BandValidation) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    EXPECT_THROW(lipschitz_rationalize(experiment_from_pairs(s, {}), {ChoiceMode::strong, {}}, 2.0, 1.0), ConfigError);
}

TEST(Diameter, ExhaustiveMatchesBruteForce) {
    std::mt19937_64 rng(41);
    for (std::size_t n : {3u, 4u}) {
        auto s = make_grid_euclidean(1, n, {{0.0, 1.0}});
        const auto orders = weak_orders(n);
        for (int t = 0; t < 10; ++t) {
            const auto [e, c] = consistent_data(s, rng, 1 + t % 4, ChoiceMode::strong);
            const auto mono = static_cast<Monotonicity>(t % 2);
            const auto r = revealed_relation(e, c, mono);
            if (!check_consistency(r).consistent) continue;
            std::vector<Preference> all;
            for (const auto& o : orders) {
                if (satisfies(o, r)) all.emplace_back(s, o);
            }
            double expected = 0.0;
            for (const auto& a : all) {
                for (const auto& b : all) expected = std::max(expected, closed_convergence_distance(a, b));
            }
            const auto est = diameter_estimate(e, c, mono, 10, 0, DiameterMethod::exhaustive);
            EXPECT_EQ(est.method, DiameterMethod::exhaustive);
            EXPECT_EQ(est.rationalizations, all.size());
            EXPECT_DOUBLE_EQ(est.value, expected);
            // Sampling only finds a lower bound.
            EXPECT_LE(diameter_estimate(e, c, mono, 50, 1, DiameterMethod::sampled).value, expected + 1e-12);
        }
    }
}

TEST(Diameter, TwoPointsWithoutData) {
    auto s = make_grid_euclidean(1, 2, {{0.0, 1.0}});
    const auto est = diameter_estimate(experiment_from_pairs(s, {}), {ChoiceMode::strong, {}}, Monotonicity::none, 10, 0);
    EXPECT_EQ(est.method, DiameterMethod::exhaustive);
    EXPECT_EQ(est.rationalizations, 3u);
    EXPECT_DOUBLE_EQ(est.value, 1.0);
}

TEST(Diameter, FullStrongCoverageIsZero) {
    auto s = make_grid_euclidean(2, 3, {{0.0, 1.0}});
    const Preference gen = from_utility(s, sums(*s));
    const auto e = enumerate_pairs(full_subset(s), Schedule::diagonal());
    const auto c = generate_choices(gen, e, ChoiceMode::strong, TiePolicy::both());
    EXPECT_EQ(diameter_estimate(e, c, Monotonicity::none, 50, 0, DiameterMethod::sampled).value, 0.0);
}

TEST(Diameter, Errors) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}, {1, 0}});
    EXPECT_THROW(diameter_estimate(e, {ChoiceMode::strong, {pick_x(), pick_x()}}, Monotonicity::none, 10, 0),
                 PreconditionError);
    auto big = make_grid_euclidean(1, 9, {{0.0, 1.0}});
    EXPECT_THROW(diameter_estimate(experiment_from_pairs(big, {}), {ChoiceMode::strong, {}}, Monotonicity::none, 10, 0,
                                   DiameterMethod::exhaustive),
                 CapacityError);
    EXPECT_THROW(diameter_estimate(experiment_from_pairs(big, {}), {ChoiceMode::strong, {}}, Monotonicity::none, 0, 0),
                 ConfigError);
}

TEST(Rationalize, EveryPolicyReplaysConsistentData) {
    using K = RationalizationPolicy::Kind;
    // The cell construction needs unobserved points between the observed ones.
    auto grid = make_grid_euclidean(1, 41, {{0.0, 1.0}});
    auto lottery = make_lottery_simplex(3, 3);
    for (const auto& s : {grid, lottery}) {
        std::vector<double> v(s->size());
        for (std::size_t x = 0; x < s->size(); ++x) v[x] = s->point(x).back();
        const Preference gen = from_utility(s, v);
        const auto e = enumerate_pairs(s == grid ? strided_subset(s, 5) : full_subset(s), Schedule::shuffled(2));
        const auto c = generate_choices(gen, e, ChoiceMode::strong, TiePolicy::both());
        for (K kind : {K::canonical, K::randomized, K::adversarial_indifference, K::adversarial_far, K::eu_class,
                       K::lipschitz}) {
            if (kind == K::eu_class && s != lottery) continue;
            if ((kind == K::lipschitz || kind == K::adversarial_indifference) && s != grid) continue;
            RationalizationPolicy policy;
            policy.kind = kind;
            policy.seed = 3;
            policy.search_budget = 200;
            if (kind == K::adversarial_far) policy.target = total_indifference(s);
            for (std::size_t k : {std::size_t{1}, std::size_t{7}, e.size()}) {
                const auto [ek, ck] = restrict(e, c, k);
                const auto res = rationalize(ek, ck, policy);
                ASSERT_TRUE(res.consistent) << to_string(kind);
                ASSERT_TRUE(res.preference.has_value());
                EXPECT_TRUE(replays(*res.preference, ek, ck)) << to_string(kind) << " k=" << k;
                if (kind == K::adversarial_far) {
                    EXPECT_TRUE(res.delta_c_to_target.has_value());
                }
            }
        }
    }
}

TEST(Rationalize, InconsistentDataCarryAWitness) {
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}, {1, 2}, {2, 0}});
    const auto res = rationalize(e, {ChoiceMode::strong, {pick_x(), pick_x(), pick_x()}}, {});
    EXPECT_FALSE(res.consistent);
    EXPECT_FALSE(res.preference.has_value());
    EXPECT_EQ(res.witness_cycle, (std::vector<std::size_t>{0, 1, 2, 0}));
}

TEST(Rationalize, PolicyValidation) {
    using K = RationalizationPolicy::Kind;
    auto s = make_grid_euclidean(1, 3, {{0.0, 1.0}});
    const auto e = experiment_from_pairs(s, {{0, 1}});
    const ChoiceSequence c{ChoiceMode::strong, {pick_x()}};
    RationalizationPolicy far;
    far.kind = K::adversarial_far;
    EXPECT_THROW(rationalize(e, c, far), ConfigError);
    RationalizationPolicy eu;
    eu.kind = K::eu_class;
    EXPECT_THROW(rationalize(e, c, eu), ConfigError);
    RationalizationPolicy lip;
    lip.kind = K::lipschitz;
    lip.lipschitz_a = 3.0;
    EXPECT_THROW(rationalize(e, c, lip), ConfigError);
    for (K k : {K::canonical, K::randomized, K::adversarial_indifference, K::adversarial_far, K::eu_class, K::lipschitz}) {
        EXPECT_EQ(policy_kind_from_string(to_string(k)), k);
    }
    EXPECT_THROW(policy_kind_from_string("oracle"), ConfigError);
}
