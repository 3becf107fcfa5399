#pragma once

// Worked examples: each returns named pass/fail checks plus a numeric series.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "prefid/adversarial.hpp"
#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/extension.hpp"
#include "prefid/preferences.hpp"
#include "prefid/revealed.hpp"
#include "prefid/spaces.hpp"

namespace prefid {

struct GalleryCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct GalleryRow {
    double parameter = 0.0;
    double value = 0.0;
};

struct GalleryReport {
    std::string item;
    std::string series_label;
    std::vector<GalleryRow> series;
    std::vector<GalleryCheck> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const GalleryCheck& c) { return c.passed; });
    }
    void check(std::string name, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
};

inline const std::vector<std::string>& gallery_items() {
    static const std::vector<std::string> items{"motivating_01", "prop1", "grodal_nontransitive",
                                                "locally_strict_not_closed"};
    return items;
}

// ---------------------------------------------------------------------------
// Locally strict relations are not closed: X = [-3,-1] u [1,3].

namespace locally_strict {

inline constexpr double step = 0.1;

/// Points i/10 for |i| in [10, 30], so -2 and 2 are exact.
inline SpacePtr space() {
    std::vector<Point> pts;
    for (int i = -30; i <= 30; ++i) {
        if (std::abs(i) >= 10) pts.push_back({static_cast<double>(i) / 10.0});
    }
    return make_euclidean_points(std::move(pts), step);
}

/// u_n(x) = -(x+2)^2 + 1/n on the left piece, (x-2)^2 - 1/n on the right;
/// n = 0 gives the pointwise limit.
inline double u(double x, int n) {
    const double shift = n == 0 ? 0.0 : 1.0 / n;
    return x < 0 ? -(x + 2) * (x + 2) + shift : (x - 2) * (x - 2) - shift;
}

inline Preference preference(const SpacePtr& s, int n) {
    std::vector<double> v(s->size());
    for (std::size_t i = 0; i < s->size(); ++i) v[i] = u(s->point(i)[0], n);
    return from_utility(s, v);
}

inline const std::vector<int>& default_terms() {
    static const std::vector<int> terms{2, 5, 10, 20, 50, 100, 200, 500, 1000};
    return terms;
}

}  // namespace locally_strict

inline GalleryReport gallery_locally_strict_not_closed() {
    GalleryReport rep;
    rep.item = "locally_strict_not_closed";
    rep.series_label = "delta_c_to_limit";
    const auto s = locally_strict::space();
    const std::size_t minus2 = *s->find_point({-2.0});
    const std::size_t plus2 = *s->find_point({2.0});
    const Preference limit = locally_strict::preference(s, 0);

    bool all_strict = true;
    std::string failures;
    double prev = INFINITY;
    bool nonincreasing = true;
    for (int n : locally_strict::default_terms()) {
        const Preference pn = locally_strict::preference(s, n);
        if (!is_locally_strict(pn, locally_strict::step).holds) {
            all_strict = false;
            failures += " n=" + std::to_string(n);
        }
        const double d = closed_convergence_distance(pn, limit);
        nonincreasing = nonincreasing && d <= prev + 1e-12;
        prev = d;
        rep.series.push_back({static_cast<double>(n), d});
    }
    rep.check("each u_n locally strict at one grid step", all_strict, failures);

    const double un = locally_strict::u(-2.0, 10);
    rep.check("u_10(-2) = 1/10 and u_10(2) = -1/10",
              un == 1.0 / 10 && locally_strict::u(2.0, 10) == -1.0 / 10);
    rep.check("u*(-2) = u*(2) = 0", locally_strict::u(-2.0, 0) == 0.0 && locally_strict::u(2.0, 0) == 0.0);
    const Preference p10 = locally_strict::preference(s, 10);
    rep.check("-2 strictly above 2 under u_10", p10.strictly_prefers(minus2, plus2));
    rep.check("-2 indifferent to 2 in the limit", limit.indifferent(minus2, plus2));

    const auto ls = is_locally_strict(limit, locally_strict::step);
    const bool witness = std::find(ls.violations.begin(), ls.violations.end(), std::make_pair(minus2, plus2)) !=
                         ls.violations.end();
    rep.check("limit not locally strict, witness (-2, 2)", !ls.holds && witness);
    rep.check("distance to the limit nonincreasing in n", nonincreasing);
    rep.check("distance reaches one grid step", rep.series.back().value <= locally_strict::step + 1e-12,
              "final " + std::to_string(rep.series.back().value));
    return rep;
}

// ---------------------------------------------------------------------------
// Transitive preferences whose limit has intransitive indifference. Levels on
// [0,1]^2 (stated for x >= y, mirrored otherwise):
//   x + y <= 1                     level x + y
//   rays through the centre        level 1/2 + (x - 1/2)/(1 - 2y), in [1, 5/3]
//   above the 5/3 ray              larger root of
//                                  7.5 L^2 - (7.5x + 1.5y + 8) L + 8(x - y) = 0
// All level lines from 1 to 5/3 meet at the centre (1/2, 1/2). Term n
// replaces the level inside the max-ball of radius r around the centre with
// straight chords x + y = s carrying the level of the ball boundary point
// with that sum, so every term is a utility preference.

namespace grodal {

inline constexpr double low_band = 1.0;
inline constexpr double high_band = 5.0 / 3.0;

inline double level(double x, double y) {
    if (x < y) std::swap(x, y);
    if (x + y <= 1.0 + 1e-12) return x + y;
    if (y < 0.5) {
        const double ray = 0.5 + (x - 0.5) / (1.0 - 2.0 * y);
        if (ray <= high_band + 1e-12) return ray;
    }
    const double b = 7.5 * x + 1.5 * y + 8.0;
    const double disc = b * b - 4.0 * 7.5 * 8.0 * (x - y);
    return (b + std::sqrt(std::max(0.0, disc))) / 15.0;
}

/// Level carried by the chord x + y = s inside the ball of radius r.
inline double chord_level(double s, double r) {
    if (s <= 1.0) return level(s - (0.5 - r), 0.5 - r);
    return level(0.5 + r, s - 0.5 - r);
}

inline double term_level(double x, double y, double r) {
    const double tol = 1e-9;
    if (std::abs(x - 0.5) <= r + tol && std::abs(y - 0.5) <= r + tol) return chord_level(x + y, r);
    return level(x, y);
}

inline SpacePtr space(std::size_t resolution) {
    if (resolution % 2 == 0) throw ConfigError("the grid must contain the centre (odd resolution)");
    return make_grid_euclidean(2, resolution, {{0.0, 1.0}});
}

inline Preference term(const SpacePtr& s, double r) {
    std::vector<double> v(s->size());
    for (std::size_t i = 0; i < s->size(); ++i) v[i] = term_level(s->point(i)[0], s->point(i)[1], r);
    return from_utility(s, v);
}

/// The limit: ordered by level, except that the centre is indifferent to
/// every point with level in [1, 5/3].
inline BinaryRelation limit(const SpacePtr& s) {
    const std::size_t n = s->size();
    const std::size_t centre = *s->find_point({0.5, 0.5});
    std::vector<double> lv(n);
    for (std::size_t i = 0; i < n; ++i) lv[i] = level(s->point(i)[0], s->point(i)[1]);
    auto geq = [](double a, double b) { return a >= b - 1e-10; };
    BinaryRelation r(s);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool in;
            if (i == centre && j == centre) {
                in = true;
            } else if (i == centre) {
                in = geq(high_band, lv[j]);
            } else if (j == centre) {
                in = geq(lv[i], low_band);
            } else {
                in = geq(lv[i], lv[j]);
            }
            if (in) r.insert(i, j);
        }
    }
    return r;
}

/// Points a, c at distance > `radius` from the centre, both indifferent to
/// it in r, with c strictly above a; picks the widest level gap. Returns
/// (a, centre, c).
inline std::optional<std::vector<std::size_t>> centre_witness(const BinaryRelation& r, double radius) {
    const auto& s = *r.space();
    const std::size_t centre = *s.find_point({0.5, 0.5});
    std::optional<std::size_t> lo;
    std::optional<std::size_t> hi;
    auto lv = [&](std::size_t i) { return level(s.point(i)[0], s.point(i)[1]); };
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.distance(i, centre) <= radius + 1e-9) continue;
        if (!(r.contains(i, centre) && r.contains(centre, i))) continue;
        if (!lo || lv(i) < lv(*lo)) lo = i;
        if (!hi || lv(i) > lv(*hi)) hi = i;
    }
    if (!lo || !hi) return std::nullopt;
    if (!(r.contains(*hi, *lo) && !r.contains(*lo, *hi))) return std::nullopt;
    return std::vector<std::size_t>{*lo, centre, *hi};
}

}  // namespace grodal

inline GalleryReport gallery_grodal_nontransitive(std::size_t resolution = 21) {
    GalleryReport rep;
    rep.item = "grodal_nontransitive";
    rep.series_label = "delta_c_to_limit";
    const auto s = grodal::space(resolution);
    const double step = s->grid_step();
    const std::size_t centre = *s->find_point({0.5, 0.5});
    const BinaryRelation target = grodal::limit(s);

    // r = 1/n for the n whose radius lands on the grid, down to one step.
    std::vector<double> radii;
    for (int n = 2; 1.0 / n >= step - 1e-12; ++n) {
        const double r = 1.0 / n;
        const double cells = r / step;
        if (std::abs(cells - std::round(cells)) < 1e-9 && r <= 0.25 + 1e-12) radii.push_back(r);
    }
    std::vector<BinaryRelation> seq;
    bool all_transitive = true;
    for (double r : radii) {
        const Preference p = grodal::term(s, r);
        BinaryRelation rel = p.relation();
        all_transitive = all_transitive && is_transitive(rel) && rel.is_complete();
        rep.series.push_back({1.0 / r, closed_convergence_distance(rel, target)});
        seq.push_back(std::move(rel));
    }
    rep.check("every term is a complete transitive preference", all_transitive,
              std::to_string(seq.size()) + " terms");

    const auto [li, ls] = li_ls_limit(seq, radii);
    rep.check("lower and upper limits agree", li == ls);
    rep.check("limit is complete", li.is_complete());
    rep.check("limit within one grid step of the reference limit",
              closed_convergence_distance(li, target) <= step + 1e-12);
    const auto witness = grodal::centre_witness(li, radii.front());
    std::string detail;
    double gap = 0.0;
    if (witness) {
        for (std::size_t k : *witness) {
            std::ostringstream os;
            os << "(" << s->point(k)[0] << "," << s->point(k)[1] << ") ";
            detail += os.str();
        }
        const auto& a = s->point(witness->front());
        const auto& c = s->point(witness->back());
        gap = grodal::level(c[0], c[1]) - grodal::level(a[0], a[1]);
        detail += "level gap " + std::to_string(gap);
    }
    rep.check("limit is not transitive", !is_transitive(li));
    rep.check("far points across the band are both indifferent to the centre yet strictly ranked",
              witness.has_value() && gap >= (grodal::high_band - grodal::low_band) / 2, detail);
    rep.check("limit is quasitransitive", is_quasitransitive(li));
    rep.check("reference limit is quasitransitive but not transitive",
              is_quasitransitive(target) && !is_transitive(target));
    rep.check("centre indifferent to levels 1 and 5/3 in the computed limit", [&] {
        for (std::size_t i = 0; i < s->size(); ++i) {
            const double lv = grodal::level(s->point(i)[0], s->point(i)[1]);
            if (i == centre || lv < grodal::low_band - 1e-9 || lv > grodal::high_band + 1e-9) continue;
            if (!(li.contains(i, centre) && li.contains(centre, i))) return false;
        }
        return true;
    }());
    double prev = INFINITY;
    bool nonincreasing = true;
    for (const auto& row : rep.series) {
        nonincreasing = nonincreasing && row.value <= prev + 1e-12;
        prev = row.value;
    }
    rep.check("distance to the reference limit nonincreasing", nonincreasing);
    return rep;
}

// ---------------------------------------------------------------------------
// Interior data cannot rule out that the bottom endpoint beats the top one.

inline GalleryReport gallery_motivating_01(std::size_t resolution = 21) {
    GalleryReport rep;
    rep.item = "motivating_01";
    rep.series_label = "rank_gap_bottom_over_top";
    const auto s = make_grid_euclidean(1, resolution, {{0.0, 1.0}});
    const std::size_t bottom = 0;
    const std::size_t top = s->size() - 1;
    std::vector<std::size_t> interior;
    for (std::size_t i = 1; i < top; ++i) interior.push_back(i);
    const DenseSubset b = make_dense_subset(s, interior);
    std::vector<double> v(s->size());
    for (std::size_t i = 0; i < s->size(); ++i) v[i] = s->point(i)[0];
    const Preference generator = from_utility(s, v);
    const auto e = enumerate_pairs(b, Schedule::diagonal());
    const auto c = generate_choices(generator, e, ChoiceMode::strong, TiePolicy::both());

    bool every_stage = true;
    bool at_50 = false;
    for (std::size_t k = 1; k <= e.size(); ++k) {
        const auto [ek, ck] = restrict(e, c, k);
        RevealedRelation r = revealed_relation(ek, ck, Monotonicity::none);
        r.add_data_edge(bottom, top, EdgeStrength::strict, 0);
        if (!check_consistency(r).consistent) {
            every_stage = false;
            continue;
        }
        const Preference p = canonical_extension(r);
        const bool ok = replays(p, ek, ck) && p.strictly_prefers(bottom, top);
        every_stage = every_stage && ok;
        if (k == 50) at_50 = ok;
        rep.series.push_back({static_cast<double>(k), static_cast<double>(p.rank(bottom) - p.rank(top))});
    }
    rep.check("consistent rationalization with 0 above 1 at every stage", every_stage,
              std::to_string(e.size()) + " stages");
    rep.check("k = 50 replays all choices with 0 above 1", at_50);
    return rep;
}

// ---------------------------------------------------------------------------
// Rationalizations that approach total indifference.

struct Prop1Run {
    SpacePtr space;
    std::vector<std::size_t> ks;
    std::vector<Preference> prefs;
    std::vector<double> distances;  // to total indifference
    std::vector<double> bounds;     // 1/(2k) + 2 * step
    std::vector<bool> replay_ok;
    BinaryRelation li;
    BinaryRelation ls;
};

inline Prop1Run run_prop1_sequence(std::size_t points = 64, std::size_t stride = 4,
                                   std::vector<std::size_t> ks = {1, 2, 4, 8, 16}, std::uint64_t seed = 1) {
    Prop1Run run;
    run.space = make_grid_euclidean(1, points, {{0.0, 1.0}});
    run.ks = ks;
    const double step = run.space->grid_step();
    std::vector<double> v(run.space->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = run.space->point(i)[0];
    const Preference generator = from_utility(run.space, v);
    const auto e = enumerate_pairs(strided_subset(run.space, stride), Schedule::shuffled(seed));
    const auto c = generate_choices(generator, e, ChoiceMode::strong, TiePolicy::both());
    const Preference indiff = total_indifference(run.space);
    std::vector<BinaryRelation> rels;
    for (std::size_t k : ks) {
        const auto [ek, ck] = restrict(e, c, k);
        Preference p = prop1_construction(ek, ck).preference;
        run.distances.push_back(closed_convergence_distance(p, indiff));
        run.bounds.push_back(1.0 / (2.0 * static_cast<double>(k)) + 2.0 * step);
        run.replay_ok.push_back(replays(p, ek, ck));
        rels.push_back(p.relation());
        run.prefs.push_back(std::move(p));
    }
    auto limits = li_ls_limit(rels, run.bounds);
    run.li = std::move(limits.li);
    run.ls = std::move(limits.ls);
    return run;
}

inline GalleryReport gallery_prop1() {
    GalleryReport rep;
    rep.item = "prop1";
    rep.series_label = "delta_c_to_total_indifference";
    const Prop1Run run = run_prop1_sequence();
    bool within = true;
    bool replay = true;
    for (std::size_t i = 0; i < run.ks.size(); ++i) {
        rep.series.push_back({static_cast<double>(run.ks[i]), run.distances[i]});
        within = within && run.distances[i] <= run.bounds[i] + 1e-12;
        replay = replay && run.replay_ok[i];
    }
    rep.check("each term strongly rationalizes its data", replay);
    rep.check("distance to total indifference within 1/(2k) + 2 steps", within);
    const BinaryRelation full = full_relation(run.space);
    rep.check("lower limit is X x X", run.li == full);
    rep.check("upper limit is X x X", run.ls == full);
    return rep;
}

inline GalleryReport run_gallery(const std::string& item) {
    if (item == "motivating_01") return gallery_motivating_01();
    if (item == "prop1") return gallery_prop1();
    if (item == "grodal_nontransitive") return gallery_grodal_nontransitive();
    if (item == "locally_strict_not_closed") return gallery_locally_strict_not_closed();
    throw ConfigError("unknown gallery item '" + item + "'");
}

}  // namespace prefid
