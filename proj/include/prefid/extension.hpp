#pragma once

// Completing a consistent revealed relation into a total preorder.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "prefid/error.hpp"
#include "prefid/preferences.hpp"
#include "prefid/random.hpp"
#include "prefid/revealed.hpp"

namespace prefid {

namespace detail {

inline Preference ranks_from_components(const RevealedRelation& r, const Condensation& cond,
                                        const std::vector<int>& level) {
    std::vector<int> ranks(r.size());
    for (std::size_t x = 0; x < r.size(); ++x) ranks[x] = level[cond.comp[x]];
    return Preference(r.space(), std::move(ranks));
}

inline Condensation consistent_condensation(const RevealedRelation& r) {
    Condensation cond = condense(r);
    if (!cond.consistent) throw PreconditionError("revealed relation is inconsistent");
    return cond;
}

}  // namespace detail

/// Coarsest completion: each component sits at the longest path below it,
/// counting strict edges as 1 and weak edges as 0. No constraints gives
/// total indifference.
inline Preference canonical_extension(const RevealedRelation& r) {
    const Condensation cond = detail::consistent_condensation(r);
    std::vector<int> level(cond.count, 0);
    for (std::size_t c = 0; c < cond.count; ++c) {
        for (const auto& [d, strict] : cond.succ[c]) level[c] = std::max(level[c], level[d] + (strict ? 1 : 0));
    }
    return detail::ranks_from_components(r, cond, level);
}

/// Builds indifference classes bottom-up. At each level a nonempty group of
/// unplaced components is drawn: a component may join when every unplaced
/// component below it has already joined through weak edges only, and each
/// such component joins with probability 1/2. Every completion of r has
/// positive probability.
class ExtensionSampler {
public:
    explicit ExtensionSampler(const RevealedRelation& r) : relation_(&r), cond_(detail::consistent_condensation(r)) {}

    std::size_t num_components() const { return cond_.count; }
    const Condensation& condensation() const { return cond_; }

    Preference sample(Rng& rng) const {
        const std::size_t C = cond_.count;
        std::vector<std::size_t> pending(C);
        for (std::size_t c = 0; c < C; ++c) pending[c] = cond_.succ[c].size();
        std::vector<int> level(C, -1);
        std::vector<std::uint32_t> ready;
        for (std::uint32_t c = 0; c < C; ++c) {
            if (pending[c] == 0) ready.push_back(c);
        }
        std::vector<std::size_t> remain(C, 0);
        std::vector<char> blocked(C, 0);
        std::vector<char> touched_flag(C, 0);
        std::vector<std::uint32_t> touched;
        std::vector<std::uint32_t> group;
        std::size_t placed = 0;
        int current = 0;
        using MinHeap = std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>>;
        while (placed < C) {
            do {
                for (auto t : touched) {
                    touched_flag[t] = 0;
                    blocked[t] = 0;
                }
                touched.clear();
                group.clear();
                MinHeap heap(std::greater<>{}, std::vector<std::uint32_t>(ready.begin(), ready.end()));
                while (!heap.empty()) {
                    const std::uint32_t c = heap.top();
                    heap.pop();
                    if (!coin(rng)) continue;
                    group.push_back(c);
                    for (const auto& [p, strict] : cond_.pred[c]) {
                        if (!touched_flag[p]) {
                            touched_flag[p] = 1;
                            touched.push_back(p);
                            remain[p] = pending[p];
                        }
                        if (strict) blocked[p] = 1;
                        if (--remain[p] == 0 && !blocked[p]) heap.push(p);
                    }
                }
            } while (group.empty());
            for (auto c : group) {
                level[c] = current;
                ++placed;
                for (const auto& [p, strict] : cond_.pred[c]) {
                    if (--pending[p] == 0) ready.push_back(p);
                }
            }
            std::sort(group.begin(), group.end());
            ready.erase(std::remove_if(ready.begin(), ready.end(),
                                       [&](std::uint32_t c) { return level[c] >= 0; }),
                        ready.end());
            ++current;
        }
        return detail::ranks_from_components(*relation_, cond_, level);
    }

    /// Linear extension that places the ready component with the smallest key
    /// next, one class per component. A component's key is the mean of its
    /// members' point keys.
    Preference sample_ordered(std::span<const double> point_key) const {
        if (point_key.size() != relation_->size()) throw DomainError("one key per point is required");
        const std::size_t C = cond_.count;
        std::vector<double> key(C, 0.0);
        std::vector<std::size_t> members(C, 0);
        for (std::size_t x = 0; x < point_key.size(); ++x) {
            key[cond_.comp[x]] += point_key[x];
            ++members[cond_.comp[x]];
        }
        for (std::size_t c = 0; c < C; ++c) key[c] /= static_cast<double>(members[c]);
        std::vector<std::size_t> pending(C);
        using Entry = std::pair<double, std::uint32_t>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        for (std::uint32_t c = 0; c < C; ++c) {
            pending[c] = cond_.succ[c].size();
            if (pending[c] == 0) heap.emplace(key[c], c);
        }
        std::vector<int> level(C, -1);
        int current = 0;
        while (!heap.empty()) {
            const auto c = heap.top().second;
            heap.pop();
            level[c] = current++;
            for (const auto& [p, strict] : cond_.pred[c]) {
                if (--pending[p] == 0) heap.emplace(key[p], p);
            }
        }
        return detail::ranks_from_components(*relation_, cond_, level);
    }

    /// Every completion of r, by exhaustive search over valid groups.
    std::vector<Preference> enumerate(std::size_t max_components = 16) const {
        const std::size_t C = cond_.count;
        if (C > max_components) throw CapacityError("too many components for exhaustive enumeration");
        std::vector<Preference> out;
        std::vector<int> level(C, -1);
        auto rec = [&](auto& self, std::uint32_t placed_mask, int current) -> void {
            const std::uint32_t all = C == 32 ? ~0U : ((1U << C) - 1U);
            if (placed_mask == all) {
                out.push_back(detail::ranks_from_components(*relation_, cond_, level));
                return;
            }
            const std::uint32_t free = all & ~placed_mask;
            for (std::uint32_t g = free; g != 0; g = (g - 1) & free) {
                if (!valid_group(g, placed_mask)) continue;
                for (std::uint32_t c = 0; c < C; ++c) {
                    if (g >> c & 1U) level[c] = current;
                }
                self(self, placed_mask | g, current + 1);
                for (std::uint32_t c = 0; c < C; ++c) {
                    if (g >> c & 1U) level[c] = -1;
                }
            }
        };
        rec(rec, 0U, 0);
        return out;
    }

private:
    bool valid_group(std::uint32_t g, std::uint32_t placed) const {
        for (std::uint32_t c = 0; c < cond_.count; ++c) {
            if (!(g >> c & 1U)) continue;
            for (const auto& [d, strict] : cond_.succ[c]) {
                if (placed >> d & 1U) continue;
                if (!(g >> d & 1U) || strict) return false;
            }
        }
        return true;
    }

    const RevealedRelation* relation_;
    Condensation cond_;
};

inline Preference random_extension(const RevealedRelation& r, Rng& rng) { return ExtensionSampler(r).sample(rng); }

struct AdversarialResult {
    Preference preference;
    double distance = 0.0;
    std::size_t evaluations = 0;
    bool budget_exhausted = false;
};

/// Seeded restarts from random completions, then hill climbing over single
/// component moves, maximizing the closed convergence distance to `target`.
inline AdversarialResult adversarial_far(const RevealedRelation& r, const Preference& target, std::uint64_t seed,
                                         std::size_t budget = 2000, std::size_t restarts = 4) {
    const ExtensionSampler sampler(r);
    const Condensation& cond = sampler.condensation();
    const std::size_t C = cond.count;
    auto rng = make_rng(seed);
    AdversarialResult best;
    bool have_best = false;

    auto valid = [&](const std::vector<double>& lv) {
        for (std::size_t c = 0; c < C; ++c) {
            for (const auto& [d, strict] : cond.succ[c]) {
                if (strict ? !(lv[c] > lv[d]) : !(lv[c] >= lv[d])) return false;
            }
        }
        return true;
    };
    auto to_pref = [&](const std::vector<double>& lv) {
        std::vector<double> values(r.size());
        for (std::size_t x = 0; x < r.size(); ++x) values[x] = lv[cond.comp[x]];
        return from_utility(r.space(), values, 0.0);
    };

    std::size_t evals = 0;
    for (std::size_t round = 0; round < std::max<std::size_t>(1, restarts) && evals < budget; ++round) {
        const Preference start = sampler.sample(rng);
        std::vector<double> lv(C);
        for (std::size_t x = 0; x < r.size(); ++x) lv[cond.comp[x]] = start.rank(x);
        Preference cur = start;
        double cur_d = closed_convergence_distance(cur, target);
        ++evals;
        bool improved = true;
        while (improved && evals < budget) {
            improved = false;
            std::vector<double> targets;
            std::vector<double> distinct(lv);
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (std::size_t t = 0; t < distinct.size(); ++t) {
                targets.push_back(distinct[t]);
                targets.push_back(t + 1 < distinct.size() ? (distinct[t] + distinct[t + 1]) / 2 : distinct[t] + 1);
            }
            targets.push_back(distinct.front() - 1);
            std::vector<std::size_t> order(C);
            for (std::size_t c = 0; c < C; ++c) order[c] = c;
            shuffle(std::span<std::size_t>(order), rng);
            for (std::size_t c : order) {
                const double old = lv[c];
                for (double t : targets) {
                    if (t == old) continue;
                    lv[c] = t;
                    if (!valid(lv)) continue;
                    Preference cand = to_pref(lv);
                    const double d = closed_convergence_distance(cand, target);
                    ++evals;
                    if (d > cur_d) {
                        cur = std::move(cand);
                        cur_d = d;
                        improved = true;
                        break;
                    }
                    if (evals >= budget) break;
                }
                if (improved) break;
                lv[c] = old;
                if (evals >= budget) break;
            }
        }
        if (!have_best || cur_d > best.distance) {
            best.preference = cur;
            best.distance = cur_d;
            have_best = true;
        }
    }
    best.evaluations = evals;
    best.budget_exhausted = evals >= budget;
    return best;
}

}  // namespace prefid
