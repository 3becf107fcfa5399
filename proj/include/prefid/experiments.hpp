#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prefid/error.hpp"
#include "prefid/preferences.hpp"
#include "prefid/random.hpp"
#include "prefid/spaces.hpp"

namespace prefid {

using IndexPair = std::pair<std::size_t, std::size_t>;

struct Schedule {
    enum class Kind { diagonal, shuffled } kind = Kind::diagonal;
    std::uint64_t seed = 0;

    static Schedule diagonal() { return {Kind::diagonal, 0}; }
    static Schedule shuffled(std::uint64_t seed) { return {Kind::shuffled, seed}; }
};

enum class ChoiceMode { strong, weak };

inline const char* to_string(ChoiceMode m) { return m == ChoiceMode::strong ? "strong" : "weak"; }

inline ChoiceMode choice_mode_from_string(const std::string& s) {
    if (s == "strong") return ChoiceMode::strong;
    if (s == "weak") return ChoiceMode::weak;
    throw ConfigError("unknown choice mode '" + s + "'");
}

struct TiePolicy {
    enum class Kind { both, first, random } kind = Kind::both;
    std::uint64_t seed = 0;

    static TiePolicy both() { return {Kind::both, 0}; }
    static TiePolicy first() { return {Kind::first, 0}; }
    static TiePolicy random(std::uint64_t seed) { return {Kind::random, seed}; }
};

/// Ordered list of unordered pairs {x_k, y_k}; each pair is stored with
/// x_k preceding y_k in the member order of B.
struct ExperimentSequence {
    SpacePtr space;
    DenseSubset subset;
    std::vector<IndexPair> pairs;

    std::size_t size() const { return pairs.size(); }
};

struct Choice {
    bool x = false;
    bool y = false;

    friend bool operator==(const Choice&, const Choice&) = default;
};

struct ChoiceSequence {
    ChoiceMode mode = ChoiceMode::strong;
    std::vector<Choice> choices;

    std::size_t size() const { return choices.size(); }
};

/// Position of the B-index pair (i, j), i < j, in the diagonal schedule:
/// pairs are grouped by i + j and ordered by i within a group.
inline std::vector<IndexPair> diagonal_index_pairs(std::size_t m) {
    std::vector<IndexPair> out;
    out.reserve(m * (m - 1) / 2);
    for (std::size_t s = 1; s + 1 < 2 * m; ++s) {
        const std::size_t i_lo = s >= m ? s - m + 1 : 0;
        for (std::size_t i = i_lo; 2 * i < s; ++i) out.emplace_back(i, s - i);
    }
    return out;
}

inline ExperimentSequence enumerate_pairs(const DenseSubset& subset, Schedule schedule) {
    const auto& members = subset.members;
    if (members.size() < 2) throw DomainError("enumerating pairs needs at least two points in B");
    ExperimentSequence e{subset.space, subset, {}};
    for (const auto& [i, j] : diagonal_index_pairs(members.size())) e.pairs.emplace_back(members[i], members[j]);
    if (schedule.kind == Schedule::Kind::shuffled) {
        auto rng = make_rng(schedule.seed);
        shuffle(std::span<IndexPair>(e.pairs), rng);
    }
    return e;
}

/// Data set from externally supplied pairs; no coverage requirement.
inline ExperimentSequence experiment_from_pairs(SpacePtr space, std::vector<IndexPair> pairs) {
    std::vector<std::size_t> members;
    for (const auto& [x, y] : pairs) {
        if (x >= space->size() || y >= space->size()) throw DomainError("pair index outside the space");
        if (x == y) throw DomainError("pair with identical elements");
        members.push_back(x);
        members.push_back(y);
    }
    DenseSubset subset = members.empty() ? full_subset(space) : make_dense_subset(space, std::move(members));
    return ExperimentSequence{std::move(space), std::move(subset), std::move(pairs)};
}

inline ChoiceSequence generate_choices(const Preference& p, const ExperimentSequence& e, ChoiceMode mode,
                                       TiePolicy ties) {
    if (p.size() != e.space->size()) throw DomainError("preference and experiment live on different spaces");
    if (mode == ChoiceMode::weak && ties.kind == TiePolicy::Kind::both) {
        throw ConfigError("weak mode needs a tie policy that picks one element");
    }
    auto rng = make_rng(ties.seed);
    ChoiceSequence c{mode, {}};
    c.choices.reserve(e.size());
    for (const auto& [x, y] : e.pairs) {
        if (p.strictly_prefers(x, y)) {
            c.choices.push_back({true, false});
        } else if (p.strictly_prefers(y, x)) {
            c.choices.push_back({false, true});
        } else if (mode == ChoiceMode::strong) {
            c.choices.push_back({true, true});
        } else if (ties.kind == TiePolicy::Kind::first) {
            c.choices.push_back({true, false});
        } else {
            const bool pick_x = coin(rng);
            c.choices.push_back({pick_x, !pick_x});
        }
    }
    return c;
}

inline std::pair<ExperimentSequence, ChoiceSequence> restrict(const ExperimentSequence& e, const ChoiceSequence& c,
                                                              std::size_t k) {
    if (k == 0) throw DomainError("restriction to zero experiments");
    if (k > e.size() || k > c.size()) throw DomainError("restriction beyond the available data");
    ExperimentSequence ek{e.space, e.subset, {e.pairs.begin(), e.pairs.begin() + static_cast<std::ptrdiff_t>(k)}};
    ChoiceSequence ck{c.mode, {c.choices.begin(), c.choices.begin() + static_cast<std::ptrdiff_t>(k)}};
    return {std::move(ek), std::move(ck)};
}

/// Index (0-based) of the first pair whose recorded choice p does not
/// reproduce, or size() when p rationalizes the whole data set.
inline std::size_t first_replay_failure(const Preference& p, const ExperimentSequence& e, const ChoiceSequence& c) {
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto [x, y] = e.pairs[k];
        const bool x_opt = p.weakly_prefers(x, y);
        const bool y_opt = p.weakly_prefers(y, x);
        const Choice ch = c.choices[k];
        if (c.mode == ChoiceMode::strong) {
            if (ch.x != x_opt || ch.y != y_opt) return k;
        } else {
            if ((ch.x && !x_opt) || (ch.y && !y_opt) || (!ch.x && !ch.y)) return k;
        }
    }
    return c.size();
}

inline bool replays(const Preference& p, const ExperimentSequence& e, const ChoiceSequence& c) {
    return first_replay_failure(p, e, c) == c.size();
}

}  // namespace prefid
