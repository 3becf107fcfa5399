#pragma once

// Utility representations: certainty equivalents along the reference chain,
// ordinal equivalence and uniform distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "prefid/error.hpp"
#include "prefid/preferences.hpp"
#include "prefid/spaces.hpp"

namespace prefid {

struct UtilityFunction {
    SpacePtr space;
    std::vector<double> values;

    double operator()(std::size_t i) const { return values[i]; }
};

inline UtilityFunction make_utility(SpacePtr space, std::vector<double> values) {
    if (values.size() != space->size()) throw DomainError("utility values do not cover the space");
    return UtilityFunction{std::move(space), std::move(values)};
}

/// Cumulative distance along the chain, scaled to [0, 1].
inline std::vector<double> arc_position_base(const OrderedSpace& space) {
    if (!space.chain()) throw ConfigError("space has no reference chain");
    const auto& chain = *space.chain();
    std::vector<double> base(chain.size(), 0.0);
    for (std::size_t j = 1; j < chain.size(); ++j) base[j] = base[j - 1] + space.distance(chain[j - 1], chain[j]);
    const double total = base.back();
    for (double& b : base) b /= total;
    return base;
}

/// Index into the chain of the least element m with m weakly preferred to x.
inline std::vector<std::size_t> certainty_equivalents(const Preference& p) {
    const auto& space = *p.space();
    if (!space.chain()) throw ConfigError("space has no reference chain");
    const auto& chain = *space.chain();
    std::vector<std::size_t> out(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) {
        // Chain ranks increase along the chain for strictly monotone p.
        const auto it = std::find_if(chain.begin(), chain.end(), [&](std::size_t m) { return p.weakly_prefers(m, x); });
        if (it == chain.end()) throw PreconditionError("no chain element is weakly preferred to some point");
        out[x] = static_cast<std::size_t>(it - chain.begin());
    }
    return out;
}

/// value(x) = base(m*(x)), m*(x) the least chain element weakly above x.
inline UtilityFunction certainty_equivalent_utility(const Preference& p, std::span<const double> base) {
    const auto& space = *p.space();
    if (!space.chain()) throw ConfigError("space has no reference chain");
    const auto& chain = *space.chain();
    if (base.size() != chain.size()) throw ConfigError("base utility must give one value per chain element");
    for (std::size_t j = 1; j < base.size(); ++j) {
        if (!(base[j] > base[j - 1])) throw ConfigError("base utility must increase strictly along the chain");
    }
    if (!is_strictly_monotone(p)) throw PreconditionError("certainty equivalents need a strictly monotone preference");
    const auto ce = certainty_equivalents(p);
    std::vector<double> values(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) values[x] = base[ce[x]];
    return UtilityFunction{p.space(), std::move(values)};
}

inline Preference preference_of(const UtilityFunction& u) { return from_utility(u.space, u.values); }

inline bool ordinal_equivalent(const UtilityFunction& u, const UtilityFunction& v) {
    if (u.values.size() != v.values.size()) throw DomainError("utilities live on different spaces");
    return preference_of(u) == preference_of(v);
}

inline double max_norm_distance(const UtilityFunction& u, const UtilityFunction& v,
                                std::optional<std::span<const std::size_t>> region = std::nullopt) {
    if (u.values.size() != v.values.size()) throw DomainError("utilities live on different spaces");
    double d = 0.0;
    if (region) {
        for (std::size_t i : *region) d = std::max(d, std::abs(u.values[i] - v.values[i]));
    } else {
        for (std::size_t i = 0; i < u.values.size(); ++i) d = std::max(d, std::abs(u.values[i] - v.values[i]));
    }
    return d;
}

/// u restricted to the chain, which must increase strictly along it.
inline std::vector<double> chain_restriction(const UtilityFunction& u) {
    const auto& space = *u.space;
    if (!space.chain()) throw ConfigError("space has no reference chain");
    std::vector<double> base;
    for (std::size_t m : *space.chain()) base.push_back(u.values[m]);
    for (std::size_t j = 1; j < base.size(); ++j) {
        if (!(base[j] > base[j - 1])) throw PreconditionError("utility is not strictly increasing along the chain");
    }
    return base;
}

/// Largest increase of u between consecutive chain elements; the resolution
/// within which certainty-equivalent utilities can match u.
inline double chain_step_oscillation(const UtilityFunction& u) {
    const auto base = chain_restriction(u);
    double step = 0.0;
    for (std::size_t j = 1; j < base.size(); ++j) step = std::max(step, base[j] - base[j - 1]);
    return step;
}

/// Certainty-equivalent utilities of each preference, anchored on u_star's
/// values along the chain.
inline std::vector<UtilityFunction> select_convergent_utilities(std::span<const Preference> prefs,
                                                                const UtilityFunction& u_star) {
    const auto base = chain_restriction(u_star);
    std::vector<UtilityFunction> out;
    out.reserve(prefs.size());
    for (const auto& p : prefs) out.push_back(certainty_equivalent_utility(p, base));
    return out;
}

}  // namespace prefid
