#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prefid/adversarial.hpp"
#include "prefid/diameter.hpp"
#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/extension.hpp"
#include "prefid/parametric.hpp"
#include "prefid/preferences.hpp"
#include "prefid/revealed.hpp"

namespace prefid {

struct RationalizationPolicy {
    enum class Kind {
        canonical,
        randomized,
        adversarial_indifference,
        adversarial_far,
        eu_class,
        lipschitz,
    };

    Kind kind = Kind::canonical;
    Monotonicity monotone = Monotonicity::none;
    std::uint64_t seed = 0;
    /// Reference preference for adversarial_far.
    std::optional<Preference> target;
    std::size_t search_budget = 2000;
    std::size_t restarts = 4;
    double lipschitz_a = 0.5;
    double lipschitz_b = 2.0;
};

inline const char* to_string(RationalizationPolicy::Kind k) {
    using K = RationalizationPolicy::Kind;
    switch (k) {
    case K::canonical: return "canonical";
    case K::randomized: return "randomized";
    case K::adversarial_indifference: return "adversarial_indifference";
    case K::adversarial_far: return "adversarial_far";
    case K::eu_class: return "eu_class";
    case K::lipschitz: return "lipschitz";
    }
    return "unknown";
}

/// Also accepts "monotone_required", which is canonical with a monotone class.
inline RationalizationPolicy::Kind policy_kind_from_string(const std::string& s) {
    using K = RationalizationPolicy::Kind;
    if (s == "canonical" || s == "monotone_required") return K::canonical;
    if (s == "randomized") return K::randomized;
    if (s == "adversarial_indifference") return K::adversarial_indifference;
    if (s == "adversarial_far") return K::adversarial_far;
    if (s == "eu_class") return K::eu_class;
    if (s == "lipschitz") return K::lipschitz;
    throw ConfigError("unknown policy '" + s + "'");
}

struct RationalizationResult {
    RationalizationPolicy::Kind policy = RationalizationPolicy::Kind::canonical;
    bool consistent = false;
    std::optional<Preference> preference;
    std::vector<std::size_t> witness_cycle;
    bool budget_exhausted = false;
    bool degenerate = false;
    std::optional<double> delta_c_to_target;
    /// EU index or Lipschitz utility values, when the policy produces them.
    std::vector<double> utility;
};

/// Checks that the policy's parameters fit the space before any work.
inline void validate_policy(const RationalizationPolicy& policy, const OrderedSpace& space) {
    using K = RationalizationPolicy::Kind;
    if (policy.kind == K::adversarial_far) {
        if (!policy.target) throw ConfigError("adversarial_far needs a target preference");
        if (policy.target->size() != space.size()) throw ConfigError("target preference lives on another space");
    }
    if (policy.kind == K::lipschitz && !(0.0 < policy.lipschitz_a && policy.lipschitz_a < policy.lipschitz_b)) {
        throw ConfigError("Lipschitz band needs 0 < a < b");
    }
    if (policy.kind == K::eu_class && space.kind() != SpaceKind::lottery_simplex) {
        throw ConfigError("eu_class needs a lottery space");
    }
}

/// Rationalizes (e, c) under the policy. Inconsistent data produce a result
/// with consistent = false (and a witness cycle for graph-based policies).
inline RationalizationResult rationalize(const ExperimentSequence& e, const ChoiceSequence& c,
                                         const RationalizationPolicy& policy) {
    using K = RationalizationPolicy::Kind;
    validate_policy(policy, *e.space);
    RationalizationResult out;
    out.policy = policy.kind;

    if (policy.kind == K::eu_class || policy.kind == K::lipschitz) {
        const LinearFit fit = policy.kind == K::eu_class
                                  ? eu_rationalize(e, c)
                                  : lipschitz_rationalize(e, c, policy.lipschitz_a, policy.lipschitz_b);
        out.consistent = fit.feasible;
        out.degenerate = fit.degenerate;
        out.utility = fit.values;
        out.preference = fit.preference;
        return out;
    }

    const Monotonicity mono = policy.kind == K::adversarial_indifference ? Monotonicity::none : policy.monotone;
    const RevealedRelation r = revealed_relation(e, c, mono);
    const ConsistencyResult check = check_consistency(r);
    out.consistent = check.consistent;
    if (!check.consistent) {
        out.witness_cycle = check.witness;
        return out;
    }
    switch (policy.kind) {
    case K::canonical: out.preference = canonical_extension(r); break;
    case K::randomized: {
        auto rng = make_rng(policy.seed);
        out.preference = random_extension(r, rng);
        break;
    }
    case K::adversarial_indifference:
        out.preference = c.size() == 0 ? total_indifference(e.space) : prop1_construction(e, c).preference;
        break;
    case K::adversarial_far: {
        const AdversarialResult adv = adversarial_far(r, *policy.target, policy.seed, policy.search_budget,
                                                      policy.restarts);
        out.preference = adv.preference;
        out.budget_exhausted = adv.budget_exhausted;
        out.delta_c_to_target = adv.distance;
        break;
    }
    default: break;
    }
    if (policy.target && out.preference && !out.delta_c_to_target) {
        out.delta_c_to_target = closed_convergence_distance(*out.preference, *policy.target);
    }
    return out;
}

}  // namespace prefid
