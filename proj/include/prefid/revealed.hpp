#pragma once

// Revealed relations built from choice data and monotonicity, their
// consistency check, and the condensation used by every extension policy.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "prefid/bit_matrix.hpp"
#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/spaces.hpp"

namespace prefid {

enum class Monotonicity { none, weak, strict };

inline const char* to_string(Monotonicity m) {
    switch (m) {
    case Monotonicity::none: return "none";
    case Monotonicity::weak: return "weak";
    case Monotonicity::strict: return "strict";
    }
    return "unknown";
}

inline Monotonicity monotonicity_from_string(const std::string& s) {
    if (s == "none") return Monotonicity::none;
    if (s == "weak") return Monotonicity::weak;
    if (s == "strict") return Monotonicity::strict;
    throw ConfigError("unknown monotonicity '" + s + "'");
}

enum class EdgeStrength { weak, strict };
enum class EdgeSource { data, monotonicity };

struct DataEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    EdgeStrength strength = EdgeStrength::weak;
    std::size_t k = 0;  // 1-based index of the experiment that revealed it
};

/// Edge used by the graph algorithms: data edges plus a transitive
/// reduction of the injected monotonicity pairs.
struct Constraint {
    std::uint32_t from = 0;
    std::uint32_t to = 0;
    bool strict = false;

    friend bool operator==(const Constraint&, const Constraint&) = default;
    friend auto operator<=>(const Constraint&, const Constraint&) = default;
};

namespace detail {

// Pairs (i, j) of `rel` not implied through an intermediate point by
// rel composed with `weak` on either side; `weak` excludes the diagonal.
inline std::vector<Constraint> reduce_pairs(const BitMatrix& rel, const BitMatrix& weak, bool strict) {
    const BitMatrix rel_t = rel.transposed();
    const BitMatrix weak_t = weak.transposed();
    std::vector<Constraint> out;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        rel.for_each_in_row(i, [&](std::size_t j) {
            const bool implied = rows_intersect(rel.row(i), weak_t.row(j)) || rows_intersect(weak.row(i), rel_t.row(j));
            if (!implied) out.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), strict});
        });
    }
    return out;
}

inline BitMatrix off_diagonal(const BitMatrix& m) {
    BitMatrix out(m);
    for (std::size_t i = 0; i < m.size(); ++i) out.set(i, i, false);
    return out;
}

}  // namespace detail

class RevealedRelation {
public:
    RevealedRelation() = default;
    explicit RevealedRelation(SpacePtr space) : space_(std::move(space)), weak_(space_->size()), strict_(space_->size()) {}

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return weak_.size(); }
    Monotonicity monotonicity() const { return monotone_; }

    const BitMatrix& weak_edges() const { return weak_; }
    const BitMatrix& strict_edges() const { return strict_; }
    const std::vector<DataEdge>& data_edges() const { return data_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    bool has_weak(std::size_t i, std::size_t j) const { return weak_.test(i, j); }
    bool has_strict(std::size_t i, std::size_t j) const { return strict_.test(i, j); }

    std::optional<EdgeSource> source(std::size_t i, std::size_t j) const {
        for (const auto& e : data_) {
            if (e.from == i && e.to == j) return EdgeSource::data;
        }
        if (weak_.test(i, j) || strict_.test(i, j)) return EdgeSource::monotonicity;
        return std::nullopt;
    }

    void add_data_edge(std::size_t from, std::size_t to, EdgeStrength strength, std::size_t k) {
        if (from >= size() || to >= size()) throw DomainError("edge endpoint outside the space");
        data_.push_back({from, to, strength, k});
        (strength == EdgeStrength::strict ? strict_ : weak_).set(from, to);
        constraints_.push_back({static_cast<std::uint32_t>(from), static_cast<std::uint32_t>(to),
                                strength == EdgeStrength::strict});
    }

    void inject_monotonicity(Monotonicity m) {
        if (m == Monotonicity::none) return;
        monotone_ = std::max(monotone_, m);
        const auto& space = *space_;
        weak_ |= space.weak_order();
        const BitMatrix w = detail::off_diagonal(space.weak_order());
        auto weak_red = detail::reduce_pairs(w, w, false);
        constraints_.insert(constraints_.end(), weak_red.begin(), weak_red.end());
        if (m == Monotonicity::strict) {
            strict_ |= space.strict_order();
            auto strict_red = detail::reduce_pairs(space.strict_order(), w, true);
            constraints_.insert(constraints_.end(), strict_red.begin(), strict_red.end());
        }
    }

private:
    SpacePtr space_;
    Monotonicity monotone_ = Monotonicity::none;
    BitMatrix weak_;
    BitMatrix strict_;
    std::vector<DataEdge> data_;
    std::vector<Constraint> constraints_;
};

inline RevealedRelation revealed_relation(const ExperimentSequence& e, const ChoiceSequence& c,
                                          Monotonicity monotone = Monotonicity::none) {
    if (c.size() > e.size()) throw DomainError("more choices than experiments");
    RevealedRelation r(e.space);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto [x, y] = e.pairs[k];
        const Choice ch = c.choices[k];
        if (!ch.x && !ch.y) throw DomainError("empty choice at experiment " + std::to_string(k + 1));
        if (c.mode == ChoiceMode::weak) {
            if (ch.x) r.add_data_edge(x, y, EdgeStrength::weak, k + 1);
            if (ch.y) r.add_data_edge(y, x, EdgeStrength::weak, k + 1);
        } else if (ch.x && ch.y) {
            r.add_data_edge(x, y, EdgeStrength::weak, k + 1);
            r.add_data_edge(y, x, EdgeStrength::weak, k + 1);
        } else if (ch.x) {
            r.add_data_edge(x, y, EdgeStrength::strict, k + 1);
        } else {
            r.add_data_edge(y, x, EdgeStrength::strict, k + 1);
        }
    }
    r.inject_monotonicity(monotone);
    return r;
}

/// Strongly connected components of the constraint graph. Component ids
/// come out bottom-up: every edge between components points to a smaller id.
struct Condensation {
    std::vector<std::uint32_t> comp;
    std::size_t count = 0;
    std::vector<std::vector<std::pair<std::uint32_t, bool>>> succ;  // (lower component, strict)
    std::vector<std::vector<std::pair<std::uint32_t, bool>>> pred;  // (upper component, strict)
    bool consistent = true;
};

inline Condensation condense(const RevealedRelation& r) {
    const std::size_t n = r.size();
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& c : r.constraints()) adj[c.from].push_back(c.to);
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }

    // Iterative Tarjan.
    constexpr std::uint32_t unvisited = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> index(n, unvisited);
    std::vector<std::uint32_t> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    Condensation out;
    out.comp.assign(n, 0);
    std::uint32_t counter = 0;
    std::vector<std::pair<std::uint32_t, std::size_t>> call;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < adj[v].size()) {
                const std::uint32_t w = adj[v][pos++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const std::uint32_t done = v;
            call.pop_back();
            if (!call.empty()) {
                const std::uint32_t parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                const auto id = static_cast<std::uint32_t>(out.count++);
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    out.comp[w] = id;
                } while (w != done);
            }
        }
    }

    std::vector<Constraint> cedges;
    for (const auto& c : r.constraints()) {
        const auto a = out.comp[c.from];
        const auto b = out.comp[c.to];
        if (a == b) {
            if (c.strict) out.consistent = false;
            continue;
        }
        cedges.push_back({a, b, c.strict});
    }
    std::sort(cedges.begin(), cedges.end());
    out.succ.assign(out.count, {});
    out.pred.assign(out.count, {});
    for (std::size_t k = 0; k < cedges.size();) {
        std::size_t l = k;
        bool strict = false;
        while (l < cedges.size() && cedges[l].from == cedges[k].from && cedges[l].to == cedges[k].to) {
            strict = strict || cedges[l].strict;
            ++l;
        }
        out.succ[cedges[k].from].emplace_back(cedges[k].to, strict);
        out.pred[cedges[k].to].emplace_back(cedges[k].from, strict);
        k = l;
    }
    return out;
}

struct ConsistencyResult {
    bool consistent = true;
    /// Closed cycle (first vertex repeated at the end) through a strict edge.
    std::vector<std::size_t> witness;
};

namespace detail {

inline std::vector<std::size_t> canonical_rotation(std::vector<std::size_t> cycle) {
    const auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
    cycle.push_back(cycle.front());
    return cycle;
}

}  // namespace detail

/// Consistent iff no cycle of revealed edges passes through a strict edge.
/// The witness is a shortest such cycle, rotated to start at its least
/// point; ties go to the lexicographically smallest.
inline ConsistencyResult check_consistency(const RevealedRelation& r) {
    const Condensation cond = condense(r);
    ConsistencyResult out;
    if (cond.consistent) return out;
    out.consistent = false;

    const std::size_t n = r.size();
    BitMatrix g(r.weak_edges());
    g |= r.strict_edges();
    std::vector<std::pair<std::size_t, std::size_t>> strict_inside;
    for (const auto& [u, v] : r.strict_edges().pairs()) {
        if (cond.comp[u] == cond.comp[v]) strict_inside.emplace_back(u, v);
    }
    // group by target so each breadth-first search is reused
    std::sort(strict_inside.begin(), strict_inside.end(),
              [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
    std::vector<std::size_t> best;
    std::vector<std::size_t> dist(n);
    std::vector<std::size_t> parent(n);
    std::size_t last_source = n;
    for (const auto& [u, v] : strict_inside) {
        if (u == v) {
            auto cyc = detail::canonical_rotation({u});
            if (best.empty() || cyc.size() < best.size() || (cyc.size() == best.size() && cyc < best)) best = cyc;
            continue;
        }
        if (v != last_source) {
            last_source = v;
            std::fill(dist.begin(), dist.end(), std::numeric_limits<std::size_t>::max());
            dist[v] = 0;
            std::deque<std::size_t> queue{v};
            while (!queue.empty()) {
                const std::size_t a = queue.front();
                queue.pop_front();
                g.for_each_in_row(a, [&](std::size_t b) {
                    if (dist[b] == std::numeric_limits<std::size_t>::max()) {
                        dist[b] = dist[a] + 1;
                        parent[b] = a;
                        queue.push_back(b);
                    }
                });
            }
        }
        if (dist[u] == std::numeric_limits<std::size_t>::max()) continue;
        if (!best.empty() && dist[u] + 2 > best.size()) continue;
        std::vector<std::size_t> path;
        for (std::size_t w = u; w != v; w = parent[w]) path.push_back(w);
        path.push_back(v);
        std::reverse(path.begin(), path.end());  // v ... u
        std::vector<std::size_t> cyc{u};
        cyc.insert(cyc.end(), path.begin(), path.end() - 1);
        auto rotated = detail::canonical_rotation(std::move(cyc));
        if (best.empty() || rotated.size() < best.size() || (rotated.size() == best.size() && rotated < best)) {
            best = std::move(rotated);
        }
    }
    out.witness = std::move(best);
    return out;
}

}  // namespace prefid
