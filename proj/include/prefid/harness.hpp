#pragma once

// Seeded end-to-end convergence runs: configuration, generators, per-checkpoint
// rationalization and report emission (CSV, JSON, SVG).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prefid/diameter.hpp"
#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/io.hpp"
#include "prefid/preferences.hpp"
#include "prefid/rationalize.hpp"
#include "prefid/spaces.hpp"
#include "prefid/utility.hpp"

#ifndef PREFID_VERSION
#define PREFID_VERSION "0.1.0"
#endif

namespace prefid {

inline constexpr const char* library_version = PREFID_VERSION;

/// Utility formula that generates the choice data. Parameters by id:
///   cobb_douglas_mix  u = prod x + a * sum x           {a = 0.1}
///   linear            u = w . x                        {weights}
///   sum               u = sum x
///   identity          u = x_1
///   eu                u = index . p per state, summed  {index}
///   exp_discount      u = (offset + m) * exp(-rate t)  {rate = 0.5, offset = 1}
///   negated_first     u = -x_1 + sum of the rest
///   constant          u = 0
struct GeneratorSpec {
    std::string id = "sum";
    nlohmann::json params = nlohmann::json::object();
};

struct DiameterSettings {
    std::size_t samples = 200;
    std::uint64_t seed = 0;
    DiameterMethod method = DiameterMethod::automatic;
};

struct OutputPaths {
    std::string csv;
    std::string json;
    std::string svg;
};

/// Which preference delta_c is measured against.
enum class Reference { generator, indifference };

struct ExperimentConfig {
    std::string name = "run";
    nlohmann::json space;
    GeneratorSpec generator;
    Schedule schedule = Schedule::shuffled(1);
    ChoiceMode mode = ChoiceMode::strong;
    TiePolicy ties = TiePolicy::both();
    RationalizationPolicy policy;
    std::size_t stride = 1;
    /// Empty means powers of two plus full coverage.
    std::vector<std::size_t> checkpoints;
    Reference reference = Reference::generator;
    std::optional<DiameterSettings> diameter;
    bool utility = false;
    OutputPaths outputs;
    std::uint64_t seed = 1;
};

struct ReportRow {
    std::size_t k = 0;
    double delta_c = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> diameter;
    std::optional<double> utility_dist;
    bool consistent = false;
    double wall_time_ms = 0.0;

    friend bool operator==(const ReportRow& a, const ReportRow& b) {
        auto same = [](double x, double y) { return (std::isnan(x) && std::isnan(y)) || x == y; };
        return a.k == b.k && same(a.delta_c, b.delta_c) && a.diameter == b.diameter &&
               a.utility_dist == b.utility_dist && a.consistent == b.consistent && a.wall_time_ms == b.wall_time_ms;
    }
};

struct ConvergenceReport {
    std::string name;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string version = library_version;
    double grid_step = 0.0;
    std::vector<ReportRow> rows;

    friend bool operator==(const ConvergenceReport&, const ConvergenceReport&) = default;
};

// ---- configuration ------------------------------------------------------------

inline std::vector<std::size_t> default_checkpoints(std::size_t total) {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k < total; k *= 2) out.push_back(k);
    if (total > 0) out.push_back(total);
    return out;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

inline Schedule schedule_from_json(const nlohmann::json& j, std::uint64_t fallback_seed) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "diagonal") return Schedule::diagonal();
        if (s == "shuffled") return Schedule::shuffled(fallback_seed);
        throw ConfigError("unknown schedule '" + s + "'");
    }
    const auto kind = io::detail::required<std::string>(j, "kind");
    const auto seed = io::detail::optional_field<std::uint64_t>(j, "seed", fallback_seed);
    if (kind == "diagonal") return Schedule::diagonal();
    if (kind == "shuffled") return Schedule::shuffled(seed);
    throw ConfigError("unknown schedule '" + kind + "'");
}

inline TiePolicy ties_from_json(const nlohmann::json& j, std::uint64_t fallback_seed) {
    const auto kind = j.is_string() ? j.get<std::string>() : io::detail::required<std::string>(j, "kind");
    const auto seed = j.is_object() ? io::detail::optional_field<std::uint64_t>(j, "seed", fallback_seed) : fallback_seed;
    if (kind == "both") return TiePolicy::both();
    if (kind == "first") return TiePolicy::first();
    if (kind == "random") return TiePolicy::random(seed);
    throw ConfigError("unknown tie policy '" + kind + "'");
}

inline const char* to_string(Schedule::Kind k) { return k == Schedule::Kind::diagonal ? "diagonal" : "shuffled"; }

inline const char* to_string(TiePolicy::Kind k) {
    switch (k) {
    case TiePolicy::Kind::both: return "both";
    case TiePolicy::Kind::first: return "first";
    case TiePolicy::Kind::random: return "random";
    }
    return "unknown";
}

inline DiameterMethod diameter_method_from_string(const std::string& s) {
    if (s == "automatic") return DiameterMethod::automatic;
    if (s == "sampled") return DiameterMethod::sampled;
    if (s == "exhaustive") return DiameterMethod::exhaustive;
    throw ConfigError("unknown diameter method '" + s + "'");
}

}  // namespace detail

/// Missing seeds fall back to the top-level "seed".
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    using io::detail::optional_field;
    using io::detail::required;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig cfg;
    cfg.name = optional_field<std::string>(j, "name", cfg.name);
    cfg.seed = optional_field<std::uint64_t>(j, "seed", cfg.seed);
    if (!j.contains("space")) throw ConfigError("missing field 'space'");
    cfg.space = j.at("space");
    io::descriptor_from_json(cfg.space);

    if (!j.contains("generator")) throw ConfigError("missing field 'generator'");
    const auto& g = j.at("generator");
    if (g.is_string()) {
        cfg.generator.id = g.get<std::string>();
    } else {
        cfg.generator.id = required<std::string>(g, "id");
        if (g.contains("params")) cfg.generator.params = g.at("params");
    }

    cfg.schedule = j.contains("schedule") ? detail::schedule_from_json(j.at("schedule"), cfg.seed)
                                          : Schedule::shuffled(cfg.seed);
    cfg.mode = choice_mode_from_string(optional_field<std::string>(j, "mode", "strong"));
    if (j.contains("tie_policy")) {
        cfg.ties = detail::ties_from_json(j.at("tie_policy"), cfg.seed);
    } else {
        cfg.ties = cfg.mode == ChoiceMode::strong ? TiePolicy::both() : TiePolicy::random(cfg.seed);
    }

    if (j.contains("policy")) {
        const auto& p = j.at("policy");
        const auto kind_name = p.is_string() ? p.get<std::string>() : required<std::string>(p, "kind");
        cfg.policy.kind = policy_kind_from_string(kind_name);
        if (p.is_object()) {
            cfg.policy.monotone = monotonicity_from_string(
                optional_field<std::string>(p, "monotone", kind_name == "monotone_required" ? "weak" : "none"));
            cfg.policy.seed = optional_field<std::uint64_t>(p, "seed", cfg.seed);
            cfg.policy.search_budget = optional_field<std::size_t>(p, "search_budget", cfg.policy.search_budget);
            cfg.policy.restarts = optional_field<std::size_t>(p, "restarts", cfg.policy.restarts);
            cfg.policy.lipschitz_a = optional_field<double>(p, "lipschitz_a", cfg.policy.lipschitz_a);
            cfg.policy.lipschitz_b = optional_field<double>(p, "lipschitz_b", cfg.policy.lipschitz_b);
        } else {
            cfg.policy.seed = cfg.seed;
            if (kind_name == "monotone_required") cfg.policy.monotone = Monotonicity::weak;
        }
    }
    cfg.stride = optional_field<std::size_t>(j, "stride", 1);
    if (cfg.stride == 0) throw ConfigError("stride must be positive");
    cfg.checkpoints = optional_field<std::vector<std::size_t>>(j, "checkpoints", {});
    for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
        if (cfg.checkpoints[i] == 0) throw ConfigError("checkpoints must be positive");
        if (i > 0 && cfg.checkpoints[i] <= cfg.checkpoints[i - 1]) {
            throw ConfigError("checkpoints must be strictly increasing");
        }
    }
    const auto ref = optional_field<std::string>(j, "reference", "generator");
    if (ref == "generator") {
        cfg.reference = Reference::generator;
    } else if (ref == "indifference") {
        cfg.reference = Reference::indifference;
    } else {
        throw ConfigError("unknown reference '" + ref + "'");
    }
    if (j.contains("diameter") && !j.at("diameter").is_null()) {
        const auto& d = j.at("diameter");
        DiameterSettings ds;
        ds.samples = optional_field<std::size_t>(d, "samples", ds.samples);
        ds.seed = optional_field<std::uint64_t>(d, "seed", cfg.seed);
        ds.method = detail::diameter_method_from_string(optional_field<std::string>(d, "method", "automatic"));
        cfg.diameter = ds;
    }
    cfg.utility = optional_field<bool>(j, "utility", false);
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        cfg.outputs.csv = optional_field<std::string>(o, "csv", "");
        cfg.outputs.json = optional_field<std::string>(o, "json", "");
        cfg.outputs.svg = optional_field<std::string>(o, "svg", "");
    }
    return cfg;
}

inline ExperimentConfig read_config(const std::filesystem::path& path) {
    return config_from_json(io::parse_json(io::read_text(path), path.string()));
}

/// Normalized form of the config; equal configs give equal documents.
inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["name"] = cfg.name;
    j["seed"] = cfg.seed;
    j["space"] = cfg.space;
    j["generator"] = {{"id", cfg.generator.id}, {"params", cfg.generator.params}};
    j["schedule"] = {{"kind", detail::to_string(cfg.schedule.kind)}, {"seed", cfg.schedule.seed}};
    j["mode"] = to_string(cfg.mode);
    j["tie_policy"] = {{"kind", detail::to_string(cfg.ties.kind)}, {"seed", cfg.ties.seed}};
    j["policy"] = {{"kind", to_string(cfg.policy.kind)},
                   {"monotone", to_string(cfg.policy.monotone)},
                   {"seed", cfg.policy.seed},
                   {"search_budget", cfg.policy.search_budget},
                   {"restarts", cfg.policy.restarts},
                   {"lipschitz_a", cfg.policy.lipschitz_a},
                   {"lipschitz_b", cfg.policy.lipschitz_b}};
    j["stride"] = cfg.stride;
    j["checkpoints"] = cfg.checkpoints;
    j["reference"] = cfg.reference == Reference::generator ? "generator" : "indifference";
    if (cfg.diameter) {
        j["diameter"] = {{"samples", cfg.diameter->samples},
                         {"seed", cfg.diameter->seed},
                         {"method", to_string(cfg.diameter->method)}};
    }
    j["utility"] = cfg.utility;
    return j;
}

/// Output paths do not enter the hash.
inline std::string config_hash(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << fnv1a(config_to_json(cfg).dump());
    return os.str();
}

// ---- generators ----------------------------------------------------------------

inline std::vector<double> generator_values(const GeneratorSpec& g, const OrderedSpace& space) {
    using io::detail::optional_field;
    const auto& params = g.params;
    std::vector<double> out(space.size(), 0.0);
    const std::size_t dims = space.size() == 0 ? 0 : space.point(0).size();
    if (g.id == "cobb_douglas_mix") {
        const double a = optional_field<double>(params, "a", 0.1);
        for (std::size_t i = 0; i < space.size(); ++i) {
            double prod = 1.0;
            double sum = 0.0;
            for (double v : space.point(i)) {
                prod *= v;
                sum += v;
            }
            out[i] = prod + a * sum;
        }
    } else if (g.id == "linear") {
        const auto w = io::detail::required<std::vector<double>>(params, "weights");
        if (w.size() != dims) throw ConfigError("linear generator needs one weight per coordinate");
        for (std::size_t i = 0; i < space.size(); ++i) {
            for (std::size_t d = 0; d < dims; ++d) out[i] += w[d] * space.point(i)[d];
        }
    } else if (g.id == "sum") {
        for (std::size_t i = 0; i < space.size(); ++i) {
            for (double v : space.point(i)) out[i] += v;
        }
    } else if (g.id == "identity") {
        for (std::size_t i = 0; i < space.size(); ++i) out[i] = space.point(i)[0];
    } else if (g.id == "eu") {
        if (space.kind() != SpaceKind::lottery_simplex && space.kind() != SpaceKind::aa_acts) {
            throw ConfigError("eu generator needs a lottery or act space");
        }
        auto index = io::detail::required<std::vector<double>>(params, "index");
        const std::size_t m = space.descriptor().num_prizes;
        if (index.size() != m) throw ConfigError("eu index needs one entry per prize");
        if (optional_field<bool>(params, "normalize", true)) {
            double norm = 0.0;
            for (double v : index) norm += v * v;
            norm = std::sqrt(norm);
            if (norm > 0.0) {
                for (double& v : index) v /= norm;
            }
        }
        for (std::size_t i = 0; i < space.size(); ++i) {
            const auto& p = space.point(i);
            for (std::size_t c = 0; c < p.size(); ++c) out[i] += index[c % m] * p[c];
        }
    } else if (g.id == "exp_discount") {
        if (space.kind() != SpaceKind::dated_rewards) throw ConfigError("exp_discount needs dated rewards");
        const double rate = optional_field<double>(params, "rate", 0.5);
        const double offset = optional_field<double>(params, "offset", 1.0);
        for (std::size_t i = 0; i < space.size(); ++i) {
            out[i] = (offset + space.point(i)[0]) * std::exp(-rate * space.point(i)[1]);
        }
    } else if (g.id == "negated_first") {
        for (std::size_t i = 0; i < space.size(); ++i) {
            out[i] = -space.point(i)[0];
            for (std::size_t d = 1; d < dims; ++d) out[i] += space.point(i)[d];
        }
    } else if (g.id == "constant") {
        // all zero
    } else {
        throw ConfigError("unknown generator '" + g.id + "'");
    }
    return out;
}

inline Preference generator_preference(const GeneratorSpec& g, const SpacePtr& space) {
    return from_utility(space, generator_values(g, *space));
}

/// The generator has to belong to the policy's monotonicity class.
inline void validate_generator(const Preference& gen, Monotonicity monotone) {
    if (monotone != Monotonicity::none && !is_weakly_monotone(gen)) {
        throw ConfigError("generator is not weakly monotone but the policy requires it");
    }
    if (monotone == Monotonicity::strict && !is_strictly_monotone(gen)) {
        throw ConfigError("generator is not strictly monotone but the policy requires it");
    }
}

// ---- runs ------------------------------------------------------------------------

inline ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
    const SpacePtr space = io::space_from_json(cfg.space);
    const Preference gen = generator_preference(cfg.generator, space);
    validate_generator(gen, cfg.policy.monotone);
    validate_policy(cfg.policy, *space);
    if (cfg.mode == ChoiceMode::weak && cfg.ties.kind == TiePolicy::Kind::both) {
        throw ConfigError("weak mode needs a tie policy that picks one element");
    }

    const DenseSubset subset = strided_subset(space, cfg.stride);
    const ExperimentSequence e = enumerate_pairs(subset, cfg.schedule);
    const ChoiceSequence c = generate_choices(gen, e, cfg.mode, cfg.ties);
    const std::vector<std::size_t> ks = cfg.checkpoints.empty() ? default_checkpoints(e.size()) : cfg.checkpoints;
    if (ks.back() > e.size()) {
        throw ConfigError("checkpoint " + std::to_string(ks.back()) + " exceeds the " + std::to_string(e.size()) +
                          " available pairs");
    }
    const Preference reference = cfg.reference == Reference::generator ? gen : total_indifference(space);

    RationalizationPolicy policy = cfg.policy;
    if (policy.kind == RationalizationPolicy::Kind::adversarial_far) policy.target = reference;

    std::optional<UtilityFunction> u_star;
    if (cfg.utility) {
        u_star = make_utility(space, generator_values(cfg.generator, *space));
        chain_restriction(*u_star);  // fails early when the chain is missing or not increasing
    }

    ConvergenceReport report;
    report.name = cfg.name;
    report.config_hash = config_hash(cfg);
    report.seed = cfg.seed;
    report.grid_step = space->grid_step();
    for (std::size_t k : ks) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto [ek, ck] = restrict(e, c, k);
        const RationalizationResult res = rationalize(ek, ck, policy);
        ReportRow row;
        row.k = k;
        // Soundness is re-checked here rather than trusted.
        row.consistent = res.consistent && res.preference && replays(*res.preference, ek, ck);
        if (res.preference) row.delta_c = closed_convergence_distance(*res.preference, reference);
        if (cfg.diameter && res.consistent) {
            row.diameter = diameter_estimate(ek, ck, policy.monotone, cfg.diameter->samples, cfg.diameter->seed,
                                             cfg.diameter->method)
                               .value;
        }
        if (u_star && res.preference && is_strictly_monotone(*res.preference)) {
            const auto uk = certainty_equivalent_utility(*res.preference, chain_restriction(*u_star));
            row.utility_dist = max_norm_distance(uk, *u_star);
        }
        row.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report.rows.push_back(row);
    }
    return report;
}

// ---- report emission --------------------------------------------------------------

inline constexpr const char* report_csv_header = "k,delta_c,diameter,utility_dist,consistent,wall_time_ms";

/// Metadata travels as leading '#' lines. Timing can be left out for
/// byte-for-byte comparisons.
inline std::string report_csv(const ConvergenceReport& r, bool include_timing = true) {
    using io::detail::format_double;
    std::ostringstream os;
    os << "# name=" << r.name << '\n'
       << "# config_hash=" << r.config_hash << '\n'
       << "# seed=" << r.seed << '\n'
       << "# version=" << r.version << '\n'
       << "# grid_step=" << format_double(r.grid_step) << '\n'
       << report_csv_header << '\n';
    for (const auto& row : r.rows) {
        os << row.k << ',' << (std::isnan(row.delta_c) ? "" : format_double(row.delta_c)) << ','
           << (row.diameter ? format_double(*row.diameter) : "") << ','
           << (row.utility_dist ? format_double(*row.utility_dist) : "") << ',' << (row.consistent ? 1 : 0) << ','
           << (include_timing ? format_double(row.wall_time_ms) : "0") << '\n';
    }
    return os.str();
}

inline ConvergenceReport parse_report_csv(const std::string& text) {
    ConvergenceReport r;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(2, eq - 2);
            const std::string value = line.substr(eq + 1);
            if (key == "name") r.name = value;
            else if (key == "config_hash") r.config_hash = value;
            else if (key == "seed") r.seed = std::stoull(value);
            else if (key == "version") r.version = value;
            else if (key == "grid_step") r.grid_step = io::detail::parse_real(value, line_no);
            continue;
        }
        if (!header) {
            if (line != report_csv_header) throw ConfigError("unexpected report header '" + line + "'");
            header = true;
            continue;
        }
        const auto cells = io::detail::split_csv_line(line);
        if (cells.size() != 6) throw ConfigError("line " + std::to_string(line_no) + ": expected six columns");
        ReportRow row;
        row.k = static_cast<std::size_t>(io::detail::parse_integer(cells[0], line_no));
        row.delta_c = io::detail::parse_real(cells[1], line_no);
        if (!cells[2].empty()) row.diameter = io::detail::parse_real(cells[2], line_no);
        if (!cells[3].empty()) row.utility_dist = io::detail::parse_real(cells[3], line_no);
        row.consistent = cells[4] == "1";
        row.wall_time_ms = io::detail::parse_real(cells[5], line_no);
        r.rows.push_back(row);
    }
    if (!header) throw ConfigError("report has no header row");
    return r;
}

inline nlohmann::json report_to_json(const ConvergenceReport& r, bool include_timing = true) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json j;
        j["k"] = row.k;
        j["delta_c"] = std::isnan(row.delta_c) ? nlohmann::json(nullptr) : nlohmann::json(row.delta_c);
        j["diameter"] = row.diameter ? nlohmann::json(*row.diameter) : nlohmann::json(nullptr);
        j["utility_dist"] = row.utility_dist ? nlohmann::json(*row.utility_dist) : nlohmann::json(nullptr);
        j["consistent"] = row.consistent;
        if (include_timing) j["wall_time_ms"] = row.wall_time_ms;
        rows.push_back(std::move(j));
    }
    return {{"metadata",
             {{"name", r.name},
              {"config_hash", r.config_hash},
              {"seed", r.seed},
              {"version", r.version},
              {"grid_step", r.grid_step}}},
            {"rows", rows}};
}

/// Line chart of delta_c, and of diameter and utility distance when present,
/// against k on a log2 axis. One polyline per series.
inline std::string report_svg(const ConvergenceReport& r) {
    struct Series {
        const char* label;
        const char* colour;
        std::vector<std::pair<double, double>> pts;
    };
    std::vector<Series> series{{"delta_c", "#1f77b4", {}}, {"diameter", "#d62728", {}}, {"utility_dist", "#2ca02c", {}}};
    for (const auto& row : r.rows) {
        const double x = std::log2(static_cast<double>(row.k));
        if (!std::isnan(row.delta_c)) series[0].pts.emplace_back(x, row.delta_c);
        if (row.diameter) series[1].pts.emplace_back(x, *row.diameter);
        if (row.utility_dist) series[2].pts.emplace_back(x, *row.utility_dist);
    }
    std::erase_if(series, [](const Series& s) { return s.pts.empty(); });

    double x_max = 1.0;
    double y_max = 0.0;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.pts) {
            x_max = std::max(x_max, x);
            y_max = std::max(y_max, y);
        }
    }
    if (y_max <= 0.0) y_max = 1.0;
    const double W = 640, H = 400, L = 60, R = 20, T = 30, B = 50;
    auto sx = [&](double x) { return L + (W - L - R) * x / x_max; };
    auto sy = [&](double y) { return H - B - (H - T - B) * y / y_max; };

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\">\n";
    os << "<title>" << r.name << " (" << r.config_hash << ")</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (W + L) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">log2 k</text>\n";
    for (int t = 0; t <= 4; ++t) {
        const double y = y_max * t / 4.0;
        os << "<text x=\"" << L - 6 << "\" y=\"" << sy(y) + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << y
           << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << series[s].colour << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < series[s].pts.size(); ++i) {
            if (i) os << ' ';
            os << sx(series[s].pts[i].first) << ',' << sy(series[s].pts[i].second);
        }
        os << "\"/>\n";
        os << "<text x=\"" << W - R - 100 << "\" y=\"" << T + 14 * static_cast<double>(s) << "\" fill=\""
           << series[s].colour << "\" font-size=\"12\">" << series[s].label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

enum class ReportFormat { csv, json, svg_plot };

inline void emit_report(const ConvergenceReport& r, ReportFormat format, const std::filesystem::path& path) {
    switch (format) {
    case ReportFormat::csv: io::write_text(path, report_csv(r)); break;
    case ReportFormat::json: io::write_text(path, report_to_json(r).dump(2) + "\n"); break;
    case ReportFormat::svg_plot: io::write_text(path, report_svg(r)); break;
    }
}

/// Writes every output path set in the config.
inline void emit_outputs(const ConvergenceReport& r, const OutputPaths& out) {
    if (!out.csv.empty()) emit_report(r, ReportFormat::csv, out.csv);
    if (!out.json.empty()) emit_report(r, ReportFormat::json, out.json);
    if (!out.svg.empty()) emit_report(r, ReportFormat::svg_plot, out.svg);
}

}  // namespace prefid
