#pragma once

// JSON and CSV interchange: space descriptors, preferences, relations,
// choice data, rationalization results and utilities.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "prefid/error.hpp"
#include "prefid/experiments.hpp"
#include "prefid/preferences.hpp"
#include "prefid/rationalize.hpp"
#include "prefid/spaces.hpp"
#include "prefid/utility.hpp"

namespace prefid::io {

using json = nlohmann::json;

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(what + " is not valid JSON: " + e.what());
    }
}

namespace detail {

template <class T>
T required(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

template <class T>
T optional_field(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    double back = 0.0;
    for (int p = 1; p <= std::numeric_limits<double>::max_digits10; ++p) {
        std::ostringstream t;
        t << std::setprecision(p) << v;
        std::istringstream(t.str()) >> back;
        if (back == v) return t.str();
    }
    return os.str();
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r' && ch != ' ' && ch != '\t') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline long long parse_integer(const std::string& s, std::size_t line_no) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": '" + s + "' is not an integer");
    }
}

inline double parse_real(const std::string& s, std::size_t line_no) {
    if (s.empty() || s == "nan") return std::numeric_limits<double>::quiet_NaN();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": '" + s + "' is not a number");
    }
}

}  // namespace detail

// ---- spaces -------------------------------------------------------------

inline json space_to_json(const OrderedSpace& space, bool emit_points = false) {
    const auto& d = space.descriptor();
    json j;
    j["kind"] = to_string(d.kind);
    if (d.explicit_points) {
        j["step"] = d.explicit_step;
        emit_points = true;
    } else {
        switch (d.kind) {
        case SpaceKind::euclidean_grid:
            j["dims"] = d.dims;
            j["resolution"] = d.resolution;
            break;
        case SpaceKind::lottery_simplex:
            j["num_prizes"] = d.num_prizes;
            j["resolution"] = d.resolution;
            break;
        case SpaceKind::dated_rewards:
            j["money_resolution"] = d.money_resolution;
            j["time_resolution"] = d.time_resolution;
            break;
        case SpaceKind::aa_acts:
            j["num_states"] = d.num_states;
            j["num_prizes"] = d.num_prizes;
            j["resolution"] = d.resolution;
            break;
        }
        if (!d.bounds.empty()) {
            json b = json::array();
            for (const auto& [lo, hi] : d.bounds) b.push_back({lo, hi});
            j["bounds"] = b;
        }
    }
    if (emit_points) {
        json pts = json::array();
        for (const auto& p : space.points()) pts.push_back(p);
        j["points"] = pts;
    }
    return j;
}

inline std::vector<Interval> bounds_from_json(const json& j, std::vector<Interval> fallback) {
    if (!j.contains("bounds")) return fallback;
    const auto& b = j.at("bounds");
    if (!b.is_array()) throw ConfigError("bounds must be an array");
    // A single [lo, hi] pair is accepted as shorthand for one interval.
    if (b.size() == 2 && b[0].is_number() && b[1].is_number()) return {{b[0].get<double>(), b[1].get<double>()}};
    std::vector<Interval> out;
    for (const auto& iv : b) {
        if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() || !iv[1].is_number()) {
            throw ConfigError("each bound must be a [lo, hi] pair");
        }
        out.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
    return out;
}

inline SpaceDescriptor descriptor_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("space must be a JSON object");
    SpaceDescriptor d;
    d.kind = space_kind_from_string(detail::required<std::string>(j, "kind"));
    if (d.kind == SpaceKind::euclidean_grid && j.contains("points")) {
        d.explicit_points = true;
        d.explicit_step = detail::required<double>(j, "step");
        return d;
    }
    switch (d.kind) {
    case SpaceKind::euclidean_grid:
        d.dims = detail::required<std::size_t>(j, "dims");
        d.resolution = detail::required<std::size_t>(j, "resolution");
        d.bounds = bounds_from_json(j, {{0.0, 1.0}});
        break;
    case SpaceKind::lottery_simplex:
        d.num_prizes = detail::required<std::size_t>(j, "num_prizes");
        d.resolution = detail::required<std::size_t>(j, "resolution");
        break;
    case SpaceKind::dated_rewards:
        d.money_resolution = detail::required<std::size_t>(j, "money_resolution");
        d.time_resolution = detail::required<std::size_t>(j, "time_resolution");
        d.bounds = bounds_from_json(j, {{0.0, 1.0}, {0.0, 1.0}});
        break;
    case SpaceKind::aa_acts:
        d.num_states = detail::required<std::size_t>(j, "num_states");
        d.num_prizes = detail::required<std::size_t>(j, "num_prizes");
        d.resolution = detail::required<std::size_t>(j, "resolution");
        break;
    }
    return d;
}

inline SpacePtr space_from_json(const json& j, std::size_t point_budget = default_point_budget) {
    const SpaceDescriptor d = descriptor_from_json(j);
    std::vector<Point> points;
    if (d.explicit_points) {
        try {
            points = j.at("points").get<std::vector<Point>>();
        } catch (const json::exception&) {
            throw ConfigError("points must be a list of coordinate lists");
        }
    }
    return make_space(d, points, point_budget);
}

inline SpacePtr read_space(const std::filesystem::path& path, std::size_t point_budget = default_point_budget) {
    return space_from_json(parse_json(read_text(path), path.string()), point_budget);
}

// ---- preferences and relations -------------------------------------------

inline json preference_to_json(const Preference& p, const std::string& space_ref) {
    return json{{"space_ref", space_ref}, {"ranks", p.ranks()}};
}

inline Preference preference_from_json(const json& j, SpacePtr space) {
    const auto ranks = detail::required<std::vector<int>>(j, "ranks");
    if (ranks.size() != space->size()) throw ConfigError("ranks do not match the space size");
    return Preference(std::move(space), ranks);
}

inline json relation_to_json(const BinaryRelation& r) {
    json pairs = json::array();
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r.contains(i, j)) pairs.push_back({i, j});
        }
    }
    return pairs;
}

inline std::string graph_csv(const BinaryRelation& r) {
    std::ostringstream os;
    os << "i,j\n";
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (r.contains(i, j)) os << i << ',' << j << '\n';
        }
    }
    return os.str();
}

inline BinaryRelation parse_graph_csv(const std::string& text, SpacePtr space) {
    BinaryRelation r(space);
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() == 1 && cells[0].empty()) continue;
        if (line_no == 1 && cells.size() == 2 && cells[0] == "i") continue;
        if (cells.size() != 2) throw ConfigError("line " + std::to_string(line_no) + ": expected two columns");
        const auto i = detail::parse_integer(cells[0], line_no);
        const auto j = detail::parse_integer(cells[1], line_no);
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= space->size() ||
            static_cast<std::size_t>(j) >= space->size()) {
            throw DomainError("line " + std::to_string(line_no) + ": index outside the space");
        }
        r.insert(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return r;
}

// ---- choice data ----------------------------------------------------------

inline constexpr const char* choice_csv_header = "k,x_index,y_index,chose_x,chose_y";

inline std::string choices_csv(const ExperimentSequence& e, const ChoiceSequence& c) {
    if (e.size() != c.size()) throw DomainError("experiment and choice sequences differ in length");
    std::ostringstream os;
    os << choice_csv_header << '\n';
    for (std::size_t k = 0; k < e.size(); ++k) {
        os << k + 1 << ',' << e.pairs[k].first << ',' << e.pairs[k].second << ',' << (c.choices[k].x ? 1 : 0) << ','
           << (c.choices[k].y ? 1 : 0) << '\n';
    }
    return os.str();
}

/// Rows must be numbered 1, 2, ... in order; every row needs a chosen element.
inline std::pair<ExperimentSequence, ChoiceSequence> parse_choices_csv(const std::string& text, SpacePtr space,
                                                                       ChoiceMode mode) {
    std::vector<IndexPair> pairs;
    ChoiceSequence c{mode, {}};
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() == 1 && cells[0].empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (cells.size() == 5 && cells[0] == "k") continue;
        }
        if (cells.size() != 5) throw ConfigError("line " + std::to_string(line_no) + ": expected five columns");
        const auto k = detail::parse_integer(cells[0], line_no);
        const auto x = detail::parse_integer(cells[1], line_no);
        const auto y = detail::parse_integer(cells[2], line_no);
        const auto cx = detail::parse_integer(cells[3], line_no);
        const auto cy = detail::parse_integer(cells[4], line_no);
        if (k != static_cast<long long>(pairs.size()) + 1) {
            throw ConfigError("line " + std::to_string(line_no) + ": rows must be numbered consecutively from 1");
        }
        if (x < 0 || y < 0 || static_cast<std::size_t>(x) >= space->size() ||
            static_cast<std::size_t>(y) >= space->size()) {
            throw DomainError("line " + std::to_string(line_no) + ": index outside the space");
        }
        if (x == y) throw DomainError("line " + std::to_string(line_no) + ": pair with identical elements");
        if ((cx != 0 && cx != 1) || (cy != 0 && cy != 1)) {
            throw ConfigError("line " + std::to_string(line_no) + ": choice flags must be 0 or 1");
        }
        if (cx == 0 && cy == 0) throw ConfigError("line " + std::to_string(line_no) + ": nothing chosen");
        pairs.emplace_back(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
        c.choices.push_back({cx == 1, cy == 1});
    }
    return {experiment_from_pairs(std::move(space), std::move(pairs)), std::move(c)};
}

inline std::pair<ExperimentSequence, ChoiceSequence> read_choices(const std::filesystem::path& path, SpacePtr space,
                                                                  ChoiceMode mode) {
    return parse_choices_csv(read_text(path), std::move(space), mode);
}

// ---- rationalization results ------------------------------------------------

inline json result_to_json(const RationalizationResult& r, std::optional<double> diameter = std::nullopt) {
    json j;
    j["policy"] = to_string(r.policy);
    j["consistent"] = r.consistent;
    j["ranks"] = r.preference ? json(r.preference->ranks()) : json(nullptr);
    if (r.delta_c_to_target) j["delta_c_to_target"] = *r.delta_c_to_target;
    if (diameter) j["diameter"] = *diameter;
    if (!r.witness_cycle.empty()) j["witness_cycle"] = r.witness_cycle;
    if (r.budget_exhausted) j["budget_exhausted"] = true;
    if (r.degenerate) j["degenerate"] = true;
    if (!r.utility.empty()) j["utility"] = r.utility;
    return j;
}

// ---- utilities ------------------------------------------------------------

inline std::string utility_csv(const UtilityFunction& u) {
    const auto& space = *u.space;
    const std::size_t dims = space.size() == 0 ? 0 : space.point(0).size();
    std::ostringstream os;
    for (std::size_t d = 0; d < dims; ++d) os << 'x' << d + 1 << ',';
    os << "value\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        for (double v : space.point(i)) os << detail::format_double(v) << ',';
        os << detail::format_double(u.values[i]) << '\n';
    }
    return os.str();
}

inline json utility_to_json(const UtilityFunction& u) {
    json pts = json::array();
    for (std::size_t i = 0; i < u.space->size(); ++i) pts.push_back({{"point", u.space->point(i)}, {"value", u.values[i]}});
    return pts;
}

}  // namespace prefid::io
