// prefid command-line tool.
//
// Exit codes: 0 success, 1 runtime failure (or a failed gallery check),
// 2 configuration error, 3 inconsistent data in check mode.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "prefid/prefid.hpp"

namespace {

using nlohmann::json;
using namespace prefid;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_config = 2;
constexpr int exit_inconsistent = 3;

json gallery_json(const GalleryReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json series = json::array();
    for (const auto& row : r.series) series.push_back({row.parameter, row.value});
    return {{"item", r.item}, {"passed", r.passed()}, {"series_label", r.series_label}, {"series", series},
            {"checks", checks}};
}

void print_gallery(const GalleryReport& r) {
    std::cout << r.item << ": " << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const auto& c : r.checks) {
        std::cout << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name;
        if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
        std::cout << '\n';
    }
    if (!r.series.empty()) {
        std::cout << "  " << r.series_label << '\n';
        for (const auto& row : r.series) std::cout << "    " << row.parameter << '\t' << row.value << '\n';
    }
}

void write_or_print(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        io::write_text(path, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preference identification from binary choice experiments"};
    app.set_version_flag("--version", std::string(library_version));
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run a seeded convergence experiment from a JSON config");
    std::string config_path;
    std::string run_csv, run_json, run_svg;
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--csv", run_csv, "Override the CSV report path");
    run->add_option("--json", run_json, "Override the JSON report path");
    run->add_option("--svg", run_svg, "Override the SVG plot path");

    // gallery
    auto* gallery = app.add_subcommand("gallery", "Run a counterexample gallery item");
    std::string gallery_item;
    std::string gallery_out;
    gallery->add_option("item", gallery_item, "motivating_01 | prop1 | grodal_nontransitive | locally_strict_not_closed | all")
        ->required();
    gallery->add_option("--json", gallery_out, "Also write the report as JSON");

    // check
    auto* check = app.add_subcommand("check", "Check choice data for consistency and rationalize it");
    std::string data_path, space_path, mode_name = "strong", monotone_name = "none", policy_name = "canonical";
    std::string check_out;
    std::uint64_t check_seed = 0;
    check->add_option("--data", data_path, "Choice CSV (k,x_index,y_index,chose_x,chose_y)")->required();
    check->add_option("--space", space_path, "Space descriptor (JSON)")->required();
    check->add_option("--mode", mode_name, "strong | weak")->required();
    check->add_option("--monotone", monotone_name, "none | weak | strict");
    check->add_option("--policy", policy_name, "canonical | randomized | adversarial_indifference | eu_class | lipschitz");
    check->add_option("--seed", check_seed, "Seed for randomized policies");
    check->add_option("--out", check_out, "Write the result JSON here instead of stdout");

    // diameter
    auto* diameter = app.add_subcommand("diameter", "Estimate the diameter of the rationalization set");
    std::string d_data, d_space, d_mode = "weak", d_monotone = "strict", d_method = "automatic";
    std::size_t d_samples = 200;
    std::uint64_t d_seed = 0;
    diameter->add_option("--data", d_data, "Choice CSV")->required();
    diameter->add_option("--space", d_space, "Space descriptor (JSON)")->required();
    diameter->add_option("--samples", d_samples, "Number of sampled rationalizations");
    diameter->add_option("--seed", d_seed, "Sampler seed");
    diameter->add_option("--mode", d_mode, "strong | weak");
    diameter->add_option("--monotone", d_monotone, "none | weak | strict");
    diameter->add_option("--method", d_method, "automatic | sampled | exhaustive");

    // space
    auto* space_cmd = app.add_subcommand("space", "Print a normalized space descriptor");
    std::string s_path;
    bool emit_points = false;
    space_cmd->add_option("--space", s_path, "Space descriptor (JSON)")->required();
    space_cmd->add_flag("--emit-points", emit_points, "Include the point coordinates");

    // generate
    auto* generate = app.add_subcommand("generate", "Generate choice data (CSV) from a config");
    std::string g_config, g_out;
    std::size_t g_k = 0;
    generate->add_option("--config", g_config, "Experiment config (JSON)")->required();
    generate->add_option("--k", g_k, "Number of experiments (default all)");
    generate->add_option("--out", g_out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*run) {
            ExperimentConfig cfg = read_config(config_path);
            if (!run_csv.empty()) cfg.outputs.csv = run_csv;
            if (!run_json.empty()) cfg.outputs.json = run_json;
            if (!run_svg.empty()) cfg.outputs.svg = run_svg;
            const ConvergenceReport report = run_convergence(cfg);
            emit_outputs(report, cfg.outputs);
            std::cout << report_csv(report);
            return exit_ok;
        }
        if (*gallery) {
            std::vector<std::string> items;
            if (gallery_item == "all") {
                items = gallery_items();
            } else {
                items.push_back(gallery_item);
            }
            bool ok = true;
            json all = json::array();
            for (const auto& item : items) {
                const GalleryReport r = run_gallery(item);
                print_gallery(r);
                all.push_back(gallery_json(r));
                ok = ok && r.passed();
            }
            if (!gallery_out.empty()) io::write_text(gallery_out, (items.size() == 1 ? all[0] : all).dump(2) + "\n");
            return ok ? exit_ok : exit_failure;
        }
        if (*check) {
            const SpacePtr space = io::read_space(space_path);
            const auto [e, c] = io::read_choices(data_path, space, choice_mode_from_string(mode_name));
            RationalizationPolicy policy;
            policy.kind = policy_kind_from_string(policy_name);
            policy.monotone = monotonicity_from_string(monotone_name);
            if (policy_name == "monotone_required" && policy.monotone == Monotonicity::none) {
                policy.monotone = Monotonicity::weak;
            }
            policy.seed = check_seed;
            if (policy.kind == RationalizationPolicy::Kind::adversarial_far) {
                throw ConfigError("adversarial_far needs a target and is only available through run configs");
            }
            const RationalizationResult res = rationalize(e, c, policy);
            write_or_print(check_out, io::result_to_json(res).dump(2) + "\n");
            return res.consistent ? exit_ok : exit_inconsistent;
        }
        if (*diameter) {
            const SpacePtr space = io::read_space(d_space);
            const auto [e, c] = io::read_choices(d_data, space, choice_mode_from_string(d_mode));
            const Monotonicity mono = monotonicity_from_string(d_monotone);
            if (!check_consistency(revealed_relation(e, c, mono)).consistent) {
                std::cerr << "data are inconsistent with the " << to_string(mono) << " monotone class\n";
                return exit_inconsistent;
            }
            DiameterMethod method = DiameterMethod::automatic;
            if (d_method == "sampled") method = DiameterMethod::sampled;
            else if (d_method == "exhaustive") method = DiameterMethod::exhaustive;
            else if (d_method != "automatic") throw ConfigError("unknown diameter method '" + d_method + "'");
            const DiameterEstimate est = diameter_estimate(e, c, mono, d_samples, d_seed, method);
            json out{{"diameter", est.value},
                     {"method", to_string(est.method)},
                     {"rationalizations", est.rationalizations},
                     {"grid_step", space->grid_step()}};
            std::cout << out.dump(2) << '\n';
            return exit_ok;
        }
        if (*space_cmd) {
            const SpacePtr space = io::read_space(s_path);
            json out = io::space_to_json(*space, emit_points);
            out["size"] = space->size();
            std::cout << out.dump(2) << '\n';
            return exit_ok;
        }
        if (*generate) {
            const ExperimentConfig cfg = read_config(g_config);
            const SpacePtr space = io::space_from_json(cfg.space);
            const Preference gen = generator_preference(cfg.generator, space);
            const ExperimentSequence e = enumerate_pairs(strided_subset(space, cfg.stride), cfg.schedule);
            const ChoiceSequence c = generate_choices(gen, e, cfg.mode, cfg.ties);
            const std::size_t k = g_k == 0 ? e.size() : g_k;
            const auto [ek, ck] = restrict(e, c, k);
            write_or_print(g_out, io::choices_csv(ek, ck));
            return exit_ok;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return e.kind() == ErrorKind::invalid_configuration || e.kind() == ErrorKind::io ? exit_config : exit_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_ok;
}
