// Batch driver: parses an experiment config, runs the requested computation
// and writes a JSON report (plus optional CSV profiles).
//
// Exit codes: 0 success, 2 config error, 3 compute error, 4 I/O error.
// stdout carries only the report path; diagnostics go to stderr.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "morrey/runner.hpp"

namespace {

morrey::json load_config_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw morrey::ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return morrey::json::parse(ss.str());
    } catch (const std::exception& e) {
        throw morrey::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"morrey-lab batch driver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string csv_base;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int k_min = 0, k_max = 0;
    bool k_min_set = false, k_max_set = false;
    double lattice = 0.0;
    bool lattice_set = false;
    int mc_samples = 0;
    bool mc_set = false;

    const char* names[] = {"norm",  "classify", "mollify", "truncate",
                           "zorko", "young",    "embed",   "phi-bounds"};
    for (const char* name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "experiment config (JSON)")->required();
        sub->add_option("--out", out_path, "report output path");
        sub->add_option("--csv", csv_base, "emit CSV profiles with this base path");
        sub->add_option("--seed", seed, "override the quadrature seed")
            ->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--k-min", k_min, "override search.k_min")
            ->each([&](const std::string&) { k_min_set = true; });
        sub->add_option("--k-max", k_max, "override search.k_max")
            ->each([&](const std::string&) { k_max_set = true; });
        sub->add_option("--lattice", lattice, "override search.lattice_spacing")
            ->each([&](const std::string&) { lattice_set = true; });
        sub->add_option("--mc-samples", mc_samples, "override quadrature.mc_samples")
            ->each([&](const std::string&) { mc_set = true; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        morrey::json raw = load_config_json(config_path);
        if (raw.is_object()) {
            if (!raw.contains("command"))
                raw["command"] = command;
            else if (raw["command"] != command)
                throw morrey::ConfigError("config command '" + raw["command"].dump() +
                                          "' does not match CLI subcommand '" + command + "'");
        }
        morrey::ExperimentConfig cfg = morrey::parse_experiment_config(raw);
        if (seed_set) cfg.search.quadrature.seed = seed;
        if (k_min_set) cfg.search.k_min = k_min;
        if (k_max_set) cfg.search.k_max = k_max;
        if (lattice_set) cfg.search.lattice_spacing = lattice;
        if (mc_set) cfg.search.quadrature.mc_samples = mc_samples;
        if (!out_path.empty()) cfg.out_path = out_path;
        if (cfg.out_path.empty()) cfg.out_path = command + "_report.json";
        cfg.search.validate();

        const morrey::Report report = morrey::run(cfg);
        morrey::write_report(report, cfg.out_path);
        if (!csv_base.empty()) morrey::emit_profile_csv(report, csv_base);
        std::cout << cfg.out_path << "\n";
        return 0;
    } catch (const morrey::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const morrey::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const morrey::Error& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
