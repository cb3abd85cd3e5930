// vlp: bounds, Monte Carlo sweeps and one-shot estimation for received-power
// visible light positioning under LED power decay.
//
// Exit codes: 0 success, 2 configuration/input error, 3 numerical singularity.

#include "vlp/bounds.hpp"
#include "vlp/config.hpp"
#include "vlp/errors.hpp"
#include "vlp/estimators.hpp"
#include "vlp/harness.hpp"
#include "vlp/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSingular = 3;

vlp::ExperimentConfig load(const std::string& path, const std::optional<std::uint64_t>& seed) {
    vlp::ExperimentConfig cfg = vlp::load_config(path);
    if (seed) cfg.master_seed = *seed;
    return cfg;
}

vlp::MeasurementSet read_measurements(const std::string& path, std::size_t led_count,
                                      double t_hours) {
    std::ifstream in(path);
    if (!in) throw vlp::ConfigError("cannot open measurement file " + path);
    std::string line;
    if (!std::getline(in, line)) throw vlp::ConfigError("measurement file is empty");
    if (line.rfind("led_index,power_w", 0) != 0) {
        throw vlp::ConfigError("measurement file must start with header led_index,power_w");
    }
    vlp::MeasurementSet meas;
    meas.elapsed_hours = t_hours;
    meas.powers.assign(led_count, 0.0);
    std::vector<bool> seen(led_count, false);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string idx_text, power_text;
        if (!std::getline(row, idx_text, ',') || !std::getline(row, power_text)) {
            throw vlp::ConfigError("malformed measurement row at line " + std::to_string(line_no));
        }
        std::size_t idx = 0;
        double power = 0.0;
        try {
            idx = std::stoul(idx_text);
            power = std::stod(power_text);
        } catch (const std::exception&) {
            throw vlp::ConfigError("malformed measurement row at line " + std::to_string(line_no));
        }
        if (idx >= led_count || seen[idx]) {
            throw vlp::ConfigError("bad or duplicate led_index at line " + std::to_string(line_no));
        }
        seen[idx] = true;
        meas.powers[idx] = power;
    }
    for (std::size_t i = 0; i < led_count; ++i) {
        if (!seen[i]) throw vlp::ConfigError("missing measurement for LED " + std::to_string(i));
    }
    return meas;
}

std::vector<vlp::Scenario> selected(const vlp::ExperimentConfig& cfg, const std::optional<int>& s) {
    if (s) return {vlp::scenario_from_int(*s)};
    return cfg.scenarios;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Visible light positioning under LED luminous flux degradation"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> scenario;

    auto* bounds = app.add_subcommand("bounds", "Print the theoretical bounds as JSON");
    bounds->add_option("--config", config_path, "Experiment config (JSON)")->required();
    bounds->add_option("--scenario", scenario, "Scenario 1, 2 or 3 (default: all configured)")
        ->check(CLI::Range(1, 3));
    bounds->add_option("--seed", seed, "Override the config master seed");

    std::string kind = "noise";
    std::string out_dir;
    std::optional<unsigned> threads;
    auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep and write CSV/SVG/manifest");
    sweep->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sweep->add_option("--kind", kind, "Sweep axis")
        ->required()
        ->check(CLI::IsMember({"noise", "alpha", "path"}));
    sweep->add_option("--out", out_dir, "Output directory (default: config output_dir)");
    sweep->add_option("--seed", seed, "Override the config master seed");
    sweep->add_option("--threads", threads, "Worker threads (0: all cores)");

    std::string measurements_path;
    auto* estimate = app.add_subcommand("estimate", "Estimate the position from one measurement CSV");
    estimate->add_option("--config", config_path, "Experiment config (JSON)")->required();
    estimate->add_option("--measurements", measurements_path, "CSV with columns led_index,power_w")
        ->required();
    estimate->add_option("--scenario", scenario, "Scenario 1, 2 or 3 (default: all configured)")
        ->check(CLI::Range(1, 3));
    estimate->add_option("--seed", seed, "Override the config master seed");

    auto* example = app.add_subcommand("example-config", "Print the reference room config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*example) {
            std::cout << vlp::reference_config_json().dump(2) << "\n";
            return 0;
        }

        const vlp::ExperimentConfig loaded = load(config_path, seed);

        if (*bounds) {
            nlohmann::json reports = nlohmann::json::array();
            for (vlp::Scenario s : selected(loaded, scenario)) {
                reports.push_back(vlp::to_json(vlp::bound_report(loaded.scene, s)));
            }
            std::cout << (scenario ? reports.front() : nlohmann::json{{"reports", reports}}).dump(2)
                      << "\n";
            return 0;
        }

        if (*sweep) {
            vlp::ExperimentConfig cfg = loaded;
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            if (threads) cfg.threads = *threads;
            const vlp::SweepKind k = vlp::sweep_kind_from_string(kind);
            vlp::prepare_output_dir(cfg.output_dir);
            const auto start = std::chrono::steady_clock::now();
            const auto rows = vlp::run_sweep(cfg, k);
            const double wall =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const auto files = vlp::emit_outputs(rows, cfg, k, wall);
            for (const auto& p : files.csv) std::cout << p.string() << "\n";
            for (const auto& p : files.svg) std::cout << p.string() << "\n";
            std::cout << files.manifest.string() << "\n";
            return 0;
        }

        if (*estimate) {
            const vlp::Scene& scene = loaded.scene;
            const vlp::MeasurementSet meas =
                read_measurements(measurements_path, scene.leds.size(), scene.t_hours);
            const vlp::PositionEstimator estimator(scene.leds, scene.rx, loaded.search);
            nlohmann::json results = nlohmann::json::array();
            for (vlp::Scenario s : selected(loaded, scenario)) {
                nlohmann::json r = vlp::to_json(estimator.estimate({s, std::nullopt}, meas, scene.noise));
                r["scenario"] = static_cast<int>(s);
                results.push_back(r);
            }
            std::cout << nlohmann::json{{"estimates", results}}.dump(2) << "\n";
            return 0;
        }
    } catch (const vlp::SingularityError& e) {
        std::cerr << "vlp: " << e.what() << "\n";
        return kExitSingular;
    } catch (const vlp::ConfigError& e) {
        std::cerr << "vlp: " << e.what() << "\n";
        return kExitConfig;
    } catch (const vlp::DomainError& e) {
        std::cerr << "vlp: " << e.what() << "\n";
        return kExitConfig;
    } catch (const vlp::IoError& e) {
        std::cerr << "vlp: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "vlp: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
