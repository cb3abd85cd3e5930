#pragma once

#include "vlp/estimators.hpp"
#include "vlp/scene.hpp"
#include "vlp/search.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

namespace vlp {

enum class SweepKind { Noise, Alpha, Path };

std::string_view sweep_kind_name(SweepKind kind);
/// "noise" | "alpha" | "path"; ConfigError otherwise.
SweepKind sweep_kind_from_string(std::string_view name);

struct NoiseSweep {
    std::vector<double> sigma2;  // W^2
};

struct AlphaSweep {
    std::vector<double> decay_rates;  // 1/hour
    std::vector<double> sigma2;
};

struct PathSweep {
    Vec3 start = Vec3::Zero();
    Vec3 end = Vec3::Zero();
    int steps = 2;  // waypoints including both ends
    std::vector<double> sigma2;

    std::vector<Vec3> waypoints() const;
};

struct ExperimentConfig {
    Scene scene;
    std::vector<Scenario> scenarios{Scenario::Mismatch, Scenario::ModelOnly, Scenario::Full};
    std::optional<NoiseSweep> noise_sweep;
    std::optional<AlphaSweep> alpha_sweep;
    std::optional<PathSweep> path_sweep;
    int trials = 500;
    std::uint64_t master_seed = 1;
    std::filesystem::path output_dir = "out";
    SearchOptions search;
    unsigned threads = 0;  // 0: hardware concurrency
    nlohmann::json source;  // parsed document, echoed into run manifests

    /// Throws ConfigError on invalid values.
    void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
/// Reads and parses a config file; I/O and JSON syntax problems are reported
/// as ConfigError.
ExperimentConfig load_config(const std::filesystem::path& path);

/// The reference room as a config document with the three sweeps used for
/// the comparative study.
nlohmann::json reference_config_json();

}  // namespace vlp
