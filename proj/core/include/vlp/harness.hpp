#pragma once

#include "vlp/config.hpp"
#include "vlp/estimators.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vlp {

/// Square root of a bound trace, in meters.
struct BoundValue {
    std::string kind;  // "lb", "mcrb" or "crb"
    double value_m = 0.0;
};

/// Monte Carlo result for one (sweep point, noise level, scenario).
struct SweepRow {
    double sweep_value = 0.0;  // sigma^2, alpha or distance from the room axis
    double sigma2 = 0.0;
    int scenario = 0;
    double rmse = 0.0;  // m
    std::vector<BoundValue> bounds;
    int trials_used = 0;
    bool failed = false;
    std::string error;  // first error seen for this row
};

/// Bound kinds reported for a scenario, in CSV order.
std::vector<std::string> bound_kinds(Scenario scenario);

/// Monte Carlo RMSE and bounds at every noise level of `cfg.noise_sweep`.
std::vector<SweepRow> run_noise_sweep(const ExperimentConfig& cfg);
/// Every (decay rate, noise level) pair of `cfg.alpha_sweep`.
std::vector<SweepRow> run_alpha_sweep(const ExperimentConfig& cfg);
/// Every (waypoint, noise level) pair of `cfg.path_sweep`.
std::vector<SweepRow> run_path_sweep(const ExperimentConfig& cfg);
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, SweepKind kind);

/// CSV text with header `sweep_value,scenario,rmse_m,bound_kind,bound_m,trials,failed`.
std::string format_csv(std::span<const SweepRow> rows);

/// Creates the directory if needed and checks that it is writable. Throws
/// IoError otherwise.
void prepare_output_dir(const std::filesystem::path& dir);

struct OutputFiles {
    std::vector<std::filesystem::path> csv;
    std::vector<std::filesystem::path> svg;
    std::filesystem::path manifest;
};

/// Writes one CSV and one SVG per (sweep kind, noise level) group plus a JSON
/// run manifest into `cfg.output_dir`. Noise sweeps form a single group.
OutputFiles emit_outputs(std::span<const SweepRow> rows, const ExperimentConfig& cfg,
                         SweepKind kind, double wall_seconds);

}  // namespace vlp
