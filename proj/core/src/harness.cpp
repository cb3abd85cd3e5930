#include "vlp/harness.hpp"

#include "vlp/bounds.hpp"
#include "vlp/errors.hpp"
#include "vlp/plot.hpp"
#include "vlp/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <thread>

#ifndef VLP_VERSION_STRING
#define VLP_VERSION_STRING "unknown"
#endif

namespace vlp {

namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

unsigned worker_count(const ExperimentConfig& cfg) {
    unsigned n = cfg.threads;
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return std::min<unsigned>(n, static_cast<unsigned>(cfg.trials));
}

// Runs body(i) for i in [0, count) on `threads` workers. Each index is
// processed exactly once; results must be written to per-index slots.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
}

std::vector<BoundValue> scenario_bounds(const Scene& scene, Scenario scenario) {
    const BoundReport r = bound_report(scene, scenario);
    if (scenario == Scenario::Mismatch) {
        return {{"lb", std::sqrt(r.lb->trace())}, {"mcrb", std::sqrt(r.mcrb->trace())}};
    }
    return {{"crb", std::sqrt(*r.crb_trace)}};
}

// Monte Carlo at one sweep point. Every scenario sees the same measurement
// sets: trial seeds depend on (master seed, point index, trial index) only.
std::vector<SweepRow> evaluate_point(const ExperimentConfig& cfg, const PositionEstimator& estimator,
                                     const Scene& scene, std::uint64_t point_index,
                                     double sweep_value) {
    const std::size_t ns = cfg.scenarios.size();
    const std::size_t trials = static_cast<std::size_t>(cfg.trials);

    std::vector<SweepRow> rows(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        SweepRow& row = rows[s];
        row.sweep_value = sweep_value;
        row.sigma2 = scene.noise.variances.front();
        row.scenario = static_cast<int>(cfg.scenarios[s]);
        try {
            row.bounds = scenario_bounds(scene, cfg.scenarios[s]);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
            for (const auto& kind : bound_kinds(cfg.scenarios[s])) row.bounds.push_back({kind, kNaN});
        }
    }

    const std::vector<double> clean =
        noiseless_received(scene.leds, scene.rx, scene.true_position, scene.t_hours);
    std::vector<double> sq_error(trials * ns, kNaN);
    std::vector<std::string> errors(trials * ns);

    parallel_for(trials, worker_count(cfg), [&](std::size_t trial) {
        Rng rng(derive_seed(cfg.master_seed, {point_index, trial}));
        const MeasurementSet meas = add_noise(clean, scene.t_hours, scene.noise, rng);
        for (std::size_t s = 0; s < ns; ++s) {
            try {
                const EstimateResult r =
                    estimator.estimate(ScenarioKnowledge{cfg.scenarios[s], std::nullopt}, meas,
                                       scene.noise);
                sq_error[trial * ns + s] = (r.position - scene.true_position).squaredNorm();
            } catch (const std::exception& e) {
                errors[trial * ns + s] = e.what();
            }
        }
    });

    for (std::size_t s = 0; s < ns; ++s) {
        SweepRow& row = rows[s];
        double sum = 0.0;
        int used = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            const double e = sq_error[t * ns + s];
            if (std::isnan(e)) {
                row.failed = true;
                if (row.error.empty()) row.error = errors[t * ns + s];
                continue;
            }
            sum += e;
            ++used;
        }
        row.trials_used = used;
        row.rmse = used > 0 ? std::sqrt(sum / used) : kNaN;
    }
    return rows;
}

void append(std::vector<SweepRow>& out, std::vector<SweepRow> rows) {
    out.insert(out.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
}

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string sigma_tag(double sigma2) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", sigma2);
    return buf;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

std::string plot_for(std::span<const SweepRow> rows, SweepKind kind, const std::string& title) {
    std::string x_label;
    switch (kind) {
        case SweepKind::Noise: x_label = "10 log10(1/sigma^2) [dB]"; break;
        case SweepKind::Alpha: x_label = "decay rate alpha [1/h]"; break;
        case SweepKind::Path: x_label = "distance to room axis [m]"; break;
    }
    auto x_of = [kind](const SweepRow& r) {
        return kind == SweepKind::Noise ? 10.0 * std::log10(1.0 / r.sweep_value) : r.sweep_value;
    };

    std::map<std::string, SvgLinePlot::Series> series;
    std::vector<std::string> order;
    auto push = [&](const std::string& key, bool dashed, double x, double y) {
        auto [it, inserted] = series.try_emplace(key);
        if (inserted) {
            it->second.label = key;
            it->second.dashed = dashed;
            order.push_back(key);
        }
        it->second.x.push_back(x);
        it->second.y.push_back(y);
    };
    for (const SweepRow& r : rows) {
        const std::string s = "S" + std::to_string(r.scenario);
        push(s + " RMSE", false, x_of(r), r.rmse);
        for (const BoundValue& b : r.bounds) push(s + " sqrt " + b.kind, true, x_of(r), b.value_m);
    }

    SvgLinePlot plot(title, x_label, "RMSE / bound [m]", true);
    for (const auto& key : order) plot.add_series(series.at(key));
    return plot.render();
}

}  // namespace

std::vector<std::string> bound_kinds(Scenario scenario) {
    if (scenario == Scenario::Mismatch) return {"lb", "mcrb"};
    return {"crb"};
}

std::vector<SweepRow> run_noise_sweep(const ExperimentConfig& cfg) {
    if (!cfg.noise_sweep) throw ConfigError("config has no noise sweep");
    const PositionEstimator estimator(cfg.scene.leds, cfg.scene.rx, cfg.search);
    std::vector<SweepRow> out;
    std::uint64_t index = 0;
    for (double s2 : cfg.noise_sweep->sigma2) {
        append(out, evaluate_point(cfg, estimator, cfg.scene.with_noise(s2), index++, s2));
    }
    return out;
}

std::vector<SweepRow> run_alpha_sweep(const ExperimentConfig& cfg) {
    if (!cfg.alpha_sweep) throw ConfigError("config has no alpha sweep");
    std::vector<SweepRow> out;
    std::uint64_t index = 0;
    for (double alpha : cfg.alpha_sweep->decay_rates) {
        const Scene base = cfg.scene.with_decay_rate(alpha);
        // Scenario 3 reads the decay rates from the estimator's LEDs.
        const PositionEstimator estimator(base.leds, base.rx, cfg.search);
        for (double s2 : cfg.alpha_sweep->sigma2) {
            append(out, evaluate_point(cfg, estimator, base.with_noise(s2), index++, alpha));
        }
    }
    return out;
}

std::vector<SweepRow> run_path_sweep(const ExperimentConfig& cfg) {
    if (!cfg.path_sweep) throw ConfigError("config has no path sweep");
    const PositionEstimator estimator(cfg.scene.leds, cfg.scene.rx, cfg.search);
    const Vec3 axis = cfg.scene.rx.region.center();
    std::vector<SweepRow> out;
    std::uint64_t index = 0;
    for (const Vec3& p : cfg.path_sweep->waypoints()) {
        const double distance = std::hypot(p.x() - axis.x(), p.y() - axis.y());
        const Scene at = cfg.scene.with_true_position(p);
        for (double s2 : cfg.path_sweep->sigma2) {
            append(out, evaluate_point(cfg, estimator, at.with_noise(s2), index++, distance));
        }
    }
    return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, SweepKind kind) {
    switch (kind) {
        case SweepKind::Noise: return run_noise_sweep(cfg);
        case SweepKind::Alpha: return run_alpha_sweep(cfg);
        case SweepKind::Path: return run_path_sweep(cfg);
    }
    throw ConfigError("unknown sweep kind");
}

std::string format_csv(std::span<const SweepRow> rows) {
    std::string out = "sweep_value,scenario,rmse_m,bound_kind,bound_m,trials,failed\n";
    for (const SweepRow& r : rows) {
        for (const BoundValue& b : r.bounds) {
            out += number(r.sweep_value) + ',' + std::to_string(r.scenario) + ',' + number(r.rmse) +
                   ',' + b.kind + ',' + number(b.value_m) + ',' + std::to_string(r.trials_used) +
                   ',' + (r.failed ? "1" : "0") + '\n';
        }
    }
    return out;
}

void prepare_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string());
    }
    const fs::path probe = dir / ".vlp_write_probe";
    {
        std::ofstream out(probe);
        if (!out || !(out << "ok")) throw IoError("output directory is not writable: " + dir.string());
    }
    fs::remove(probe, ec);
}

OutputFiles emit_outputs(std::span<const SweepRow> rows, const ExperimentConfig& cfg,
                         SweepKind kind, double wall_seconds) {
    if (rows.empty()) throw ConfigError("no sweep rows to write");
    prepare_output_dir(cfg.output_dir);
    const std::string name(sweep_kind_name(kind));

    // Group rows by noise level, keeping first-seen order.
    std::vector<double> levels;
    for (const SweepRow& r : rows) {
        if (kind != SweepKind::Noise &&
            std::find(levels.begin(), levels.end(), r.sigma2) == levels.end()) {
            levels.push_back(r.sigma2);
        }
    }
    if (kind == SweepKind::Noise) levels.push_back(kNaN);

    OutputFiles files;
    for (double level : levels) {
        std::vector<SweepRow> group;
        for (const SweepRow& r : rows) {
            if (std::isnan(level) || r.sigma2 == level) group.push_back(r);
        }
        const std::string stem = std::isnan(level) ? name : name + "_sigma2_" + sigma_tag(level);
        const fs::path csv = cfg.output_dir / (stem + ".csv");
        const fs::path svg = cfg.output_dir / (stem + ".svg");
        write_file(csv, format_csv(group));
        std::string title = name + " sweep";
        if (!std::isnan(level)) title += ", sigma^2 = " + sigma_tag(level) + " W^2";
        write_file(svg, plot_for(group, kind, title));
        files.csv.push_back(csv);
        files.svg.push_back(svg);
    }

    nlohmann::json manifest = {
        {"tool", "vlp"},
        {"version", VLP_VERSION_STRING},
        {"sweep_kind", name},
        {"master_seed", cfg.master_seed},
        {"trials", cfg.trials},
        {"wall_time_s", wall_seconds},
        {"config", cfg.source},
    };
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& p : files.csv) outputs.push_back(p.filename().string());
    for (const auto& p : files.svg) outputs.push_back(p.filename().string());
    manifest["outputs"] = outputs;
    files.manifest = cfg.output_dir / (name + "_manifest.json");
    write_file(files.manifest, manifest.dump(2) + "\n");
    return files;
}

}  // namespace vlp
