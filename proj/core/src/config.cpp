#include "vlp/config.hpp"

#include "vlp/errors.hpp"

#include <fstream>
#include <string>

namespace vlp {

namespace {

using nlohmann::json;

Vec3 vec3(const json& j, std::string_view field) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigError(std::string(field) + " must be an array of three numbers");
    }
    return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

json to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

std::vector<double> number_list(const json& j, std::string_view field) {
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array() || j.empty()) {
        throw ConfigError(std::string(field) + " must be a number or a non-empty array");
    }
    return j.get<std::vector<double>>();
}

void check_variances(const std::vector<double>& v, std::string_view where) {
    for (double s : v) {
        if (!(s > 0.0)) throw ConfigError(std::string(where) + ": sigma2_w2 values must be > 0");
    }
}

Scene parse_scene(const json& j) {
    Scene scene;
    const double default_power = j.value("initial_power_w", 1.0);
    const double default_decay = j.value("decay_rate_per_hour", 0.0);
    for (const json& jl : j.at("leds")) {
        LedTransmitter led;
        led.position = vec3(jl.at("position_m"), "position_m");
        if (jl.contains("orientation")) led.orientation = vec3(jl.at("orientation"), "orientation");
        led.lambertian_order = jl.value("lambertian_order", 1.0);
        led.initial_power = jl.value("initial_power_w", default_power);
        led.decay_rate = jl.value("decay_rate_per_hour", default_decay);
        scene.leds.push_back(led);
    }

    const json& jr = j.at("receiver");
    if (jr.contains("orientation")) scene.rx.orientation = vec3(jr.at("orientation"), "orientation");
    scene.rx.pd_area = jr.value("pd_area_m2", scene.rx.pd_area);
    scene.rx.responsivity = jr.value("responsivity_a_per_w", scene.rx.responsivity);
    scene.rx.region.lo = vec3(jr.at("region_min_m"), "region_min_m");
    scene.rx.region.hi = vec3(jr.at("region_max_m"), "region_max_m");

    scene.true_position = vec3(j.at("true_position_m"), "true_position_m");
    scene.t_hours = j.at("t_hours").get<double>();

    const std::vector<double> s2 = number_list(j.at("sigma2_w2"), "scene.sigma2_w2");
    if (s2.size() == 1) {
        scene.noise = NoiseModel::uniform(scene.leds.size(), s2.front());
    } else {
        scene.noise = NoiseModel{s2};
    }
    return scene;
}

}  // namespace

std::string_view sweep_kind_name(SweepKind kind) {
    switch (kind) {
        case SweepKind::Noise: return "noise";
        case SweepKind::Alpha: return "alpha";
        case SweepKind::Path: return "path";
    }
    return "unknown";
}

SweepKind sweep_kind_from_string(std::string_view name) {
    if (name == "noise") return SweepKind::Noise;
    if (name == "alpha") return SweepKind::Alpha;
    if (name == "path") return SweepKind::Path;
    throw ConfigError("unknown sweep kind '" + std::string(name) + "'");
}

std::vector<Vec3> PathSweep::waypoints() const {
    std::vector<Vec3> out;
    out.reserve(steps);
    for (int k = 0; k < steps; ++k) {
        const double f = steps == 1 ? 0.0 : double(k) / double(steps - 1);
        out.push_back(k == steps - 1 ? end : Vec3(start + f * (end - start)));
    }
    return out;
}

void ExperimentConfig::validate() const {
    scene.validate();
    if (scenarios.empty()) throw ConfigError("at least one scenario is required");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (search.grid.nx < 1 || search.grid.ny < 1 || search.grid.nz < 1) {
        throw ConfigError("search grid needs at least one point per axis");
    }
    if (!(search.step_tolerance > 0.0)) throw ConfigError("step tolerance must be positive");
    if (search.max_iterations < 0) throw ConfigError("max_iterations must be >= 0");
    if (noise_sweep) check_variances(noise_sweep->sigma2, "sweeps.noise");
    if (alpha_sweep) {
        check_variances(alpha_sweep->sigma2, "sweeps.alpha");
        for (double a : alpha_sweep->decay_rates) {
            if (!(a >= 0.0)) throw ConfigError("sweeps.alpha: decay rates must be >= 0");
        }
        if (alpha_sweep->decay_rates.empty()) throw ConfigError("sweeps.alpha: no decay rates");
    }
    if (path_sweep) {
        check_variances(path_sweep->sigma2, "sweeps.path");
        if (path_sweep->steps < 1) throw ConfigError("sweeps.path: steps must be >= 1");
        if (!scene.rx.region.contains(path_sweep->start) || !scene.rx.region.contains(path_sweep->end)) {
            throw ConfigError("sweeps.path: endpoints must lie inside the receiver region");
        }
    }
}

ExperimentConfig parse_config(const json& doc) {
    ExperimentConfig cfg;
    try {
        cfg.scene = parse_scene(doc.at("scene"));
        if (doc.contains("scenarios")) {
            cfg.scenarios.clear();
            for (int s : doc.at("scenarios").get<std::vector<int>>()) {
                cfg.scenarios.push_back(scenario_from_int(s));
            }
        }
        if (doc.contains("sweeps")) {
            const json& js = doc.at("sweeps");
            if (js.contains("noise")) {
                cfg.noise_sweep = NoiseSweep{number_list(js.at("noise").at("sigma2_w2"), "sweeps.noise")};
            }
            if (js.contains("alpha")) {
                const json& ja = js.at("alpha");
                cfg.alpha_sweep = AlphaSweep{
                    number_list(ja.at("decay_rates_per_hour"), "sweeps.alpha.decay_rates_per_hour"),
                    number_list(ja.at("sigma2_w2"), "sweeps.alpha.sigma2_w2")};
            }
            if (js.contains("path")) {
                const json& jp = js.at("path");
                PathSweep p;
                p.start = vec3(jp.at("start_m"), "start_m");
                p.end = vec3(jp.at("end_m"), "end_m");
                p.steps = jp.at("steps").get<int>();
                p.sigma2 = number_list(jp.at("sigma2_w2"), "sweeps.path.sigma2_w2");
                cfg.path_sweep = p;
            }
        }
        cfg.trials = doc.value("trials", cfg.trials);
        cfg.master_seed = doc.value("master_seed", cfg.master_seed);
        cfg.output_dir = doc.value("output_dir", cfg.output_dir.string());
        cfg.threads = doc.value("threads", cfg.threads);
        if (doc.contains("search")) {
            const json& jsr = doc.at("search");
            if (jsr.contains("grid")) {
                const auto g = jsr.at("grid").get<std::vector<int>>();
                if (g.size() != 3) throw ConfigError("search.grid must have three entries");
                cfg.search.grid = GridShape{g[0], g[1], g[2]};
            }
            cfg.search.step_tolerance = jsr.value("step_tolerance_m", cfg.search.step_tolerance);
            cfg.search.max_iterations = jsr.value("max_iterations", cfg.search.max_iterations);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    cfg.source = doc;
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse " + path.string() + ": " + e.what());
    }
    return parse_config(doc);
}

json reference_config_json() {
    const Scene scene = reference_scene();
    json leds = json::array();
    for (const auto& led : scene.leds) {
        leds.push_back({{"position_m", to_json(led.position)},
                        {"orientation", to_json(led.orientation)},
                        {"lambertian_order", led.lambertian_order}});
    }
    return {
        {"scene",
         {{"leds", leds},
          {"initial_power_w", 10.0},
          {"decay_rate_per_hour", 1e-5},
          {"receiver",
           {{"orientation", to_json(scene.rx.orientation)},
            {"pd_area_m2", scene.rx.pd_area},
            {"responsivity_a_per_w", scene.rx.responsivity},
            {"region_min_m", to_json(scene.rx.region.lo)},
            {"region_max_m", to_json(scene.rx.region.hi)}}},
          {"true_position_m", to_json(scene.true_position)},
          {"t_hours", scene.t_hours},
          {"sigma2_w2", 1e-12}}},
        {"scenarios", {1, 2, 3}},
        {"sweeps",
         {{"noise", {{"sigma2_w2", {1e-10, 1e-11, 1e-12, 1e-13, 1e-14}}}},
          {"alpha",
           {{"decay_rates_per_hour", {0.0, 2e-6, 4e-6, 6e-6, 8e-6, 1e-5}},
            {"sigma2_w2", {1e-11, 1e-12}}}},
          {"path",
           {{"start_m", {0.0, 0.0, 0.85}},
            {"end_m", {1.4, 1.4, 0.85}},
            {"steps", 15},
            {"sigma2_w2", {1e-12, 1e-11, 1e-10}}}}}},
        {"trials", 500},
        {"master_seed", 20240917},
        {"output_dir", "out"},
        {"search", {{"grid", {41, 41, 31}}, {"step_tolerance_m", 1e-5}, {"max_iterations", 200}}},
        {"threads", 0}};
}

}  // namespace vlp
