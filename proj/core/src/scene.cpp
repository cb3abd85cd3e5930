#include "vlp/scene.hpp"

#include "vlp/errors.hpp"

namespace vlp {

void Scene::validate() const {
    if (leds.empty()) throw ConfigError("scene has no LEDs");
    for (const auto& led : leds) vlp::validate(led);
    vlp::validate(rx);
    if (!true_position.allFinite()) throw ConfigError("true position must be finite");
    if (!(t_hours >= 0.0)) throw ConfigError("operating time must be non-negative");
    noise.validate(leds.size());
}

Scene Scene::with_decay_rate(double alpha) const {
    Scene out = *this;
    for (auto& led : out.leds) led.decay_rate = alpha;
    return out;
}

Scene Scene::with_noise(double sigma2) const {
    Scene out = *this;
    out.noise = NoiseModel::uniform(leds.size(), sigma2);
    return out;
}

Scene Scene::with_true_position(const Vec3& p) const {
    Scene out = *this;
    out.true_position = p;
    return out;
}

std::optional<double> common_decay_rate(const std::vector<LedTransmitter>& leds) {
    if (leds.empty()) return std::nullopt;
    const double alpha = leds.front().decay_rate;
    for (const auto& led : leds) {
        if (led.decay_rate != alpha) return std::nullopt;
    }
    return alpha;
}

Scene reference_scene() {
    Scene scene;
    for (double y : {1.0, 0.0, -1.0}) {
        for (double x : {-1.0, 0.0, 1.0}) {
            LedTransmitter led;
            led.position = Vec3(x, y, 3.0);
            led.orientation = Vec3(0.0, 0.0, -1.0);
            led.lambertian_order = 1.0;
            led.initial_power = 10.0;
            led.decay_rate = 1e-5;
            scene.leds.push_back(led);
        }
    }
    scene.rx.orientation = Vec3(0.0, 0.0, 1.0);
    scene.rx.pd_area = 1e-4;
    scene.rx.responsivity = 1.0;
    scene.rx.region = Box{Vec3(-2.0, -2.0, 0.0), Vec3(2.0, 2.0, 3.0)};
    scene.true_position = Vec3(0.5, 0.5, 0.85);
    scene.t_hours = 10000.0;
    scene.noise = NoiseModel::uniform(scene.leds.size(), 1e-12);
    return scene;
}

}  // namespace vlp
