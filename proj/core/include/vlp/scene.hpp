#pragma once

#include "vlp/geometry.hpp"
#include "vlp/radiometry.hpp"

#include <optional>
#include <vector>

namespace vlp {

/// Everything the bounds need: deployment, receiver, ground truth, operating
/// time and noise.
struct Scene {
    std::vector<LedTransmitter> leds;
    ReceiverModel rx;
    Vec3 true_position = Vec3::Zero();
    double t_hours = 0.0;
    NoiseModel noise;

    /// Throws ConfigError on any invalid component.
    void validate() const;

    Scene with_decay_rate(double alpha) const;
    Scene with_noise(double sigma2) const;
    Scene with_true_position(const Vec3& p) const;
};

/// The common decay rate when all LEDs share one, otherwise empty.
std::optional<double> common_decay_rate(const std::vector<LedTransmitter>& leds);

/// 4 m x 4 m x 3 m room centred on the floor origin with a 3 x 3 grid of
/// downward 10 W Lambertian (m = 1) LEDs at 1 m pitch on the ceiling, an
/// upward 1 cm^2 photodiode with R_p = 1 at (0.5, 0.5, 0.85) m, decay rate
/// 1e-5 /h, t = 10000 h and sigma^2 = 1e-12 W^2 on every link.
Scene reference_scene();

}  // namespace vlp
