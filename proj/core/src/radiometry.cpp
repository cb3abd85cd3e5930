#include "vlp/radiometry.hpp"

#include "vlp/errors.hpp"

#include <cmath>
#include <string>

namespace vlp {

NoiseModel NoiseModel::uniform(std::size_t led_count, double sigma2) {
    return NoiseModel{std::vector<double>(led_count, sigma2)};
}

NoiseModel NoiseModel::scaled(double factor) const {
    NoiseModel out = *this;
    for (double& v : out.variances) v *= factor;
    return out;
}

void NoiseModel::validate(std::size_t led_count) const {
    if (variances.size() != led_count) {
        throw ConfigError("noise model has " + std::to_string(variances.size()) +
                          " variances for " + std::to_string(led_count) + " LEDs");
    }
    for (double v : variances) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("noise variances must be positive");
    }
}

double transmit_power(const LedTransmitter& led, double t_hours) {
    if (!(t_hours >= 0.0)) throw DomainError("operating time must be non-negative");
    if (led.decay_rate == 0.0 || t_hours == 0.0) return led.initial_power;
    return led.initial_power * std::exp(-led.decay_rate * t_hours);
}

std::vector<double> noiseless_received(std::span<const LedTransmitter> leds,
                                       const ReceiverModel& rx, const Vec3& rx_pos,
                                       double t_hours) {
    std::vector<double> out(leds.size());
    for (std::size_t i = 0; i < leds.size(); ++i) {
        out[i] = rx.responsivity * transmit_power(leds[i], t_hours) *
                 channel_coeff(leds[i], rx_pos, rx);
    }
    return out;
}

MeasurementSet add_noise(std::span<const double> noiseless, double t_hours,
                         const NoiseModel& noise, Rng& rng) {
    MeasurementSet m;
    m.elapsed_hours = t_hours;
    m.powers.resize(noiseless.size());
    for (std::size_t i = 0; i < noiseless.size(); ++i) {
        m.powers[i] = noiseless[i] + std::sqrt(noise.variances[i]) * rng.gaussian();
    }
    return m;
}

MeasurementSet simulate_measurements(std::span<const LedTransmitter> leds, const ReceiverModel& rx,
                                     const Vec3& rx_pos, double t_hours, const NoiseModel& noise,
                                     std::uint64_t seed) {
    noise.validate(leds.size());
    const std::vector<double> clean = noiseless_received(leds, rx, rx_pos, t_hours);
    Rng rng(seed);
    return add_noise(clean, t_hours, noise, rng);
}

}  // namespace vlp
