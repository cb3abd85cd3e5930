#pragma once

#include "vlp/geometry.hpp"
#include "vlp/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace vlp {

/// Per-LED measurement noise variances, W^2.
struct NoiseModel {
    std::vector<double> variances;

    static NoiseModel uniform(std::size_t led_count, double sigma2);
    NoiseModel scaled(double factor) const;
    std::size_t size() const { return variances.size(); }
    /// Throws ConfigError unless every variance is positive and finite and
    /// there is exactly one per LED.
    void validate(std::size_t led_count) const;
};

/// Received powers for one observation epoch. Powers may be negative.
struct MeasurementSet {
    std::vector<double> powers;  // W
    double elapsed_hours = 0.0;

    std::size_t led_count() const { return powers.size(); }
};

/// P0 exp(-alpha t). Throws DomainError for negative t.
double transmit_power(const LedTransmitter& led, double t_hours);

/// R_p P0_i exp(-alpha_i t) h_i(rx_pos) for every LED.
std::vector<double> noiseless_received(std::span<const LedTransmitter> leds,
                                       const ReceiverModel& rx, const Vec3& rx_pos,
                                       double t_hours);

/// Noiseless powers plus independent N(0, sigma_i^2) noise drawn in LED order
/// from Rng(seed). Identical arguments give bit-identical output.
MeasurementSet simulate_measurements(std::span<const LedTransmitter> leds, const ReceiverModel& rx,
                                     const Vec3& rx_pos, double t_hours, const NoiseModel& noise,
                                     std::uint64_t seed);

/// Adds noise to precomputed noiseless powers using an existing stream.
MeasurementSet add_noise(std::span<const double> noiseless, double t_hours,
                         const NoiseModel& noise, Rng& rng);

}  // namespace vlp
