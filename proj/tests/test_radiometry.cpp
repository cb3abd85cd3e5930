#include "vlp/errors.hpp"
#include "vlp/radiometry.hpp"
#include "vlp/rng.hpp"
#include "vlp/scene.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

namespace vlp {
namespace {

TEST(TransmitPower, DecaysExponentially) {
    LedTransmitter led;
    led.initial_power = 10.0;
    led.decay_rate = 1e-5;
    EXPECT_NEAR(transmit_power(led, 1e4), 9.0483741803595957, 1e-14);
    EXPECT_EQ(transmit_power(led, 0.0), 10.0);
    led.decay_rate = 0.0;
    EXPECT_EQ(transmit_power(led, 123456.0), 10.0);
    EXPECT_THROW(transmit_power(led, -1.0), DomainError);
}

TEST(TransmitPower, MonotoneInTime) {
    LedTransmitter led;
    led.initial_power = 10.0;
    led.decay_rate = 1e-5;
    double prev = transmit_power(led, 0.0);
    for (double t = 1000.0; t <= 1e5; t += 1000.0) {
        const double p = transmit_power(led, t);
        EXPECT_LT(p, prev);
        prev = p;
    }
}

TEST(NoiselessReceived, NoDecayIsResponsivityTimesPowerTimesGain) {
    const Scene s = reference_scene().with_decay_rate(0.0);
    const Vec3 p(0.3, -0.7, 1.2);
    const auto r = noiseless_received(s.leds, s.rx, p, 50000.0);
    ASSERT_EQ(r.size(), s.leds.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double expected =
            s.rx.responsivity * s.leds[i].initial_power * channel_coeff(s.leds[i], p, s.rx);
        EXPECT_DOUBLE_EQ(r[i], expected);
    }
}

TEST(NoiselessReceived, CentreLedAfterTenThousandHours) {
    const Scene s = reference_scene();
    ASSERT_EQ(s.leds[4].position, Vec3(0, 0, 3));
    const auto r = noiseless_received(s.leds, s.rx, Vec3(0.5, 0.5, 0.85), 1e4);
    EXPECT_NEAR(r[4], 5.073803746442453e-05, 1e-12 * 5.07e-5);
}

TEST(SimulateMeasurements, VanishingNoiseReturnsMean) {
    const Scene s = reference_scene();
    const auto clean = noiseless_received(s.leds, s.rx, s.true_position, s.t_hours);
    const auto m = simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours,
                                         NoiseModel::uniform(9, 1e-300), 42);
    EXPECT_EQ(m.elapsed_hours, s.t_hours);
    for (std::size_t i = 0; i < clean.size(); ++i) EXPECT_NEAR(m.powers[i], clean[i], 1e-10);
}

TEST(SimulateMeasurements, SameSeedSameOutput) {
    const Scene s = reference_scene();
    const auto a = simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours, s.noise, 99);
    const auto b = simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours, s.noise, 99);
    const auto c = simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours, s.noise, 100);
    EXPECT_EQ(a.powers, b.powers);
    EXPECT_NE(a.powers, c.powers);
}

TEST(SimulateMeasurements, NoiseMomentsAndIndependence) {
    const Scene s = reference_scene();
    const auto clean = noiseless_received(s.leds, s.rx, s.true_position, s.t_hours);
    NoiseModel noise = NoiseModel::uniform(9, 1e-12);
    noise.variances[3] = 4e-12;
    const int n = 40000;
    Eigen::MatrixXd eta(n, 9);
    Rng rng(2024);
    for (int k = 0; k < n; ++k) {
        const auto m = add_noise(clean, s.t_hours, noise, rng);
        for (int i = 0; i < 9; ++i) eta(k, i) = (m.powers[i] - clean[i]) / std::sqrt(noise.variances[i]);
    }
    const Eigen::RowVectorXd mean = eta.colwise().mean();
    const Eigen::MatrixXd centred = eta.rowwise() - mean;
    const Eigen::MatrixXd cov = centred.transpose() * centred / (n - 1);
    for (int i = 0; i < 9; ++i) {
        EXPECT_LT(std::abs(mean(i)), 4.0 / std::sqrt(n));
        EXPECT_NEAR(cov(i, i), 1.0, 0.03);
        for (int j = 0; j < i; ++j) EXPECT_LT(std::abs(cov(i, j)), 0.02);
    }
}

TEST(NoiseModel, Validation) {
    EXPECT_NO_THROW(NoiseModel::uniform(3, 1e-12).validate(3));
    EXPECT_THROW(NoiseModel::uniform(2, 1e-12).validate(3), ConfigError);
    EXPECT_THROW(NoiseModel::uniform(3, 0.0).validate(3), ConfigError);
    const NoiseModel scaled = NoiseModel::uniform(2, 1e-12).scaled(10.0);
    EXPECT_DOUBLE_EQ(scaled.variances[1], 1e-11);
}

TEST(Rng, SeedDerivationSeparatesStreams) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t p = 0; p < 20; ++p)
        for (std::uint64_t t = 0; t < 50; ++t) seen.insert(derive_seed(7, {p, t}));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(derive_seed(7, {1, 2}), derive_seed(7, {1, 2}));
    EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(8, {1, 2}));
    EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(7, {2, 1}));
}

TEST(Rng, UniformIsOpenInterval) {
    Rng rng(1);
    double lo = 1.0, hi = 0.0, sum = 0.0;
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    EXPECT_NEAR(sum / n, 0.5, 0.005);
    EXPECT_LT(lo, 1e-3);
    EXPECT_GT(hi, 1.0 - 1e-3);
}

}  // namespace
}  // namespace vlp
