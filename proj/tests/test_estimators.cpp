#include "test_support.hpp"

#include "vlp/bounds.hpp"
#include "vlp/errors.hpp"
#include "vlp/estimators.hpp"
#include "vlp/scene.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace vlp {
namespace {

MeasurementSet noiseless(const Scene& s) {
    return MeasurementSet{noiseless_received(s.leds, s.rx, s.true_position, s.t_hours), s.t_hours};
}

class EstimatorTest : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        scene_ = new Scene(reference_scene());
        estimator_ = new PositionEstimator(scene_->leds, scene_->rx);
    }
    static void TearDownTestSuite() {
        delete estimator_;
        delete scene_;
    }
    static Scene* scene_;
    static PositionEstimator* estimator_;
};

Scene* EstimatorTest::scene_ = nullptr;
PositionEstimator* EstimatorTest::estimator_ = nullptr;

TEST_F(EstimatorTest, MmlRecoversTruthWithoutDecayOrNoise) {
    const Scene s = scene_->with_decay_rate(0.0);
    const EstimateResult r = estimator_->mml(noiseless(s), s.noise);
    EXPECT_LT((r.position - s.true_position).norm(), 1e-4);
    EXPECT_FALSE(r.decay_rate_hat.has_value());
    EXPECT_LT(r.objective_value, 1e-6);
}

TEST_F(EstimatorTest, MmlConvergesToPseudoTruePoint) {
    Scene s = *scene_;
    s.t_hours = 5e4;
    const PseudoTrueResult pt = pseudo_true(s);
    const EstimateResult r = estimator_->mml(noiseless(s), s.noise);
    EXPECT_LT((r.position - pt.point).norm(), 1e-3);
}

TEST_F(EstimatorTest, MmlToleratesImpossibleMeasurements) {
    MeasurementSet m{std::vector<double>(9, -1.0), 1e4};
    const EstimateResult r = estimator_->mml(m, scene_->noise);
    EXPECT_TRUE(std::isfinite(r.objective_value));
    EXPECT_TRUE(scene_->rx.region.contains(r.position));
}

TEST_F(EstimatorTest, JointRecoversPositionAndDecay) {
    const EstimateResult r = estimator_->joint(noiseless(*scene_), scene_->noise);
    EXPECT_LT((r.position - scene_->true_position).norm(), 1e-4);
    ASSERT_TRUE(r.decay_rate_hat.has_value());
    EXPECT_NEAR(*r.decay_rate_hat, 1e-5, 1e-8);
}

TEST_F(EstimatorTest, JointClampsDecayAtZero) {
    const Scene s = scene_->with_decay_rate(0.0);
    const EstimateResult r = estimator_->joint(noiseless(s), s.noise);
    EXPECT_LT((r.position - s.true_position).norm(), 1e-4);
    EXPECT_EQ(*r.decay_rate_hat, 0.0);
}

TEST_F(EstimatorTest, JointNeedsPositiveTime) {
    Scene s = *scene_;
    s.t_hours = 0.0;
    EXPECT_THROW(estimator_->joint(noiseless(s), s.noise), DomainError);
}

TEST_F(EstimatorTest, FullRecoversTruthAtAnyDecay) {
    for (double alpha : {0.0, 1e-5, 3e-5}) {
        for (double t : {1e3, 5e4}) {
            Scene s = scene_->with_decay_rate(alpha);
            s.t_hours = t;
            const PositionEstimator est(s.leds, s.rx);
            const EstimateResult r = est.full(noiseless(s), s.noise);
            EXPECT_LT((r.position - s.true_position).norm(), 1e-4) << alpha << " " << t;
        }
    }
}

TEST_F(EstimatorTest, FullWithAssumedDecayOverridesLedRates) {
    const Scene s = *scene_;
    const PositionEstimator undecayed(s.with_decay_rate(0.0).leds, s.rx);
    const EstimateResult a = undecayed.full(noiseless(s), s.noise, 1e-5);
    const EstimateResult b = estimator_->full(noiseless(s), s.noise);
    EXPECT_EQ(a.position, b.position);
}

TEST_F(EstimatorTest, MismatchAndFullCoincideWithoutDecay) {
    const Scene s = scene_->with_decay_rate(0.0);
    const PositionEstimator est(s.leds, s.rx);
    for (std::uint64_t k = 0; k < 10; ++k) {
        const MeasurementSet m =
            simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours, s.noise.scaled(10.0), k);
        const EstimateResult a = est.mml(m, s.noise);
        const EstimateResult b = est.full(m, s.noise);
        EXPECT_EQ(a.position, b.position);
        EXPECT_EQ(a.objective_value, b.objective_value);
    }
}

TEST_F(EstimatorTest, DispatchMatchesDirectCalls) {
    const MeasurementSet m = noiseless(*scene_);
    const auto& n = scene_->noise;
    EXPECT_EQ(estimator_->estimate({Scenario::Mismatch, {}}, m, n).position,
              estimator_->mml(m, n).position);
    EXPECT_EQ(estimator_->estimate({Scenario::ModelOnly, {}}, m, n).position,
              estimator_->joint(m, n).position);
    EXPECT_EQ(estimator_->estimate({Scenario::Full, {}}, m, n).position,
              estimator_->full(m, n).position);
}

TEST_F(EstimatorTest, RejectsMismatchedInputs) {
    MeasurementSet m = noiseless(*scene_);
    m.powers.pop_back();
    EXPECT_THROW(estimator_->mml(m, scene_->noise), ConfigError);
    EXPECT_THROW(estimator_->mml(noiseless(*scene_), NoiseModel::uniform(9, -1.0)), ConfigError);
    ReceiverModel flat = scene_->rx;
    flat.region.hi.z() = flat.region.lo.z();
    EXPECT_THROW(PositionEstimator(scene_->leds, flat), ConfigError);
    EXPECT_THROW(scenario_from_int(4), ConfigError);
    EXPECT_EQ(scenario_from_int(2), Scenario::ModelOnly);
}

TEST(AlphaProfile, InvertsTheLogarithm) {
    Scene s = reference_scene();
    const MeasurementSet m = noiseless(s);
    EXPECT_NEAR(alpha_profile(s.true_position, m, s.leds, s.rx, s.noise), 1e-5, 1e-15);

    // Scale a no-decay measurement by e^{-0.1} so that g = e^{-0.1} exactly.
    const Scene fresh = s.with_decay_rate(0.0);
    MeasurementSet scaled = noiseless(fresh);
    for (double& p : scaled.powers) p *= std::exp(-0.1);
    EXPECT_NEAR(alpha_profile(s.true_position, scaled, s.leds, s.rx, s.noise), 1e-5, 1e-15);
}

TEST(AlphaProfile, ClampsWhenRatioNotBelowOne) {
    const Scene s = reference_scene().with_decay_rate(0.0);
    MeasurementSet m = noiseless(s);
    EXPECT_EQ(alpha_profile(s.true_position, m, s.leds, s.rx, s.noise), 0.0);
    for (double& p : m.powers) p *= 1.5;
    EXPECT_EQ(alpha_profile(s.true_position, m, s.leds, s.rx, s.noise), 0.0);
    for (double& p : m.powers) p = -p;
    EXPECT_EQ(alpha_profile(s.true_position, m, s.leds, s.rx, s.noise), 0.0);
}

TEST(AlphaProfile, DomainErrors) {
    const Scene s = reference_scene();
    MeasurementSet m = noiseless(s);
    m.elapsed_hours = 0.0;
    EXPECT_THROW(alpha_profile(s.true_position, m, s.leds, s.rx, s.noise), DomainError);
    const std::vector<double> zeros(9, 0.0);
    EXPECT_THROW(alpha_profile_from_gains(zeros, noiseless(s), s.leds, s.rx, s.noise), DomainError);
}

TEST(AlphaProfile, AttainsOneDimensionalOptimum) {
    const Scene s = reference_scene();
    Rng rng(11);
    std::vector<double> h(9);
    for (int trial = 0; trial < 30; ++trial) {
        const Vec3 p = testing::random_room_point(rng);
        const MeasurementSet m = simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours,
                                                       s.noise.scaled(100.0), 1000 + trial);
        channel_coeffs(s.leds, p, s.rx, h);
        const auto objective = [&](double alpha) {
            double sum = 0.0;
            for (int i = 0; i < 9; ++i) {
                const double r = m.powers[i] - s.leds[i].initial_power *
                                                   std::exp(-alpha * m.elapsed_hours) * h[i];
                sum += r * r / (2.0 * s.noise.variances[i]);
            }
            return sum;
        };
        const double closed = objective(alpha_profile(p, m, s.leds, s.rx, s.noise));
        double brute = objective(0.0);
        for (int k = 1; k < 10000; ++k) brute = std::min(brute, objective(k * 1e-8));
        EXPECT_LE(closed, brute * (1.0 + 1e-8)) << "trial " << trial;
    }
}

TEST_F(EstimatorTest, FullEstimatorIsEfficientAtLowNoise) {
    const Scene s = scene_->with_noise(1e-13);
    const double crb = crb_scenario3(s, s.true_position);
    const int trials = 500;
    double se = 0.0;
    for (int k = 0; k < trials; ++k) {
        const MeasurementSet m = simulate_measurements(s.leds, s.rx, s.true_position, s.t_hours,
                                                       s.noise, derive_seed(5, {std::uint64_t(k)}));
        se += (estimator_->full(m, s.noise).position - s.true_position).squaredNorm();
    }
    const double mse = se / trials;
    EXPECT_NEAR(mse / crb, 1.0, 0.2);
    EXPECT_NEAR(std::sqrt(mse / crb), 1.0, 0.1);
}

}  // namespace
}  // namespace vlp
