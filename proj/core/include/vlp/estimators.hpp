#pragma once

#include "vlp/geometry.hpp"
#include "vlp/radiometry.hpp"
#include "vlp/search.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace vlp {

/// What the receiver knows about LED power decay.
enum class Scenario : int {
    Mismatch = 1,   // assumes no decay
    ModelOnly = 2,  // knows the exponential law, common rate unknown
    Full = 3,       // knows the law and every rate
};

std::string_view scenario_name(Scenario s);
/// Maps 1/2/3 to a Scenario; throws ConfigError otherwise.
Scenario scenario_from_int(int value);

struct ScenarioKnowledge {
    Scenario tag = Scenario::Full;
    /// Common decay rate assumed by Full; per-LED rates are used when empty.
    /// Ignored by the other scenarios.
    std::optional<double> assumed_decay;
};

struct EstimateResult {
    Vec3 position = Vec3::Zero();
    std::optional<double> decay_rate_hat;  // ModelOnly only
    double objective_value = 0.0;
    SearchStats search_stats;
};

/// Closed-form decay-rate profile for a candidate position:
///
///   g = sum_i P_i P0_i h_i / s_i^2  /  (R_p sum_i (P0_i h_i)^2 / s_i^2),
///   alpha_hat = -log(g) / t  if 0 < g < 1, else 0.
///
/// Throws DomainError when t = 0 or every gain is zero.
double alpha_profile(const Vec3& rx_pos, const MeasurementSet& meas,
                     std::span<const LedTransmitter> leds, const ReceiverModel& rx,
                     const NoiseModel& noise);

/// Same as alpha_profile with the gains already evaluated.
double alpha_profile_from_gains(std::span<const double> gains, const MeasurementSet& meas,
                                std::span<const LedTransmitter> leds, const ReceiverModel& rx,
                                const NoiseModel& noise);

/// Position estimator for one LED deployment and receiver.
///
/// Channel gains on the coarse search grid are computed once at construction
/// and shared by all scenarios and measurement sets. The object is immutable
/// afterwards, so concurrent estimate calls are safe.
class PositionEstimator {
public:
    PositionEstimator(std::vector<LedTransmitter> leds, ReceiverModel rx, SearchOptions options = {});

    /// Scenario 1: argmin sum_i (P_i - P0_i R_p h_i)^2 / (2 s_i^2).
    EstimateResult mml(const MeasurementSet& meas, const NoiseModel& noise) const;
    /// Scenario 2: the same least squares with the decay factor profiled out
    /// through alpha_profile. Requires elapsed time > 0.
    EstimateResult joint(const MeasurementSet& meas, const NoiseModel& noise) const;
    /// Scenario 3: decay factor exp(-alpha_i t) known.
    EstimateResult full(const MeasurementSet& meas, const NoiseModel& noise,
                        std::optional<double> assumed_decay = std::nullopt) const;

    EstimateResult estimate(const ScenarioKnowledge& knowledge, const MeasurementSet& meas,
                            const NoiseModel& noise) const;

    std::span<const LedTransmitter> leds() const { return leds_; }
    const ReceiverModel& receiver() const { return rx_; }
    const Lattice& lattice() const { return lattice_; }

private:
    void check(const MeasurementSet& meas, const NoiseModel& noise) const;
    EstimateResult known_power_search(std::vector<double> amplitude, const MeasurementSet& meas,
                                      const NoiseModel& noise) const;

    std::vector<LedTransmitter> leds_;
    ReceiverModel rx_;
    SearchOptions options_;
    Lattice lattice_;
    std::vector<double> gain_table_;  // lattice point major; NaN marks inadmissible
};

EstimateResult mml_estimate(const MeasurementSet& meas, std::span<const LedTransmitter> leds,
                            const ReceiverModel& rx, const NoiseModel& noise,
                            const SearchOptions& options = {});
EstimateResult ml_estimate_joint(const MeasurementSet& meas, std::span<const LedTransmitter> leds,
                                 const ReceiverModel& rx, const NoiseModel& noise,
                                 const SearchOptions& options = {});
EstimateResult ml_estimate_full(const MeasurementSet& meas, std::span<const LedTransmitter> leds,
                                const ReceiverModel& rx, const NoiseModel& noise,
                                const SearchOptions& options = {});

}  // namespace vlp
