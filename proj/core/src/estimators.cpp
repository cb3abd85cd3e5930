#include "vlp/estimators.hpp"

#include "vlp/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vlp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gains at one point, or false when the point is outside the formula's domain.
bool try_gains(std::span<const LedTransmitter> leds, const Vec3& p, const ReceiverModel& rx,
               std::span<double> out) {
    try {
        channel_coeffs(leds, p, rx, out);
    } catch (const DomainError&) {
        return false;
    }
    for (double h : out) {
        if (!std::isfinite(h)) return false;
    }
    return true;
}

double weighted_residual(std::span<const double> powers, std::span<const double> amplitude,
                         std::span<const double> gains, std::span<const double> variances) {
    double sum = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        const double r = powers[i] - amplitude[i] * gains[i];
        sum += r * r / (2.0 * variances[i]);
    }
    return sum;
}

// The g(l_R) ratio; NaN when the denominator vanishes.
double decay_ratio(std::span<const double> gains, const MeasurementSet& meas,
                   std::span<const LedTransmitter> leds, double responsivity,
                   const NoiseModel& noise) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        const double ph = leds[i].initial_power * gains[i];
        num += meas.powers[i] * ph / noise.variances[i];
        den += ph * ph / noise.variances[i];
    }
    den *= responsivity;
    if (!(den > 0.0) || !std::isfinite(den)) return std::numeric_limits<double>::quiet_NaN();
    return num / den;
}

double alpha_from_ratio(double g, double t_hours) {
    if (g > 0.0 && g < 1.0) return -std::log(g) / t_hours;
    return 0.0;
}

// Profiled objective for one point. Non-finite when the point must be skipped.
double profiled_objective(std::span<const double> gains, const MeasurementSet& meas,
                          std::span<const LedTransmitter> leds, double responsivity,
                          const NoiseModel& noise, double* alpha_out = nullptr) {
    const double g = decay_ratio(gains, meas, leds, responsivity, noise);
    if (std::isnan(g)) return kInf;
    const double alpha = alpha_from_ratio(g, meas.elapsed_hours);
    const double factor = std::exp(-alpha * meas.elapsed_hours) * responsivity;
    double sum = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        const double r = meas.powers[i] - factor * leds[i].initial_power * gains[i];
        sum += r * r / (2.0 * noise.variances[i]);
    }
    if (alpha_out) *alpha_out = alpha;
    return sum;
}

}  // namespace

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Mismatch: return "mismatch";
        case Scenario::ModelOnly: return "model_only";
        case Scenario::Full: return "full";
    }
    return "unknown";
}

Scenario scenario_from_int(int value) {
    if (value < 1 || value > 3) {
        throw ConfigError("scenario must be 1, 2 or 3, got " + std::to_string(value));
    }
    return static_cast<Scenario>(value);
}

double alpha_profile_from_gains(std::span<const double> gains, const MeasurementSet& meas,
                                std::span<const LedTransmitter> leds, const ReceiverModel& rx,
                                const NoiseModel& noise) {
    if (!(meas.elapsed_hours > 0.0)) {
        throw DomainError("decay rate is unidentifiable at zero operating time");
    }
    const double g = decay_ratio(gains, meas, leds, rx.responsivity, noise);
    if (std::isnan(g)) throw DomainError("all channel gains vanish at this position");
    return alpha_from_ratio(g, meas.elapsed_hours);
}

double alpha_profile(const Vec3& rx_pos, const MeasurementSet& meas,
                     std::span<const LedTransmitter> leds, const ReceiverModel& rx,
                     const NoiseModel& noise) {
    std::vector<double> gains(leds.size());
    channel_coeffs(leds, rx_pos, rx, gains);
    return alpha_profile_from_gains(gains, meas, leds, rx, noise);
}

PositionEstimator::PositionEstimator(std::vector<LedTransmitter> leds, ReceiverModel rx,
                                     SearchOptions options)
    : leds_(std::move(leds)), rx_(std::move(rx)), options_(options),
      lattice_(rx_.region, options.grid) {
    if (leds_.empty()) throw ConfigError("at least one LED is required");
    for (const auto& led : leds_) validate(led);
    validate(rx_);

    const std::size_t n = leds_.size();
    gain_table_.resize(lattice_.size() * n);
    for (std::size_t p = 0; p < lattice_.size(); ++p) {
        std::span<double> row(gain_table_.data() + p * n, n);
        if (!try_gains(leds_, lattice_.point(p), rx_, row)) {
            row[0] = std::numeric_limits<double>::quiet_NaN();
        }
    }
}

void PositionEstimator::check(const MeasurementSet& meas, const NoiseModel& noise) const {
    if (meas.led_count() != leds_.size()) {
        throw ConfigError("measurement set has " + std::to_string(meas.led_count()) +
                          " powers for " + std::to_string(leds_.size()) + " LEDs");
    }
    if (!(meas.elapsed_hours >= 0.0)) throw DomainError("operating time must be non-negative");
    noise.validate(leds_.size());
}

EstimateResult PositionEstimator::known_power_search(std::vector<double> amplitude,
                                                     const MeasurementSet& meas,
                                                     const NoiseModel& noise) const {
    const std::size_t n = leds_.size();
    std::vector<double> grid_values(lattice_.size());
    for (std::size_t p = 0; p < lattice_.size(); ++p) {
        std::span<const double> row(gain_table_.data() + p * n, n);
        grid_values[p] = std::isnan(row[0]) ? kInf
                                            : weighted_residual(meas.powers, amplitude, row,
                                                                noise.variances);
    }
    std::vector<double> scratch(n);
    const Objective f = [&](const Vec3& x) {
        if (!try_gains(leds_, x, rx_, scratch)) return kInf;
        return weighted_residual(meas.powers, amplitude, scratch, noise.variances);
    };
    const SearchResult r = refine_best(f, lattice_, grid_values, options_);
    return EstimateResult{r.point, std::nullopt, r.value, r.stats};
}

EstimateResult PositionEstimator::mml(const MeasurementSet& meas, const NoiseModel& noise) const {
    check(meas, noise);
    std::vector<double> amplitude(leds_.size());
    for (std::size_t i = 0; i < leds_.size(); ++i) {
        amplitude[i] = leds_[i].initial_power * rx_.responsivity;
    }
    return known_power_search(std::move(amplitude), meas, noise);
}

EstimateResult PositionEstimator::full(const MeasurementSet& meas, const NoiseModel& noise,
                                       std::optional<double> assumed_decay) const {
    check(meas, noise);
    std::vector<double> amplitude(leds_.size());
    for (std::size_t i = 0; i < leds_.size(); ++i) {
        LedTransmitter led = leds_[i];
        if (assumed_decay) led.decay_rate = *assumed_decay;
        amplitude[i] = transmit_power(led, meas.elapsed_hours) * rx_.responsivity;
    }
    return known_power_search(std::move(amplitude), meas, noise);
}

EstimateResult PositionEstimator::joint(const MeasurementSet& meas, const NoiseModel& noise) const {
    check(meas, noise);
    if (!(meas.elapsed_hours > 0.0)) {
        throw DomainError("decay rate is unidentifiable at zero operating time");
    }
    const std::size_t n = leds_.size();
    std::vector<double> grid_values(lattice_.size());
    for (std::size_t p = 0; p < lattice_.size(); ++p) {
        std::span<const double> row(gain_table_.data() + p * n, n);
        grid_values[p] = std::isnan(row[0])
                             ? kInf
                             : profiled_objective(row, meas, leds_, rx_.responsivity, noise);
    }
    std::vector<double> scratch(n);
    const Objective f = [&](const Vec3& x) {
        if (!try_gains(leds_, x, rx_, scratch)) return kInf;
        return profiled_objective(scratch, meas, leds_, rx_.responsivity, noise);
    };
    const SearchResult r = refine_best(f, lattice_, grid_values, options_);

    EstimateResult out{r.point, 0.0, r.value, r.stats};
    channel_coeffs(leds_, r.point, rx_, scratch);
    out.decay_rate_hat = alpha_profile_from_gains(scratch, meas, leds_, rx_, noise);
    return out;
}

EstimateResult PositionEstimator::estimate(const ScenarioKnowledge& knowledge,
                                           const MeasurementSet& meas,
                                           const NoiseModel& noise) const {
    switch (knowledge.tag) {
        case Scenario::Mismatch: return mml(meas, noise);
        case Scenario::ModelOnly: return joint(meas, noise);
        case Scenario::Full: return full(meas, noise, knowledge.assumed_decay);
    }
    throw ConfigError("unknown scenario");
}

EstimateResult mml_estimate(const MeasurementSet& meas, std::span<const LedTransmitter> leds,
                            const ReceiverModel& rx, const NoiseModel& noise,
                            const SearchOptions& options) {
    return PositionEstimator({leds.begin(), leds.end()}, rx, options).mml(meas, noise);
}

EstimateResult ml_estimate_joint(const MeasurementSet& meas, std::span<const LedTransmitter> leds,
                                 const ReceiverModel& rx, const NoiseModel& noise,
                                 const SearchOptions& options) {
    return PositionEstimator({leds.begin(), leds.end()}, rx, options).joint(meas, noise);
}

EstimateResult ml_estimate_full(const MeasurementSet& meas, std::span<const LedTransmitter> leds,
                                const ReceiverModel& rx, const NoiseModel& noise,
                                const SearchOptions& options) {
    return PositionEstimator({leds.begin(), leds.end()}, rx, options).full(meas, noise);
}

}  // namespace vlp
