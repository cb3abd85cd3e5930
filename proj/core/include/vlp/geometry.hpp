#pragma once

#include <Eigen/Dense>

#include <span>

namespace vlp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Axis-aligned box of admissible receiver positions, in meters.
struct Box {
    Vec3 lo = Vec3::Zero();
    Vec3 hi = Vec3::Zero();

    bool contains(const Vec3& p) const;
    Vec3 clamp(const Vec3& p) const;
    Vec3 extent() const { return hi - lo; }
    Vec3 center() const { return 0.5 * (lo + hi); }
    double volume() const;
    /// Grows the box by `margin` on every side.
    Box inflated(double margin) const;
};

struct LedTransmitter {
    Vec3 position = Vec3::Zero();
    Vec3 orientation{0.0, 0.0, -1.0};
    double lambertian_order = 1.0;
    double initial_power = 1.0;  // W
    double decay_rate = 0.0;     // 1/hour
};

struct ReceiverModel {
    Vec3 orientation{0.0, 0.0, 1.0};
    double pd_area = 1e-4;       // m^2
    double responsivity = 1.0;   // A/W
    Box region;
};

/// Channel gain together with its spatial gradient and Hessian with respect
/// to the receiver position.
struct ChannelDerivatives {
    double h = 0.0;
    Vec3 grad = Vec3::Zero();
    Mat3 hessian = Mat3::Zero();
};

/// Throws ConfigError when orientation is not unit-norm, power is not
/// positive, the decay rate is negative or the Lambertian order is below 1.
void validate(const LedTransmitter& led);
/// Throws ConfigError on a non-unit orientation, non-positive area or
/// responsivity, or a region with non-positive volume.
void validate(const ReceiverModel& rx);

/// Line-of-sight Lambertian gain
///
///   h = (m+1) A_R [(l_R - l_T)^T n_T]^m (l_T - l_R)^T n_R / (2 pi |l_R - l_T|^(m+3)).
///
/// Geometry behind either aperture is not clipped: the raw value (possibly
/// negative) is returned. Throws DomainError for coincident positions and for
/// a negative irradiance inner product combined with a fractional order.
double channel_coeff(const LedTransmitter& led, const Vec3& rx_pos, const ReceiverModel& rx);

Vec3 channel_grad(const LedTransmitter& led, const Vec3& rx_pos, const ReceiverModel& rx);

/// Full symmetric 3x3 matrix of second partials.
Mat3 channel_hessian(const LedTransmitter& led, const Vec3& rx_pos, const ReceiverModel& rx);

/// Gain, gradient and Hessian in one pass; the three single-purpose functions
/// above are thin wrappers around this.
ChannelDerivatives channel_derivatives(const LedTransmitter& led, const Vec3& rx_pos,
                                       const ReceiverModel& rx);

/// Gains of every LED at one position.
void channel_coeffs(std::span<const LedTransmitter> leds, const Vec3& rx_pos,
                    const ReceiverModel& rx, std::span<double> out);

}  // namespace vlp
