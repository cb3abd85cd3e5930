#include "vlp/geometry.hpp"

#include "vlp/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vlp {

namespace {

constexpr double kUnitTolerance = 1e-12;

bool is_integer(double x) { return std::floor(x) == x; }

// s^e where s may be negative only for integral exponents. The caller has
// already rejected negative s with a fractional order.
double signed_pow(double s, double e) {
    if (e == 0.0) return 1.0;
    if (e == 1.0) return s;
    return std::pow(s, e);
}

struct Offsets {
    Vec3 d;        // l_R - l_T
    double dist;   // |d|
    double s;      // (l_R - l_T)^T n_T
    double w;      // (l_T - l_R)^T n_R
};

Offsets offsets(const LedTransmitter& led, const Vec3& rx_pos, const ReceiverModel& rx) {
    Offsets o;
    o.d = rx_pos - led.position;
    o.dist = o.d.norm();
    if (!(o.dist > 0.0)) {
        throw DomainError("receiver position coincides with LED position");
    }
    o.s = o.d.dot(led.orientation);
    o.w = -o.d.dot(rx.orientation);
    if (o.s < 0.0 && !is_integer(led.lambertian_order)) {
        throw DomainError("fractional Lambertian order " + std::to_string(led.lambertian_order) +
                          " with receiver behind the LED plane");
    }
    return o;
}

}  // namespace

bool Box::contains(const Vec3& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
}

Vec3 Box::clamp(const Vec3& p) const { return p.cwiseMax(lo).cwiseMin(hi); }

double Box::volume() const {
    const Vec3 e = extent();
    if ((e.array() <= 0.0).any()) return 0.0;
    return e.prod();
}

Box Box::inflated(double margin) const {
    return Box{(lo.array() - margin).matrix(), (hi.array() + margin).matrix()};
}

void validate(const LedTransmitter& led) {
    if (!led.position.allFinite()) throw ConfigError("LED position must be finite");
    if (std::abs(led.orientation.norm() - 1.0) > kUnitTolerance) {
        throw ConfigError("LED orientation must be a unit vector");
    }
    if (!(led.lambertian_order >= 1.0)) throw ConfigError("Lambertian order must be >= 1");
    if (!(led.initial_power > 0.0)) throw ConfigError("LED initial power must be positive");
    if (!(led.decay_rate >= 0.0)) throw ConfigError("LED decay rate must be non-negative");
}

void validate(const ReceiverModel& rx) {
    if (std::abs(rx.orientation.norm() - 1.0) > kUnitTolerance) {
        throw ConfigError("receiver orientation must be a unit vector");
    }
    if (!(rx.pd_area > 0.0)) throw ConfigError("photodiode area must be positive");
    if (!(rx.responsivity > 0.0)) throw ConfigError("responsivity must be positive");
    if (!rx.region.lo.allFinite() || !rx.region.hi.allFinite() || !(rx.region.volume() > 0.0)) {
        throw ConfigError("receiver region must be a finite box with positive volume");
    }
}

double channel_coeff(const LedTransmitter& led, const Vec3& rx_pos, const ReceiverModel& rx) {
    const Offsets o = offsets(led, rx_pos, rx);
    const double m = led.lambertian_order;
    return (m + 1.0) * rx.pd_area * signed_pow(o.s, m) * o.w /
           (2.0 * std::numbers::pi * std::pow(o.dist, m + 3.0));
}

void channel_coeffs(std::span<const LedTransmitter> leds, const Vec3& rx_pos,
                    const ReceiverModel& rx, std::span<double> out) {
    for (std::size_t i = 0; i < leds.size(); ++i) out[i] = channel_coeff(leds[i], rx_pos, rx);
}

// Quotient-rule expansion h = K u / v with
//   u = s^m w,                v = |d|^(m+3),
// and for the second partials the additional factors
//   b_n = (m+3) d_n u,        q = |d|^(m+5).
ChannelDerivatives channel_derivatives(const LedTransmitter& led, const Vec3& rx_pos,
                                       const ReceiverModel& rx) {
    const Offsets o = offsets(led, rx_pos, rx);
    const double m = led.lambertian_order;
    const Vec3& nt = led.orientation;
    const Vec3& nr = rx.orientation;
    const double k = (m + 1.0) * rx.pd_area / (2.0 * std::numbers::pi);

    const double s_m = signed_pow(o.s, m);
    const double s_m1 = signed_pow(o.s, m - 1.0);
    // m(m-1) vanishes for the common m = 1 emitter, where s^(m-2) may be 1/0.
    const double c2 = m * (m - 1.0);
    const double s_m2 = c2 != 0.0 ? signed_pow(o.s, m - 2.0) : 0.0;

    const double u = s_m * o.w;
    const Vec3 du = m * o.w * s_m1 * nt - s_m * nr;
    Mat3 d2u = -m * s_m1 * (nt * nr.transpose() + nr * nt.transpose());
    if (c2 != 0.0) d2u += c2 * o.w * s_m2 * nt * nt.transpose();

    const double dist_m1 = std::pow(o.dist, m + 1.0);
    const double dist_m3 = dist_m1 * o.dist * o.dist;
    const double v = dist_m3;
    const double q = dist_m3 * o.dist * o.dist;
    const Vec3 dv = (m + 3.0) * dist_m1 * o.d;
    const Vec3 b = (m + 3.0) * u * o.d;
    const Vec3 dq = (m + 5.0) * dist_m3 * o.d;

    ChannelDerivatives out;
    out.h = k * u / v;
    out.grad = k * (du / v - (u / (v * v)) * dv);

    Mat3 hess;
    for (int row = 0; row < 3; ++row) {      // differentiation variable l_R(m)
        for (int col = 0; col < 3; ++col) {  // first-derivative index n
            // db_n / dl_R(m); the Kronecker term is the m = n branch.
            double db = (m + 3.0) * o.d[col] * du[row];
            if (row == col) db += (m + 3.0) * u;
            hess(row, col) = d2u(row, col) / v - dv[row] * du[col] / (v * v) - db / q +
                             b[col] * dq[row] / (q * q);
        }
    }
    out.hessian = k * 0.5 * (hess + hess.transpose());
    return out;
}

Vec3 channel_grad(const LedTransmitter& led, const Vec3& rx_pos, const ReceiverModel& rx) {
    return channel_derivatives(led, rx_pos, rx).grad;
}

Mat3 channel_hessian(const LedTransmitter& led, const Vec3& rx_pos, const ReceiverModel& rx) {
    return channel_derivatives(led, rx_pos, rx).hessian;
}

}  // namespace vlp
