#pragma once

// Shared generators and finite-difference oracles for the unit and
// acceptance suites. Nothing here calls the analytic derivative code.

#include "vlp/geometry.hpp"
#include "vlp/rng.hpp"
#include "vlp/scene.hpp"

#include <cmath>
#include <functional>

namespace vlp::testing {

/// Random admissible LED/receiver pair inside the reference room: LED on the
/// ceiling, tilted up to ~20 degrees, receiver below it with both apertures
/// facing each other, integer Lambertian order 1..3.
struct RandomGeometry {
    LedTransmitter led;
    ReceiverModel rx;
    Vec3 rx_pos;
};

inline Vec3 random_tilt(Rng& rng, const Vec3& axis, double max_tilt) {
    Vec3 v = axis + max_tilt * Vec3(rng.uniform_signed(), rng.uniform_signed(), rng.uniform_signed());
    return v.normalized();
}

inline RandomGeometry random_geometry(Rng& rng) {
    RandomGeometry g;
    g.led.position = Vec3(2.0 * rng.uniform_signed(), 2.0 * rng.uniform_signed(), 3.0);
    g.led.orientation = random_tilt(rng, Vec3(0, 0, -1), 0.2);
    g.led.lambertian_order = 1.0 + std::floor(3.0 * rng.uniform());
    g.led.initial_power = 10.0;
    g.rx = reference_scene().rx;
    g.rx.orientation = random_tilt(rng, Vec3(0, 0, 1), 0.2);
    for (;;) {
        g.rx_pos = Vec3(2.0 * rng.uniform_signed(), 2.0 * rng.uniform_signed(), 2.5 * rng.uniform());
        const Vec3 d = g.rx_pos - g.led.position;
        if (d.dot(g.led.orientation) > 0.2 && -d.dot(g.rx.orientation) > 0.2) break;
    }
    return g;
}

inline Vec3 random_room_point(Rng& rng) {
    return Vec3(1.8 * rng.uniform_signed(), 1.8 * rng.uniform_signed(), 0.1 + 2.2 * rng.uniform());
}

/// Central-difference gradient of a scalar field.
inline Vec3 fd_gradient(const std::function<double(const Vec3&)>& f, const Vec3& x, double step) {
    Vec3 g;
    for (int k = 0; k < 3; ++k) {
        Vec3 a = x, b = x;
        a[k] += step;
        b[k] -= step;
        g[k] = (f(a) - f(b)) / (2.0 * step);
    }
    return g;
}

/// Central-difference Jacobian of a vector field; column k is d/dx_k.
inline Mat3 fd_jacobian(const std::function<Vec3(const Vec3&)>& f, const Vec3& x, double step) {
    Mat3 j;
    for (int k = 0; k < 3; ++k) {
        Vec3 a = x, b = x;
        a[k] += step;
        b[k] -= step;
        j.col(k) = (f(a) - f(b)) / (2.0 * step);
    }
    return j;
}

}  // namespace vlp::testing
