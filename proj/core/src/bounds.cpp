#include "vlp/bounds.hpp"

#include "vlp/errors.hpp"
#include "vlp/linalg.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace vlp {

namespace {

// Per-LED model amplitude P0_i R_p and true mean power.
struct LinkTerms {
    std::vector<double> amplitude;   // P0_i R_p
    std::vector<double> true_mean;   // P0_i e^{-alpha_i t} R_p h_i(true)
};

LinkTerms link_terms(const Scene& scene) {
    LinkTerms out;
    const std::size_t n = scene.leds.size();
    out.amplitude.resize(n);
    out.true_mean = noiseless_received(scene.leds, scene.rx, scene.true_position, scene.t_hours);
    for (std::size_t i = 0; i < n; ++i) {
        out.amplitude[i] = scene.leds[i].initial_power * scene.rx.responsivity;
    }
    return out;
}

Mat3 symmetrized(const Mat3& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

SearchOptions pseudo_true_search_options() {
    SearchOptions o;
    o.step_tolerance = 1e-6;
    o.max_iterations = 1000;
    return o;
}

double kl_objective(const Vec3& rx_pos, const Scene& scene) {
    const LinkTerms terms = link_terms(scene);
    double sum = 0.0;
    for (std::size_t i = 0; i < scene.leds.size(); ++i) {
        const double r =
            terms.true_mean[i] - terms.amplitude[i] * channel_coeff(scene.leds[i], rx_pos, scene.rx);
        sum += r * r / (2.0 * scene.noise.variances[i]);
    }
    return sum;
}

PseudoTrueResult pseudo_true(const Scene& scene, const SearchOptions& options) {
    scene.validate();
    const LinkTerms terms = link_terms(scene);
    const Objective f = [&](const Vec3& x) {
        double sum = 0.0;
        try {
            for (std::size_t i = 0; i < scene.leds.size(); ++i) {
                const double r = terms.true_mean[i] -
                                 terms.amplitude[i] * channel_coeff(scene.leds[i], x, scene.rx);
                sum += r * r / (2.0 * scene.noise.variances[i]);
            }
        } catch (const DomainError&) {
            return std::numeric_limits<double>::infinity();
        }
        return sum;
    };
    const SearchResult r =
        grid_refine_minimize(f, scene.rx.region.inflated(kPseudoTrueMargin), options);
    return PseudoTrueResult{r.point, r.value, scene.true_position - r.point};
}

Mat3 matrix_A(const Scene& scene, const Vec3& l0) {
    const LinkTerms terms = link_terms(scene);
    Mat3 a = Mat3::Zero();
    for (std::size_t i = 0; i < scene.leds.size(); ++i) {
        const ChannelDerivatives d = channel_derivatives(scene.leds[i], l0, scene.rx);
        const double s2 = scene.noise.variances[i];
        const double amp = terms.amplitude[i];
        a += (terms.true_mean[i] * amp / s2) * d.hessian;
        a -= (amp * amp / s2) * (d.grad * d.grad.transpose() + d.h * d.hessian);
    }
    return symmetrized(a);
}

Mat3 matrix_B(const Scene& scene, const Vec3& l0) {
    const LinkTerms terms = link_terms(scene);
    const std::size_t n = scene.leds.size();
    std::vector<Vec3> grads(n);
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
        const ChannelDerivatives d = channel_derivatives(scene.leds[i], l0, scene.rx);
        grads[i] = d.grad;
        residual[i] = terms.true_mean[i] - terms.amplitude[i] * d.h;
    }

    Mat3 b = Mat3::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const double si = scene.noise.variances[i];
        const double w = terms.amplitude[i] / si;
        b += w * w * (si + residual[i] * residual[i]) * grads[i] * grads[i].transpose();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double sj = scene.noise.variances[j];
            b += (terms.amplitude[i] * terms.amplitude[j] / (si * sj)) * residual[i] * residual[j] *
                 grads[i] * grads[j].transpose();
        }
    }
    return symmetrized(b);
}

BoundReport mcrb(const Scene& scene) { return mcrb(scene, pseudo_true(scene)); }

BoundReport mcrb(const Scene& scene, const PseudoTrueResult& pt) {
    BoundReport report;
    report.scenario = Scenario::Mismatch;
    report.pseudo_true = pt;
    const Mat3 a = matrix_A(scene, pt.point);
    const Mat3 b = matrix_B(scene, pt.point);
    const Mat3 a_inv = checked_inverse(a, "matrix A of the misspecified model");
    const Mat3 m = symmetrized(a_inv * b * a_inv);
    report.matrix_a = a;
    report.matrix_b = b;
    report.mcrb = m;
    report.lb = m + pt.bias * pt.bias.transpose();
    return report;
}

Eigen::Matrix4d fim_scenario2(const Scene& scene, const Vec3& rx_pos, double alpha) {
    if (!(scene.t_hours >= 0.0)) throw DomainError("operating time must be non-negative");
    const double t = scene.t_hours;
    const double decay = std::exp(-alpha * t);
    const double rp2 = scene.rx.responsivity * scene.rx.responsivity;

    Eigen::Matrix4d fim = Eigen::Matrix4d::Zero();
    for (std::size_t i = 0; i < scene.leds.size(); ++i) {
        const ChannelDerivatives d = channel_derivatives(scene.leds[i], rx_pos, scene.rx);
        const double p0 = scene.leds[i].initial_power;
        const double s2 = scene.noise.variances[i];
        const double amp2 = p0 * decay * p0 * decay / s2;
        fim.topLeftCorner<3, 3>() += rp2 * amp2 * d.grad * d.grad.transpose();
        fim.block<1, 3>(3, 0) += -t * rp2 * amp2 * d.h * d.grad.transpose();
        fim(3, 3) += p0 * d.h * p0 * d.h / s2;
    }
    fim(3, 3) *= (t * scene.rx.responsivity * decay) * (t * scene.rx.responsivity * decay);
    fim.block<3, 1>(0, 3) = fim.block<1, 3>(3, 0).transpose();
    return fim;
}

double crb_scenario2(const Scene& scene, const Vec3& rx_pos, double alpha) {
    const Eigen::MatrixXd inv =
        checked_inverse(fim_scenario2(scene, rx_pos, alpha), "joint position/decay FIM");
    return inv.topLeftCorner(3, 3).trace();
}

Mat3 fim_scenario3(const Scene& scene, const Vec3& rx_pos) {
    const double rp2 = scene.rx.responsivity * scene.rx.responsivity;
    Mat3 fim = Mat3::Zero();
    for (std::size_t i = 0; i < scene.leds.size(); ++i) {
        const Vec3 g = channel_grad(scene.leds[i], rx_pos, scene.rx);
        const double p = transmit_power(scene.leds[i], scene.t_hours);
        fim += rp2 * (p * p / scene.noise.variances[i]) * g * g.transpose();
    }
    return fim;
}

double crb_scenario3(const Scene& scene, const Vec3& rx_pos) {
    return checked_inverse(fim_scenario3(scene, rx_pos), "position FIM").trace();
}

BoundReport bound_report(const Scene& scene, Scenario scenario) {
    scene.validate();
    switch (scenario) {
        case Scenario::Mismatch: return mcrb(scene);
        case Scenario::ModelOnly: {
            const auto alpha = common_decay_rate(scene.leds);
            if (!alpha) throw ConfigError("joint decay estimation needs a common decay rate");
            BoundReport r;
            r.scenario = scenario;
            r.fim = fim_scenario2(scene, scene.true_position, *alpha);
            r.crb_trace = crb_scenario2(scene, scene.true_position, *alpha);
            return r;
        }
        case Scenario::Full: {
            BoundReport r;
            r.scenario = scenario;
            r.fim = fim_scenario3(scene, scene.true_position);
            r.crb_trace = crb_scenario3(scene, scene.true_position);
            return r;
        }
    }
    throw ConfigError("unknown scenario");
}

}  // namespace vlp
