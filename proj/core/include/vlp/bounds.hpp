#pragma once

#include "vlp/estimators.hpp"
#include "vlp/scene.hpp"
#include "vlp/search.hpp"

#include <Eigen/Dense>

#include <optional>

namespace vlp {

struct PseudoTrueResult {
    Vec3 point = Vec3::Zero();
    double kl_value = 0.0;
    Vec3 bias = Vec3::Zero();  // true position - point
};

/// Theoretical limits for one scenario. Scenario 1 fills the pseudo-true
/// point, A, B, MCRB and LB; scenarios 2 and 3 fill the information matrix
/// (4x4 and 3x3) and the position CRB.
struct BoundReport {
    Scenario scenario = Scenario::Full;
    std::optional<PseudoTrueResult> pseudo_true;
    std::optional<Mat3> matrix_a;
    std::optional<Mat3> matrix_b;
    std::optional<Mat3> mcrb;
    std::optional<Mat3> lb;
    std::optional<double> crb_trace;  // m^2
    Eigen::MatrixXd fim;
};

/// Search settings for the pseudo-true point: the default grid over the
/// receiver region inflated by 0.5 m and a 1e-6 m refinement tolerance.
SearchOptions pseudo_true_search_options();
inline constexpr double kPseudoTrueMargin = 0.5;  // m

/// KL divergence from the true measurement density to the no-decay model
/// evaluated at `rx_pos`:
///   sum_i (P0_i e^{-alpha_i t} R_p h_i(true) - P0_i R_p h_i(rx_pos))^2 / (2 s_i^2).
double kl_objective(const Vec3& rx_pos, const Scene& scene);

PseudoTrueResult pseudo_true(const Scene& scene,
                             const SearchOptions& options = pseudo_true_search_options());

/// Expected Hessian of the misspecified log-likelihood at `l0` under the true
/// model.
Mat3 matrix_A(const Scene& scene, const Vec3& l0);

/// Expected outer product of the misspecified score at `l0` under the true
/// model, including the cross-LED term driven by the mean residuals.
Mat3 matrix_B(const Scene& scene, const Vec3& l0);

/// MCRB = A^-1 B A^-1 and LB = MCRB + bias bias^T at the pseudo-true point.
/// Throws SingularityError when A is ill-conditioned.
BoundReport mcrb(const Scene& scene);
BoundReport mcrb(const Scene& scene, const PseudoTrueResult& pt);

/// Information matrix of (position, common decay rate).
Eigen::Matrix4d fim_scenario2(const Scene& scene, const Vec3& rx_pos, double alpha);
/// Trace of the position block of the inverse 4x4 FIM.
double crb_scenario2(const Scene& scene, const Vec3& rx_pos, double alpha);

/// Information matrix of the position with all decay rates known.
Mat3 fim_scenario3(const Scene& scene, const Vec3& rx_pos);
double crb_scenario3(const Scene& scene, const Vec3& rx_pos);

/// Bound report at the scene's true position. Scenario 2 requires a common
/// decay rate (ConfigError otherwise).
BoundReport bound_report(const Scene& scene, Scenario scenario);

}  // namespace vlp
