#pragma once

#include <Eigen/Dense>

#include <string_view>

namespace vlp {

/// Matrices whose equilibrated condition number exceeds this are treated as
/// singular.
inline constexpr double kMaxConditionNumber = 1e12;

/// 2-norm condition number of D^{-1/2} M D^{-1/2}, D = diag(|M_ii|).
///
/// Diagonal scaling removes the unit mismatch between blocks (meters versus
/// 1/hour in the joint position/decay information matrix). Returns +inf when a
/// diagonal entry is zero or the matrix is not finite.
double equilibrated_condition_number(const Eigen::MatrixXd& m);

/// Rank of the equilibrated matrix with singular values below
/// `relative_tolerance * sigma_max` counted as zero.
int numerical_rank(const Eigen::MatrixXd& m, double relative_tolerance = 1e-10);

/// Inverse of a small square matrix. Throws SingularityError naming `what`,
/// the condition number and the rank when the matrix is ill-conditioned.
Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& m, std::string_view what);

/// max |M - M^T| <= relative_tolerance * max |M|.
bool is_symmetric(const Eigen::MatrixXd& m, double relative_tolerance);

/// Smallest eigenvalue of the symmetric part divided by the largest absolute
/// eigenvalue; a matrix is treated as PSD when this is >= -tolerance.
double min_eigen_ratio(const Eigen::MatrixXd& m);

}  // namespace vlp
