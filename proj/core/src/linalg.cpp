#include "vlp/linalg.hpp"

#include "vlp/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace vlp {

namespace {

// Returns false when the matrix cannot be equilibrated.
bool equilibrate(const Eigen::MatrixXd& m, Eigen::VectorXd& scale, Eigen::MatrixXd& scaled) {
    if (!m.allFinite() || m.rows() != m.cols() || m.rows() == 0) return false;
    scale = m.diagonal().cwiseAbs();
    if ((scale.array() <= 0.0).any()) return false;
    scale = scale.cwiseSqrt().cwiseInverse();
    scaled = scale.asDiagonal() * m * scale.asDiagonal();
    return true;
}

}  // namespace

double equilibrated_condition_number(const Eigen::MatrixXd& m) {
    Eigen::VectorXd scale;
    Eigen::MatrixXd scaled;
    if (!equilibrate(m, scale, scaled)) return std::numeric_limits<double>::infinity();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

int numerical_rank(const Eigen::MatrixXd& m, double relative_tolerance) {
    Eigen::VectorXd scale;
    Eigen::MatrixXd scaled;
    const Eigen::MatrixXd& target = equilibrate(m, scale, scaled) ? scaled : m;
    if (!target.allFinite()) return 0;
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(target);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > relative_tolerance * sv(0)) ++rank;
    }
    return rank;
}

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& m, std::string_view what) {
    const double cond = equilibrated_condition_number(m);
    if (!(cond <= kMaxConditionNumber)) {
        const int rank = numerical_rank(m);
        std::ostringstream msg;
        msg << what << " is singular: condition number " << cond << " exceeds "
            << kMaxConditionNumber << ", numerical rank " << rank << " of " << m.rows();
        throw SingularityError(msg.str(), cond, rank);
    }
    Eigen::VectorXd scale;
    Eigen::MatrixXd scaled;
    equilibrate(m, scale, scaled);
    return scale.asDiagonal() * scaled.fullPivLu().inverse() * scale.asDiagonal();
}

bool is_symmetric(const Eigen::MatrixXd& m, double relative_tolerance) {
    const double peak = m.cwiseAbs().maxCoeff();
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= relative_tolerance * peak;
}

double min_eigen_ratio(const Eigen::MatrixXd& m) {
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    const double peak = ev.cwiseAbs().maxCoeff();
    if (peak == 0.0) return 0.0;
    return ev.minCoeff() / peak;
}

}  // namespace vlp
