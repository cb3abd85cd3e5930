#include "vlp/report.hpp"

#include <cmath>

namespace vlp {

using nlohmann::json;

json to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

namespace {
json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
}  // namespace

json to_json(const PseudoTrueResult& r) {
    return {{"point_m", vec(r.point)}, {"kl_value", r.kl_value}, {"bias_m", vec(r.bias)},
            {"bias_norm_m", r.bias.norm()}};
}

json to_json(const BoundReport& r) {
    json out = {{"scenario", static_cast<int>(r.scenario)},
                {"scenario_name", std::string(scenario_name(r.scenario))}};
    if (r.pseudo_true) out["pseudo_true"] = to_json(*r.pseudo_true);
    if (r.matrix_a) out["matrix_a"] = to_json(Eigen::MatrixXd(*r.matrix_a));
    if (r.matrix_b) out["matrix_b"] = to_json(Eigen::MatrixXd(*r.matrix_b));
    if (r.mcrb) {
        out["mcrb_m2"] = to_json(Eigen::MatrixXd(*r.mcrb));
        out["mcrb_trace_m2"] = r.mcrb->trace();
    }
    if (r.lb) {
        out["lb_m2"] = to_json(Eigen::MatrixXd(*r.lb));
        out["lb_trace_m2"] = r.lb->trace();
        out["sqrt_lb_trace_m"] = std::sqrt(r.lb->trace());
    }
    if (r.crb_trace) {
        out["crb_trace_m2"] = *r.crb_trace;
        out["sqrt_crb_m"] = std::sqrt(*r.crb_trace);
    }
    if (r.fim.size() > 0) out["fim"] = to_json(r.fim);
    return out;
}

json to_json(const EstimateResult& r) {
    json out = {{"position_m", vec(r.position)},
                {"objective_value", r.objective_value},
                {"grid_points", r.search_stats.grid_points},
                {"refine_iterations", r.search_stats.refine_iterations}};
    if (r.decay_rate_hat) out["decay_rate_hat_per_hour"] = *r.decay_rate_hat;
    return out;
}

}  // namespace vlp
