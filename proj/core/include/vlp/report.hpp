#pragma once

#include "vlp/bounds.hpp"
#include "vlp/estimators.hpp"

#include <nlohmann/json.hpp>

namespace vlp {

nlohmann::json to_json(const Eigen::MatrixXd& m);
nlohmann::json to_json(const PseudoTrueResult& r);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const EstimateResult& r);

}  // namespace vlp
