#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "adhm/adhm_solver.hpp"
#include "adhm/hopf_twist.hpp"
#include "adhm/instanton.hpp"
#include "adhm/monad.hpp"
#include "adhm/star_algebra.hpp"

namespace adhm {

using json = nlohmann::json;

json to_json(const Coefficient& c);
json to_json(const NCPolynomial& p);
// rules as {lhs, rhs}; single-term swaps also listed as {left, right, phase}
// meaning left right = phase right left
json to_json(const RelationSystem& r);

json to_json(const TwistModel& m);
TwistModel model_from_json(const json& j);

json to_json(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd matrix_from_json(const json& j);

json to_json(const ADHMData& d);
ADHMData data_from_json(const json& j);

json to_json(const AdhmResidual& r);
json to_json(const JacobianAnalysis& a);

ADHMData load_data(const std::string& path);
void save_json(const std::string& path, const json& j);

}  // namespace adhm
