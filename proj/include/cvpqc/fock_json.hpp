// Debug dump of a FockOperator as {"dim": n, "re": [[...]], "im": [[...]]}.
#pragma once

#include <json.hpp>

#include "cvpqc/fock_space.hpp"

namespace cvpqc {

inline nlohmann::json to_json(const FockOperator& op) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index m = 0; m < op.rows(); ++m) {
    nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
    for (Eigen::Index n = 0; n < op.cols(); ++n) {
      re_row.push_back(op(m, n).real());
      im_row.push_back(op(m, n).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"dim", op.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline FockOperator operator_from_json(const nlohmann::json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  require(dim > 0 && static_cast<Eigen::Index>(re.size()) == dim && static_cast<Eigen::Index>(im.size()) == dim,
          "operator_from_json: inconsistent dim");
  FockOperator op(dim, dim);
  for (Eigen::Index m = 0; m < dim; ++m) {
    require(static_cast<Eigen::Index>(re[m].size()) == dim && static_cast<Eigen::Index>(im[m].size()) == dim,
            "operator_from_json: ragged row");
    for (Eigen::Index n = 0; n < dim; ++n) op(m, n) = {re[m][n].get<double>(), im[m][n].get<double>()};
  }
  return op;
}

}  // namespace cvpqc
