#pragma once

#include <iosfwd>

#include <json.hpp>

#include "pnest/construct.hpp"
#include "pnest/loss.hpp"

namespace pnest {

// Row-major nested arrays of [re, im] pairs.
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

nlohmann::json code_to_json(const CodeSpec& code);
CodeSpec code_from_json(const nlohmann::json& j);

// {"meta": {code, construction, errors}, "data": {dim, matrix,
//  squeezing_orders, parity_nested, et_report?}}
nlohmann::json operator_to_json(const EtHamiltonian& h, const EtReport* report = nullptr);

// kappa,gamma,infidelity rows, 15 significant digits, LF line ends.
void write_curve_csv(const FidelityCurve& curve, std::ostream& out);

nlohmann::json curve_to_json(const FidelityCurve& curve, nlohmann::json meta);

}  // namespace pnest
