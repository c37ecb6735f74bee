#include "pnest/io.hpp"

#include <cstdio>
#include <ostream>

namespace pnest {

namespace {

nlohmann::json complex_to_json(const Complex& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

nlohmann::json matrix_to_json(const Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a matrix array");
    const Eigen::Index rows = Eigen::Index(j.size());
    const Eigen::Index cols = Eigen::Index(j[0].size());
    Mat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (Eigen::Index(j[r].size()) != cols)
            throw std::invalid_argument("ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
    }
    return m;
}

nlohmann::json code_to_json(const CodeSpec& code) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (int k = 0; k <= code.cutoff; ++k) coeffs.push_back(complex_to_json(code.coeffs(k)));
    return {{"family", code.family},
            {"spacing", code.spacing},
            {"cutoff", code.cutoff},
            {"coeffs", std::move(coeffs)}};
}

CodeSpec code_from_json(const nlohmann::json& j) {
    const int cutoff = j.at("cutoff").get<int>();
    Vec coeffs(cutoff + 1);
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || int(arr.size()) != cutoff + 1)
        throw std::invalid_argument("coeffs length must be cutoff + 1");
    for (int k = 0; k <= cutoff; ++k) coeffs(k) = complex_from_json(arr[k]);
    return make_code(j.at("spacing").get<int>(), cutoff, std::move(coeffs),
                     j.value("family", "custom"));
}

nlohmann::json operator_to_json(const EtHamiltonian& h, const EtReport* report) {
    nlohmann::json meta = {{"code", code_to_json(h.code)},
                           {"construction", to_string(h.tag)},
                           {"errors", h.target.label}};
    nlohmann::json data = {{"dim", h.h.rows()},
                           {"matrix", matrix_to_json(h.h)},
                           {"squeezing_orders", h.orders},
                           {"parity_nested", true}};
    if (report) {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : report->entries)
            entries.push_back({{"jumps", e.term.jumps},
                               {"number_power", e.term.number_power},
                               {"residual", e.residual}});
        data["et_report"] = {{"passes", report->passes},
                             {"max_residual", report->max_residual},
                             {"entries", std::move(entries)}};
    }
    return {{"meta", std::move(meta)}, {"data", std::move(data)}};
}

void write_curve_csv(const FidelityCurve& curve, std::ostream& out) {
    out << "kappa,gamma,infidelity\n";
    char line[128];
    for (const auto& p : curve.points) {
        std::snprintf(line, sizeof(line), "%.15g,%.15g,%.15g\n", p.kappa, p.gamma,
                      p.infidelity);
        out << line;
    }
}

nlohmann::json curve_to_json(const FidelityCurve& curve, nlohmann::json meta) {
    meta["t"] = curve.t;
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : curve.points)
        points.push_back(
            {{"kappa", p.kappa}, {"gamma", p.gamma}, {"infidelity", p.infidelity}});
    nlohmann::json data = {{"points", std::move(points)}};
    if (!curve.warnings.empty()) data["warnings"] = curve.warnings;
    return {{"meta", std::move(meta)}, {"data", std::move(data)}};
}

}  // namespace pnest
