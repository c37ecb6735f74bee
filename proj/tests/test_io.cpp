#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "pnest/io.hpp"

using namespace pnest;

TEST_CASE("matrix JSON round trip is exact") {
    Mat m(2, 3);
    m << Complex(1.0 / 3.0, -std::sqrt(2.0)), Complex(0.0, 0.0), Complex(1e-17, 3e12),
        Complex(-0.25, 0.125), Complex(std::acos(-1.0), -1.0 / 7.0), Complex(5.0, 0.0);
    const Mat back = matrix_from_json(matrix_to_json(m));
    CHECK(max_abs(back - m) == 0.0);

    // Through text: nlohmann prints doubles with round-trip precision.
    const Mat parsed = matrix_from_json(nlohmann::json::parse(matrix_to_json(m).dump()));
    CHECK(max_abs(parsed - m) == 0.0);

    CHECK_THROWS_AS((void)matrix_from_json(nlohmann::json::array()), std::invalid_argument);
    CHECK_THROWS_AS((void)matrix_from_json(nlohmann::json::parse("[[[1,2]],[[1,2],[3,4]]]")),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)matrix_from_json(nlohmann::json::parse("[[[1,2,3]]]")),
                    std::invalid_argument);
}

TEST_CASE("code JSON round trip") {
    const CodeSpec code = binomial_code(3, 3);
    const nlohmann::json j = code_to_json(code);
    CHECK(j.at("family") == "binomial");
    CHECK(j.at("spacing") == 3);
    CHECK(j.at("cutoff") == 3);
    const CodeSpec back = code_from_json(j);
    CHECK(back.spacing == 3);
    CHECK(back.cutoff == 3);
    CHECK(max_abs(back.coeffs - code.coeffs) < 1e-15);

    Vec c(4);
    c << Complex(1.0, 0.0), Complex(0.0, std::sqrt(3.0)), Complex(-std::sqrt(3.0), 0.0),
        std::polar(1.0, 0.3);
    const CodeSpec custom = make_code(3, 3, c);
    const CodeSpec custom_back = code_from_json(code_to_json(custom));
    CHECK(max_abs(custom_back.coeffs - custom.coeffs) < 1e-15);

    nlohmann::json bad = code_to_json(code);
    bad["coeffs"].erase(3);
    CHECK_THROWS_AS((void)code_from_json(bad), std::invalid_argument);
}

TEST_CASE("operator JSON carries metadata, matrix, and the report") {
    const CodeSpec code = binomial_code(3, 3);
    const EtHamiltonian gate = theorem1_hamiltonian(code, 1);
    const EtReport report = check_error_transparency(gate.h, code, ErrorSet::full_set(1));
    const nlohmann::json j = operator_to_json(gate, &report);

    CHECK(j.at("meta").at("construction") == "thm1");
    CHECK(j.at("meta").at("errors") == "full");
    CHECK(j.at("meta").at("code").at("spacing") == 3);
    CHECK(j.at("data").at("dim") == 10);
    CHECK(j.at("data").at("squeezing_orders") == nlohmann::json::array({1}));
    CHECK(j.at("data").at("parity_nested") == true);
    CHECK(j.at("data").at("et_report").at("passes") == true);
    CHECK(j.at("data").at("et_report").at("entries").size() == 2);
    CHECK(max_abs(matrix_from_json(j.at("data").at("matrix")) - gate.h) == 0.0);

    const nlohmann::json bare = operator_to_json(gate);
    CHECK_FALSE(bare.at("data").contains("et_report"));
}

TEST_CASE("curve CSV: header, precision, line endings") {
    FidelityCurve curve;
    curve.t = 1.0;
    curve.points = {{0.1000000000000123, 1e-4, 2.5e-9},
                    {0.2, 5.000000000000004e-3, 1.0 / 3.0}};
    std::ostringstream out;
    write_curve_csv(curve, out);
    const std::string text = out.str();
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.substr(0, 23) == "kappa,gamma,infidelity\n");

    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    int row = 0;
    while (std::getline(in, line)) {
        double kappa = 0.0, gamma = 0.0, infid = 0.0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &kappa, &gamma, &infid) == 3);
        const auto& p = curve.points[row++];
        CHECK(kappa == doctest::Approx(p.kappa).epsilon(1e-14));
        CHECK(gamma == doctest::Approx(p.gamma).epsilon(1e-14));
        CHECK(infid == doctest::Approx(p.infidelity).epsilon(1e-14));
    }
    CHECK(row == 2);
}

TEST_CASE("curve JSON merges metadata and keeps warnings") {
    FidelityCurve curve;
    curve.t = 0.5;
    curve.points = {{0.1, 1e-3, 1e-7}};
    const nlohmann::json j = curve_to_json(curve, {{"construction", "thm2"}});
    CHECK(j.at("meta").at("construction") == "thm2");
    CHECK(j.at("meta").at("t") == 0.5);
    CHECK(j.at("data").at("points").size() == 1);
    CHECK(j.at("data").at("points")[0].at("gamma") == 1e-3);
    CHECK_FALSE(j.at("data").contains("warnings"));

    curve.warnings.push_back("gamma = 0.9: step halving moved the result");
    const nlohmann::json warned = curve_to_json(curve, nlohmann::json::object());
    CHECK(warned.at("data").at("warnings").size() == 1);
}
