#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "pnest/io.hpp"

namespace {

using namespace pnest;

CodeSpec parse_code(const std::string& text) {
    int spacing = 0, cutoff = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d,%d%c", &spacing, &cutoff, &extra) != 2)
        throw std::invalid_argument("--code expects N,K (e.g. 3,3)");
    return binomial_code(spacing, cutoff);
}

std::vector<double> parse_gammas(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    int count = -1;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &extra) != 3 || count < 0)
        throw std::invalid_argument("--gammas expects MIN:MAX:COUNT");
    if (count == 0) return {};
    if (lo <= 0.0 || hi >= 1.0 || lo > hi)
        throw std::invalid_argument("--gammas needs 0 < MIN <= MAX < 1");
    std::vector<double> out;
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    const double la = std::log10(lo), lb = std::log10(hi);
    for (int i = 0; i < count; ++i)
        out.push_back(std::pow(10.0, la + (lb - la) * double(i) / double(count - 1)));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument("bad integer list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty integer list");
    return out;
}

struct Options {
    std::string code = "3,3";
    std::string construction = "thm1";
    int l = -1;
    std::string errors = "full";
    double theta = std::numbers::pi;
    std::string odd;
    std::string gammas = "1e-4:0.05:20";
    double t = std::numbers::pi / 2.0;
    int steps = 0;
    std::string out;
    std::string format = "csv";
    std::string in;
    bool general = false;
    double alpha_re = 1.0;
    double alpha_im = 0.0;
};

int require_l(const Options& opt) {
    if (opt.l < 0)
        throw std::invalid_argument("--l is required for construction '" + opt.construction +
                                    "'");
    return opt.l;
}

ErrorSet parse_error_set(const std::string& errors, int l) {
    if (errors == "full") return ErrorSet::full_set(l);
    if (errors == "jumps") return ErrorSet::jumps_only(l);
    throw std::invalid_argument("--errors must be 'full' or 'jumps'");
}

EtHamiltonian build_hamiltonian(const Options& opt) {
    const CodeSpec code = parse_code(opt.code);
    const Construction tag = construction_from_string(opt.construction);
    switch (tag) {
        case Construction::naive:
            return naive_et_hamiltonian(code, parse_error_set(opt.errors, require_l(opt)));
        case Construction::theorem1: return theorem1_hamiltonian(code, require_l(opt));
        case Construction::theorem2: return theorem2_hamiltonian(code, require_l(opt));
        case Construction::direct: {
            const int l = require_l(opt);
            std::vector<int> allowed;
            if (!opt.odd.empty()) {
                allowed = parse_int_list(opt.odd);
            } else if (opt.errors == "jumps") {
                allowed = {1};
            } else {
                for (int j = 1; j <= 2 * (l / 2) + 1; j += 2) allowed.push_back(j);
            }
            return direct_solve_hamiltonian(code, parse_error_set(opt.errors, l), allowed);
        }
        case Construction::phase:
            return phase_gate_hamiltonian(code, opt.theta, require_l(opt));
        case Construction::basic: return basic_gate_hamiltonian(code);
        case Construction::idle: return idle_hamiltonian(code);
    }
    throw std::logic_error("unreachable construction tag");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << text;
}

int cmd_build(const Options& opt) {
    const EtHamiltonian h = build_hamiltonian(opt);
    const EtReport report = check_error_transparency(h.h, h.code, h.target);
    nlohmann::json j = operator_to_json(h, &report);
    int l = 0;
    for (const auto& t : h.target.terms)
        l = std::max(l, t.jumps + 2 * t.number_power);
    j["meta"]["l"] = l;
    write_text(opt.out, j.dump(2) + "\n");
    return 0;
}

int cmd_check(const Options& opt) {
    Mat h;
    CodeSpec code;
    std::string label;
    if (!opt.in.empty()) {
        std::ifstream file(opt.in);
        if (!file) throw std::runtime_error("cannot open '" + opt.in + "'");
        nlohmann::json j = nlohmann::json::parse(file);
        code = code_from_json(j.at("meta").at("code"));
        h = matrix_from_json(j.at("data").at("matrix"));
        if (h.rows() != code.dim())
            throw std::invalid_argument("matrix dimension does not match the code");
        label = j.at("meta").value("construction", "file");
    } else {
        const EtHamiltonian built = build_hamiltonian(opt);
        h = built.h;
        code = built.code;
        label = to_string(built.tag);
    }
    if (opt.l < 0) throw std::invalid_argument("--l is required for check");
    const ErrorSet set = parse_error_set(opt.errors, opt.l);

    const EtReport report = opt.general ? check_general_et(h, code, set)
                                        : check_error_transparency(h, code, set);
    std::printf("# %s vs %s error set, l = %d (%s check)\n", label.c_str(),
                set.label.c_str(), opt.l, opt.general ? "subspace" : "commutator");
    for (const auto& e : report.entries)
        std::printf("a^%d n^%d  residual %.6e\n", e.term.jumps, e.term.number_power,
                    e.residual);
    std::printf("max residual %.6e (scale %.6e): %s\n", report.max_residual, report.scale,
                report.passes ? "transparent" : "NOT transparent");
    return report.passes ? 0 : 3;
}

int cmd_bench(const Options& opt) {
    const EtHamiltonian h = build_hamiltonian(opt);
    const std::vector<double> gammas = parse_gammas(opt.gammas);
    if (opt.t <= 0.0) throw std::invalid_argument("--t must be positive");
    EvolveOptions evolve;
    evolve.steps = opt.steps;
    const FidelityCurve curve = fidelity_sweep(h.h, h.code, gammas, opt.t, evolve);
    for (const auto& w : curve.warnings) std::cerr << "warning: " << w << "\n";

    if (opt.format == "csv") {
        std::ostringstream s;
        write_curve_csv(curve, s);
        write_text(opt.out, s.str());
    } else if (opt.format == "json") {
        nlohmann::json meta = {{"code", code_to_json(h.code)},
                               {"construction", to_string(h.tag)}};
        write_text(opt.out, curve_to_json(curve, std::move(meta)).dump(2) + "\n");
    } else {
        throw std::invalid_argument("--format must be 'csv' or 'json'");
    }
    return 0;
}

int cmd_witness(const Options& opt) {
    const CodeSpec code = parse_code(opt.code);
    if (opt.l < 0) throw std::invalid_argument("--l is required for witness");
    WitnessConfig cfg;
    cfg.alpha = Complex(opt.alpha_re, opt.alpha_im);

    std::vector<int> odds;
    for (int j = 1; j <= 2 * code.cutoff - 1; j += 2) odds.push_back(j);
    const std::size_t pick = std::size_t(opt.l / 2);
    std::vector<std::vector<int>> subsets;
    std::vector<int> current;
    auto enumerate = [&](auto&& self, std::size_t start) -> void {
        if (current.size() == pick) {
            subsets.push_back(current);
            return;
        }
        for (std::size_t i = start; i < odds.size(); ++i) {
            current.push_back(odds[i]);
            self(self, i + 1);
            current.pop_back();
        }
    };
    enumerate(enumerate, 0);

    bool all_inconsistent = true;
    for (const auto& subset : subsets) {
        cfg.odd_columns = subset;
        const WitnessReport report = min_squeezing_witness(code, opt.l, cfg);
        std::string label = "{";
        for (std::size_t i = 0; i < subset.size(); ++i)
            label += (i ? "," : "") + std::to_string(subset[i]);
        label += "}";
        std::printf("J=%-12s rank %d  augmented %d  %s\n", label.c_str(), report.rank,
                    report.rank_augmented,
                    report.consistent ? "consistent" : "inconsistent");
        all_inconsistent = all_inconsistent && !report.consistent;
    }
    std::printf("%zu refutation(s) of size %zu: %s\n", subsets.size(), pick,
                all_inconsistent ? "all inconsistent (minimum confirmed)"
                                 : "consistent configuration found");
    return all_inconsistent ? 0 : 3;
}

int cmd_decompose(const Options& opt) {
    const CodeSpec code = parse_code(opt.code);
    if (opt.l < 0) throw std::invalid_argument("--l is required for decompose");
    const Eigen::VectorXd w = lemma1_decompose(code, opt.l);
    std::printf("# %d shifted binomial unit(s) of order %d\n", int(w.size()), opt.l + 1);
    for (Eigen::Index j = 0; j < w.size(); ++j)
        std::printf("shift %d  weight %.12g\n", int(j), w(j));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parity-nested error-transparent gates for rotation-symmetric bosonic codes"};
    app.require_subcommand(1);
    Options opt;

    auto add_code = [&](CLI::App* cmd) {
        cmd->add_option("--code", opt.code, "Binomial code as N,K")->capture_default_str();
    };
    auto add_l = [&](CLI::App* cmd) {
        cmd->add_option("--l", opt.l, "Error-transparency order");
    };
    auto add_construction = [&](CLI::App* cmd) {
        cmd->add_option("--construction", opt.construction,
                        "naive|thm1|thm2|direct|phase|basic|idle")
            ->capture_default_str();
        cmd->add_option("--errors", opt.errors, "Error set: full|jumps")
            ->capture_default_str();
        cmd->add_option("--theta", opt.theta, "Phase-gate angle")->capture_default_str();
        cmd->add_option("--odd", opt.odd, "Allowed odd off-diagonals for direct, e.g. 1,3");
    };

    CLI::App* build = app.add_subcommand("build", "Construct a gate Hamiltonian (JSON)");
    add_code(build);
    add_construction(build);
    add_l(build);
    build->add_option("--out", opt.out, "Output path (default stdout)");

    CLI::App* check = app.add_subcommand("check", "Verify error transparency");
    add_code(check);
    add_construction(check);
    add_l(check);
    check->add_option("--in", opt.in, "Read the operator from a build JSON file");
    check->add_flag("--general", opt.general, "Use the subspace-closure definition");

    CLI::App* bench = app.add_subcommand("bench", "Sweep gate infidelity under loss");
    add_code(bench);
    add_construction(bench);
    add_l(bench);
    bench->add_option("--gammas", opt.gammas, "Loss grid MIN:MAX:COUNT (log spaced)")
        ->capture_default_str();
    bench->add_option("--t", opt.t, "Gate time")->capture_default_str();
    bench->add_option("--steps", opt.steps, "Integrator steps (0 = automatic)");
    bench->add_option("--out", opt.out, "Output path (default stdout)");
    bench->add_option("--format", opt.format, "csv|json")->capture_default_str();

    CLI::App* witness = app.add_subcommand(
        "witness", "Refute sub-minimal squeezing-order sets for an X gate");
    add_code(witness);
    add_l(witness);
    witness->add_option("--alpha", opt.alpha_re, "Re(alpha) of the target eigenvector")
        ->capture_default_str();
    witness->add_option("--alpha-imag", opt.alpha_im, "Im(alpha)")->capture_default_str();

    CLI::App* decompose =
        app.add_subcommand("decompose", "Shifted binomial unit weights of a code");
    add_code(decompose);
    add_l(decompose);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (build->parsed()) return cmd_build(opt);
        if (check->parsed()) return cmd_check(opt);
        if (bench->parsed()) return cmd_bench(opt);
        if (witness->parsed()) return cmd_witness(opt);
        if (decompose->parsed()) return cmd_decompose(opt);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
