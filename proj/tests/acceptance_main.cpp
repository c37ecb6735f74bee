// Acceptance suite: every release-gating claim in one binary, one line per
// criterion. Exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "pnest/construct.hpp"
#include "pnest/io.hpp"
#include "pnest/loss.hpp"

using namespace pnest;

namespace {

constexpr double pi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void put(Mat& h, int r, int c, double v) {
    h(r, c) = v;
    h(c, r) = v;
}

// Reference gates for the spacing-3 cutoff-3 binomial code.
Mat golden_full() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0);
    Mat h = Mat::Zero(10, 10);
    put(h, 0, 3, s3 / 2.0);
    put(h, 0, 9, -0.5);
    put(h, 3, 6, 0.5);
    put(h, 6, 9, s3 / 2.0);
    put(h, 2, 5, 1.0 / s2);
    put(h, 5, 8, 1.0 / s2);
    put(h, 1, 4, 1.0 / s5);
    put(h, 4, 7, 2.0 / s5);
    return h;
}

Mat golden_scaled() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
    Mat h = Mat::Zero(10, 10);
    put(h, 0, 3, s3 / 3.0);
    put(h, 3, 6, 2.0 / 3.0);
    put(h, 6, 9, s3 / 3.0);
    put(h, 2, 5, 1.0 / s2);
    put(h, 5, 8, 1.0 / s2);
    return h;
}

Mat golden_single() {
    const double s5 = std::sqrt(5.0);
    Mat h = golden_scaled();
    put(h, 1, 4, 1.0 / s5);
    put(h, 4, 7, 2.0 / s5);
    return h;
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < n; ++i) g[i] = std::pow(10.0, a + (b - a) * i / (n - 1));
    return g;
}

// Geometric mean of the pointwise infidelity ratio of two aligned curves.
double geometric_ratio(const FidelityCurve& num, const FidelityCurve& den, double gamma_max) {
    double s = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < num.points.size() && i < den.points.size(); ++i) {
        const auto& a = num.points[i];
        const auto& b = den.points[i];
        if (a.gamma > gamma_max || a.infidelity <= 0.0 || b.infidelity <= 0.0) continue;
        s += std::log(a.infidelity / b.infidelity);
        ++n;
    }
    if (n == 0) throw InsufficientPoints("geometric_ratio: no usable points");
    return std::exp(s / n);
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](int idx, const char* name, bool pass, const std::string& detail,
                      bool gates = true) {
        std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name,
                    detail.c_str());
        std::fflush(stdout);
        if (!pass && gates) ++failures;
    };
    auto guarded = [&](int idx, const char* name, auto body) {
        try {
            body();
        } catch (const std::exception& ex) {
            report(idx, name, false, fmt("exception: %s", ex.what()));
        }
    };

    // 1. The worked spacing-3 cutoff-3 gates match their reference matrices.
    guarded(1, "reference gate matrices", [&] {
        const auto start = Clock::now();
        const CodeSpec code = binomial_code(3, 3);
        double dev = 0.0;
        dev = std::max(dev, max_abs(naive_et_hamiltonian(code, ErrorSet::full_set(2)).h -
                                    golden_full()));
        dev = std::max(dev, max_abs(theorem1_hamiltonian(code, 2).h - golden_full()));
        dev = std::max(dev, max_abs(theorem1_hamiltonian(code, 1).h - golden_scaled()));
        dev = std::max(dev, max_abs(theorem2_hamiltonian(code, 2).h - golden_single()));
        const double secs = seconds_since(start);
        report(1, "reference gate matrices", dev <= 1e-10 && secs < 1.0,
               fmt("max dev %.2e, %.2f s", dev, secs));
    });

    // 2. Squeezing orders: references exact, scaled gates stay on odd orders
    //    up to 2*floor(l/2) + 1.
    guarded(2, "squeezing orders", [&] {
        const auto start = Clock::now();
        const CodeSpec code = binomial_code(3, 3);
        bool ok = naive_et_hamiltonian(code, ErrorSet::full_set(2)).orders ==
                      std::vector<int>{1, 3} &&
                  theorem1_hamiltonian(code, 1).orders == std::vector<int>{1} &&
                  theorem2_hamiltonian(code, 2).orders == std::vector<int>{1};
        int cases = 0;
        for (int spacing = 2; spacing <= 6; ++spacing)
            for (int cutoff = 2; cutoff <= 6; ++cutoff)
                for (int l = 0; l < std::min(spacing, cutoff); ++l) {
                    const auto gate = theorem1_hamiltonian(binomial_code(spacing, cutoff), l);
                    for (int order : gate.orders)
                        if (order % 2 == 0 || order > 2 * (l / 2) + 1) ok = false;
                    ++cases;
                }
        const double secs = seconds_since(start);
        report(2, "squeezing orders", ok && secs < 5.0,
               fmt("%d scaled gates checked, %.2f s", cases, secs));
    });

    // 3. Error transparency across the code family.
    guarded(3, "error transparency", [&] {
        const auto start = Clock::now();
        bool ok = true;
        int cases = 0;
        for (int spacing = 2; spacing <= 5; ++spacing)
            for (int cutoff = 2; cutoff <= 5; ++cutoff)
                for (int l = 1; l < std::min(spacing, cutoff); ++l) {
                    const CodeSpec code = binomial_code(spacing, cutoff);
                    const ErrorSet full = ErrorSet::full_set(l);
                    ok &= check_error_transparency(theorem1_hamiltonian(code, l).h, code, full)
                              .passes;
                    const Mat single = theorem2_hamiltonian(code, l).h;
                    ok &= check_error_transparency(single, code, ErrorSet::jumps_only(l))
                              .passes;
                    if (l >= 2)  // dephasing breaks single-squeezing transparency
                        ok &= !check_error_transparency(single, code, full).passes;
                    ok &= check_error_transparency(phase_gate_hamiltonian(code, pi, l).h,
                                                   code, full)
                              .passes;
                    ++cases;
                }
        const double secs = seconds_since(start);
        report(3, "error transparency", ok && secs < 10.0,
               fmt("%d (spacing, cutoff, l) cases, %.2f s", cases, secs));
    });

    // 4. One-jump scaled gates are spin ladders per sector.
    guarded(4, "spin ladder identities", [&] {
        double dev = 0.0;
        for (int spacing : {2, 3})
            for (int cutoff = 2; cutoff <= 8; ++cutoff) {
                const auto gate = theorem1_hamiltonian(binomial_code(spacing, cutoff), 1);
                dev = std::max(dev, max_abs(gate.blocks.blocks[0] -
                                            (2.0 / cutoff) * spin_jx(cutoff)));
                dev = std::max(dev, max_abs(gate.blocks.blocks[1] -
                                            (2.0 / (cutoff - 1)) * spin_jx(cutoff - 1)));
            }
        report(4, "spin ladder identities", dev <= 1e-10, fmt("max dev %.2e", dev));
    });

    // 5. Minimum-squeezing witness: too-small odd supports are infeasible,
    //    and the direct solver agrees.
    guarded(5, "minimum squeezing witness", [&] {
        const auto start = Clock::now();
        bool ok = true;
        int refutations = 0;
        const CodeSpec small = binomial_code(3, 3);
        for (int j : {1, 3, 5}) {
            ok &= !min_squeezing_witness(small, 2, {.odd_columns = {j}}).consistent;
            ++refutations;
        }
        const CodeSpec large = binomial_code(5, 5);
        const std::vector<int> odds = {1, 3, 5, 7, 9};
        for (std::size_t i = 0; i < odds.size(); ++i)
            for (std::size_t j = i + 1; j < odds.size(); ++j) {
                ok &= !min_squeezing_witness(large, 4, {.odd_columns = {odds[i], odds[j]}})
                           .consistent;
                ++refutations;
            }
        bool solver_agrees = false;
        try {
            (void)direct_solve_hamiltonian(small, ErrorSet::full_set(2), {1});
        } catch (const InconsistentSystem&) {
            solver_agrees = true;
        }
        bool solver_agrees_large = false;
        try {
            (void)direct_solve_hamiltonian(large, ErrorSet::full_set(4), {1, 3});
        } catch (const InconsistentSystem&) {
            solver_agrees_large = true;
        }
        const double secs = seconds_since(start);
        report(5, "minimum squeezing witness",
               ok && solver_agrees && solver_agrees_large && secs < 5.0,
               fmt("%d refutations, 2 infeasible solves confirmed, %.2f s", refutations,
                   secs));
    });

    // 6. Loss-channel series coefficients match their monomial forms.
    guarded(6, "loss series table", [&] {
        const Eigen::Index dim = 12;
        const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
        const Mat n1 = error_operator({0, 1}, dim), n2 = error_operator({0, 2}, dim);
        const struct {
            int m, l;
            Mat want;
        } table[] = {
            {0, 0, Mat::Identity(dim, dim)},
            {0, 2, (-0.5 * n1).eval()},
            {0, 4, (0.125 * (n2 - 2.0 * n1)).eval()},
            {1, 1, error_operator({1, 0}, dim)},
            {1, 3, (-0.5 * error_operator({1, 1}, dim)).eval()},
            {2, 2, (error_operator({2, 0}, dim) / s2).eval()},
            {2, 4, (-error_operator({2, 1}, dim) / (2.0 * s2)).eval()},
            {3, 3, (error_operator({3, 0}, dim) / s6).eval()},
            {4, 4, (error_operator({4, 0}, dim) / (2.0 * s6)).eval()},
        };
        double rel = 0.0;
        for (const auto& row : table)
            rel = std::max(rel, max_abs(kraus_taylor_term(row.m, row.l, dim) - row.want) /
                                    std::max(1.0, max_abs(row.want)));
        report(6, "loss series table", rel <= 1e-8, fmt("9 terms, max rel dev %.2e", rel));
    });

    // 7. Infidelity slopes under loss with recovery, spacing-3 cutoff-3 code.
    //    The gamma^2 gates are fitted in the small-loss regime (gamma < 0.01):
    //    the improved single-squeezing curve bends toward the idle gamma^3
    //    scaling above its coefficient crossover at gamma ~ 0.02, so the
    //    power-law claim only holds asymptotically.
    guarded(7, "infidelity slopes", [&] {
        const auto start = Clock::now();
        const CodeSpec code = binomial_code(3, 3);
        const std::vector<double> gammas = log_grid(1e-4, 0.05, 20);
        const double t = pi / 2.0;
        auto slope = [&](const Mat& h, double gamma_max) {
            const FidelityCurve curve = fidelity_sweep(h, code, gammas, t);
            return fit_loglog_slope(curve, gamma_max).slope;
        };
        const double s_idle = slope(idle_hamiltonian(code).h, 0.05);
        const double s_full =
            slope(naive_et_hamiltonian(code, ErrorSet::full_set(2)).h, 0.05);
        const double s_scaled = slope(theorem1_hamiltonian(code, 1).h, 0.01);
        const double s_single = slope(theorem2_hamiltonian(code, 2).h, 0.01);
        const double s_basic = slope(basic_gate_hamiltonian(code).h, 0.05);
        const bool ok = std::abs(s_idle - 3.0) <= 0.15 && std::abs(s_full - 3.0) <= 0.15 &&
                        std::abs(s_scaled - 2.0) <= 0.10 &&
                        std::abs(s_single - 2.0) <= 0.10 && s_basic <= 1.2;
        const double secs = seconds_since(start);
        report(7, "infidelity slopes", ok && secs < 300.0,
               fmt("idle %.2f, full %.2f, scaled %.2f, single %.2f (gamma < 0.01 for the "
                   "gamma^2 fits), basic %.2f, %.0f s",
                   s_idle, s_full, s_scaled, s_single, s_basic, secs));
    });

    // 8. Low-loss infidelity improvement of full jump transparency over the
    //    one-jump scaled gate.
    guarded(8, "improvement factors", [&] {
        const auto start = Clock::now();
        const std::vector<double> gammas = log_grid(1e-4, 1e-3, 5);
        const double t = pi / 2.0;
        auto factor = [&](int spacing, int cutoff) {
            const CodeSpec code = binomial_code(spacing, cutoff);
            const FidelityCurve scaled =
                fidelity_sweep(theorem1_hamiltonian(code, 1).h, code, gammas, t);
            const FidelityCurve single = fidelity_sweep(
                theorem2_hamiltonian(code, cutoff - 1).h, code, gammas, t);
            return geometric_ratio(scaled, single, 1e-3);
        };
        const double f33 = factor(3, 3);
        const double f44 = factor(4, 4);
        const double f55 = factor(5, 5);
        const bool ok = std::abs(f33 - 8.6) <= 0.20 * 8.6 &&
                        std::abs(f44 - 19.0) <= 0.25 * 19.0 &&
                        std::abs(f55 - 35.0) <= 0.25 * 35.0;
        const double secs = seconds_since(start);
        // Soft gate: the factors depend on recovery-construction constants,
        // so they are reported but do not decide the exit status.
        report(8, "improvement factors", ok,
               fmt("soft gate; 8.6 -> %.2f, 19 -> %.1f, 35 -> %.1f, %.0f s", f33, f44, f55,
                   secs),
               false);
    });

    // 9. Independent cross-checks between the constructions.
    guarded(9, "construction cross-checks", [&] {
        double solver_dev = 0.0;
        for (int spacing = 2; spacing <= 6; ++spacing)
            for (int cutoff = 2; cutoff <= 6; ++cutoff)
                for (int l = 1; l < std::min(spacing, cutoff); ++l) {
                    const CodeSpec code = binomial_code(spacing, cutoff);
                    solver_dev = std::max(
                        solver_dev,
                        max_abs(theorem2_hamiltonian(code, l).h -
                                direct_solve_hamiltonian(code, ErrorSet::jumps_only(l), {1})
                                    .h));
                }

        double word_gap = 0.0;  // 1 - overlap between closed-form and orthogonalized words
        for (int spacing = 2; spacing <= 5; ++spacing)
            for (int cutoff = 2; cutoff <= 5; ++cutoff) {
                const CodeSpec code = binomial_code(spacing, cutoff);
                const int l = std::min(spacing, cutoff) - 1;
                const auto words =
                    orthogonalized_error_words(code, ErrorSet::jumps_only(l));
                for (int m = 1; m <= l; ++m) {
                    const ErrorWords closed = jump_error_words(code, m);
                    word_gap = std::max(
                        word_gap,
                        1.0 - std::abs(words[m].plus_word().dot(closed.plus_word())));
                    word_gap = std::max(
                        word_gap,
                        1.0 - std::abs(words[m].minus_word().dot(closed.minus_word())));
                }
            }

        double lemma_res = 0.0;
        for (int spacing = 2; spacing <= 6; ++spacing)
            for (int cutoff = 2; cutoff <= 6; ++cutoff) {
                const CodeSpec code = binomial_code(spacing, cutoff);
                for (int l = 0; l < cutoff; ++l) {
                    const Eigen::VectorXd w = lemma1_decompose(code, l);
                    for (int k = 0; k <= cutoff; ++k) {
                        double s = 0.0;
                        for (Eigen::Index j = 0; j < w.size(); ++j)
                            s += w(j) * binomial_coefficient(l + 1, k - int(j));
                        lemma_res = std::max(lemma_res,
                                             std::abs(s - std::norm(code.coeffs(k))));
                    }
                }
            }

        report(9, "construction cross-checks",
               solver_dev <= 1e-10 && word_gap <= 1e-10 && lemma_res <= 1e-10,
               fmt("solver dev %.2e, word gap %.2e, lemma residual %.2e", solver_dev,
                   word_gap, lemma_res));
    });

    // 10. Channel sanity: Kraus completeness, lossless fidelity, step control.
    guarded(10, "channel sanity", [&] {
        double completeness = 0.0;
        for (Eigen::Index dim : {8, 17})
            for (double gamma : {0.0, 0.017, 0.3, 0.9}) {
                Mat total = Mat::Zero(dim, dim);
                for (int m = 0; m < dim; ++m) {
                    const Mat e = loss_kraus(gamma, m, dim);
                    total += e.adjoint() * e;
                }
                completeness =
                    std::max(completeness, max_abs(total - Mat::Identity(dim, dim)));
            }

        const CodeSpec code = binomial_code(3, 3);
        const Mat h = theorem1_hamiltonian(code, 1).h;
        const double t = pi / 2.0;
        const double lossless = std::abs(process_fidelity(h, code, 0.0, t) - 1.0);

        const double kappa = LossParams::from_gamma(0.01, t).kappa;
        const double fine =
            1.0 - process_fidelity(h, code, kappa, t, {.steps = 2000, .check = false});
        const double coarse =
            1.0 - process_fidelity(h, code, kappa, t, {.steps = 1000, .check = false});
        const double drift = std::abs(fine - coarse) / std::max(1e-300, std::abs(fine));

        report(10, "channel sanity",
               completeness <= 1e-10 && lossless <= 1e-9 && drift < 0.01,
               fmt("completeness %.2e, lossless dev %.2e, step drift %.2e%%", completeness,
                   lossless, 100.0 * drift));
    });

    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
