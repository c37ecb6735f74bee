#include "pnest/codes.hpp"

#include <cmath>

namespace pnest {

double binomial_coefficient(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * double(n - k + i) / double(i);
    return std::round(v);
}

CodeSpec make_code(int spacing, int cutoff, Vec coeffs, std::string family) {
    if (spacing < 1 || cutoff < 1)
        throw std::invalid_argument("make_code: spacing and cutoff must be >= 1");
    if (coeffs.size() != cutoff + 1)
        throw std::invalid_argument("make_code: need cutoff + 1 coefficients");
    double even = 0.0, odd = 0.0;
    for (int k = 0; k <= cutoff; ++k) {
        const double a2 = std::norm(coeffs(k));
        if (!std::isfinite(a2)) throw std::invalid_argument("make_code: non-finite coefficient");
        (k % 2 == 0 ? even : odd) += a2;
    }
    if (even <= 0.0 || odd <= 0.0)
        throw std::invalid_argument("make_code: each parity needs a nonzero coefficient");
    for (int k = 0; k <= cutoff; ++k) coeffs(k) /= std::sqrt(k % 2 == 0 ? even : odd);
    return CodeSpec{spacing, cutoff, std::move(coeffs), std::move(family)};
}

CodeSpec binomial_code(int spacing, int cutoff) {
    Vec c(cutoff + 1);
    for (int k = 0; k <= cutoff; ++k) c(k) = std::sqrt(binomial_coefficient(cutoff, k));
    return make_code(spacing, cutoff, std::move(c), "binomial");
}

std::pair<Vec, Vec> codewords(const CodeSpec& code) {
    Vec zero = Vec::Zero(code.dim());
    Vec one = Vec::Zero(code.dim());
    for (int k = 0; k <= code.cutoff; ++k)
        (k % 2 == 0 ? zero : one)(Eigen::Index(k) * code.spacing) = code.coeffs(k);
    return {zero, one};
}

std::pair<Vec, Vec> dual_codewords(const CodeSpec& code) {
    auto [zero, one] = codewords(code);
    const double s = 1.0 / std::sqrt(2.0);
    return {((zero + one) * s).eval(), ((zero - one) * s).eval()};
}

namespace {

// eps_k^m = sqrt((kN - m + 1) ... (kN)); zero when a^m annihilates |kN>.
double jump_factor(int k, int jumps, int spacing) {
    const long n = long(k) * spacing;
    if (n < jumps) return 0.0;
    double v = 1.0;
    for (int i = 0; i < jumps; ++i) v *= std::sqrt(double(n - i));
    return v;
}

}  // namespace

ErrorWords jump_error_words(const CodeSpec& code, int jumps) {
    if (jumps < 0) throw std::invalid_argument("jump_error_words: jumps must be >= 0");
    double even = 0.0, odd = 0.0;
    for (int k = 0; k <= code.cutoff; ++k) {
        const double w = std::norm(code.coeffs(k)) *
                         std::pow(jump_factor(k, jumps, code.spacing), 2);
        (k % 2 == 0 ? even : odd) += w;
    }
    if (even < 1e-24 || odd < 1e-24)
        throw DegenerateError("jump_error_words: a^" + std::to_string(jumps) +
                              " annihilates a codeword");
    const double norm_const = std::sqrt(2.0 / (even + odd));

    ErrorWords out;
    out.term = ErrorTerm{jumps, 0};
    out.norm_const = norm_const;
    out.zero_word = Vec::Zero(code.dim());
    out.one_word = Vec::Zero(code.dim());
    out.shifted_coeffs = Vec::Zero(code.cutoff + 1);
    for (int k = 0; k <= code.cutoff; ++k) {
        const Complex ck = norm_const * jump_factor(k, jumps, code.spacing) * code.coeffs(k);
        out.shifted_coeffs(k) = ck;
        const long n = long(k) * code.spacing - jumps;
        if (n < 0) continue;
        (k % 2 == 0 ? out.zero_word : out.one_word)(n) = ck;
    }
    return out;
}

std::vector<ErrorWords> orthogonalized_error_words(const CodeSpec& code, const ErrorSet& set) {
    if (set.terms.empty() || !(set.terms.front() == ErrorTerm{0, 0}))
        throw std::invalid_argument("orthogonalized_error_words: set must start with identity");
    auto [plus, minus] = dual_codewords(code);
    std::vector<Vec> plus_list{plus}, minus_list{minus};

    std::vector<ErrorWords> out;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t i = 0; i < set.terms.size(); ++i) {
        const auto& term = set.terms[i];
        Vec wp, wm;
        if (i == 0) {
            wp = plus;
            wm = minus;
        } else {
            const Mat e = error_operator(term, code.dim());
            wp = e * plus;
            wm = e * minus;
            const double scale = std::max(1.0, std::max(wp.norm(), wm.norm()));
            for (std::size_t j = 0; j < plus_list.size(); ++j) {
                wp -= plus_list[j].dot(wp) * plus_list[j];
                wm -= minus_list[j].dot(wm) * minus_list[j];
            }
            if (wp.norm() < 1e-12 * scale || wm.norm() < 1e-12 * scale)
                throw DegenerateError("orthogonalized_error_words: degenerate image for a^" +
                                      std::to_string(term.jumps) + " n^" +
                                      std::to_string(term.number_power));
            wp.normalize();
            wm.normalize();
            plus_list.push_back(wp);
            minus_list.push_back(wm);
        }
        ErrorWords w;
        w.term = term;
        w.zero_word = (wp + wm) * inv_sqrt2;
        w.one_word = (wp - wm) * inv_sqrt2;
        out.push_back(std::move(w));
    }
    return out;
}

KLReport check_knill_laflamme(const CodeSpec& code, const ErrorSet& set, double tol) {
    auto [zero, one] = codewords(code);
    std::vector<Vec> im0, im1;
    im0.reserve(set.size());
    im1.reserve(set.size());
    for (const auto& term : set.terms) {
        const Mat e = error_operator(term, code.dim());
        im0.push_back(e * zero);
        im1.push_back(e * one);
    }

    const Eigen::Index n = Eigen::Index(set.size());
    KLReport report;
    report.pair_overlaps.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex d00 = im0[i].dot(im0[j]);
            const Complex d11 = im1[i].dot(im1[j]);
            const Complex d01 = im0[i].dot(im1[j]);
            const Complex d10 = im1[i].dot(im0[j]);
            report.pair_overlaps(i, j) = 0.5 * (d00 + d11);
            const double v = std::max({0.5 * std::abs(d00 - d11), std::abs(d01), std::abs(d10)});
            report.max_violation = std::max(report.max_violation, v);
        }
    }
    report.passes = report.max_violation <= tol;
    return report;
}

MomentReport moment_check(const CodeSpec& code, int l) {
    if (l < 0) throw std::invalid_argument("moment_check: l must be >= 0");
    MomentReport report;
    report.sums = Eigen::VectorXd::Zero(l + 1);
    for (int p = 0; p <= l; ++p) {
        double s = 0.0;
        for (int k = 0; k <= code.cutoff; ++k) {
            const double sign = k % 2 == 0 ? 1.0 : -1.0;
            s += sign * std::pow(double(k), double(p)) * std::norm(code.coeffs(k));
        }
        report.sums(p) = s;
    }
    report.passes = report.sums.cwiseAbs().maxCoeff() <= 1e-10;
    return report;
}

Eigen::VectorXd lemma1_decompose(const CodeSpec& code, int l) {
    if (l < 0) throw std::invalid_argument("lemma1_decompose: l must be >= 0");
    const int order = l + 1;            // binomial order K' of each unit
    const int units = code.cutoff - l;  // shifts j = 0..units-1
    if (units < 1)
        throw NotCorrectable("lemma1_decompose: cutoff " + std::to_string(code.cutoff) +
                             " too small for l = " + std::to_string(l));
    Eigen::VectorXd s(code.cutoff + 1);
    for (int k = 0; k <= code.cutoff; ++k) s(k) = std::norm(code.coeffs(k));

    Eigen::VectorXd w(units);
    for (int j = 0; j < units; ++j) {
        w(j) = s(j);  // binom(order, 0) = 1 makes the system row echelon
        for (int k = j; k <= j + order; ++k) s(k) -= w(j) * binomial_coefficient(order, k - j);
    }
    if (s.cwiseAbs().maxCoeff() > 1e-10)
        throw NotCorrectable("lemma1_decompose: residual " +
                             std::to_string(s.cwiseAbs().maxCoeff()) +
                             " (moment conditions fail for l = " + std::to_string(l) + ")");
    return w;
}

}  // namespace pnest
