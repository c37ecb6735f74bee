#include "pnest/construct.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <map>

namespace pnest {

std::string to_string(Construction c) {
    switch (c) {
        case Construction::naive: return "naive";
        case Construction::theorem1: return "thm1";
        case Construction::theorem2: return "thm2";
        case Construction::direct: return "direct";
        case Construction::phase: return "phase";
        case Construction::basic: return "basic";
        case Construction::idle: return "idle";
    }
    throw std::logic_error("to_string: unknown construction");
}

Construction construction_from_string(const std::string& name) {
    if (name == "naive") return Construction::naive;
    if (name == "thm1") return Construction::theorem1;
    if (name == "thm2") return Construction::theorem2;
    if (name == "direct") return Construction::direct;
    if (name == "phase") return Construction::phase;
    if (name == "basic") return Construction::basic;
    if (name == "idle") return Construction::idle;
    throw std::invalid_argument("unknown construction '" + name + "'");
}

namespace {

bool amplitude_mixing(Construction tag) {
    return tag != Construction::phase && tag != Construction::idle;
}

// Shared post-construction bookkeeping: block decomposition, squeezing
// orders, and sanity checks every construction must satisfy.
EtHamiltonian assemble(Mat h, const CodeSpec& code, Construction tag, ErrorSet target) {
    EtHamiltonian out;
    out.h = std::move(h);
    out.code = code;
    out.tag = tag;
    out.target = std::move(target);
    if (!is_hermitian(out.h))
        throw std::logic_error("assemble: " + to_string(tag) + " produced a non-hermitian H");
    out.blocks = to_parity_blocks(out.h, code.spacing);
    out.orders = squeezing_orders(out.h, code.spacing);
    if (amplitude_mixing(tag)) {
        auto [plus, minus] = dual_codewords(code);
        const double scale = std::max(1.0, max_abs(out.h));
        if ((out.h * plus - plus).norm() > 1e-8 * scale ||
            (out.h * minus + minus).norm() > 1e-8 * scale)
            throw std::logic_error("assemble: " + to_string(tag) +
                                   " lost the +-1 logical eigenstructure");
    }
    return out;
}

}  // namespace

EtHamiltonian naive_et_hamiltonian(const CodeSpec& code, const ErrorSet& set) {
    const KLReport kl = check_knill_laflamme(code, set, 1e-8);
    if (!kl.passes)
        throw NotCorrectable("naive_et_hamiltonian: Knill-Laflamme violation " +
                             std::to_string(kl.max_violation));
    Mat h = Mat::Zero(code.dim(), code.dim());
    for (const auto& w : orthogonalized_error_words(code, set)) {
        const Vec plus = w.plus_word(), minus = w.minus_word();
        h += plus * plus.adjoint() - minus * minus.adjoint();
    }
    return assemble(std::move(h), code, Construction::naive, set);
}

EtHamiltonian theorem1_hamiltonian(const CodeSpec& code, int l) {
    if (l < 0) throw std::invalid_argument("theorem1_hamiltonian: l must be >= 0");
    if (l >= code.spacing)
        throw NotCorrectable("theorem1_hamiltonian: spacing " + std::to_string(code.spacing) +
                             " cannot resolve l = " + std::to_string(l) + " jump sectors");
    const Eigen::VectorXd weights = lemma1_decompose(code, l);
    const int order = l + 1;
    const int units = code.cutoff - l;
    const double parity_sum = std::pow(2.0, order - 1);  // per-parity mass of one unit
    const ErrorSet target = ErrorSet::full_set(l);

    // Running mixture: parity blocks, real coefficients, accumulated weight.
    std::vector<Mat> cur;
    Eigen::VectorXd cur_sq, cur_c;
    double cur_w = 0.0;

    for (int j = 0; j < units; ++j) {
        const double alpha = weights(j) * parity_sum;
        if (alpha < -1e-10)
            throw NotCorrectable("theorem1_hamiltonian: negative unit weight " +
                                 std::to_string(alpha));
        if (alpha <= 1e-14) continue;

        Vec uc = Vec::Zero(code.cutoff + 1);
        for (int k = j; k <= j + order; ++k)
            uc(k) = std::sqrt(binomial_coefficient(order, k - j) / parity_sum);
        const CodeSpec unit = make_code(code.spacing, code.cutoff, uc, "unit");
        const EtHamiltonian unit_h = naive_et_hamiltonian(unit, target);

        Eigen::VectorXd usq(code.cutoff + 1), ucr(code.cutoff + 1);
        for (int k = 0; k <= code.cutoff; ++k) {
            ucr(k) = unit.coeffs(k).real();
            usq(k) = ucr(k) * ucr(k);
        }

        if (cur.empty()) {
            cur = unit_h.blocks.blocks;
            cur_sq = usq;
            cur_c = ucr;
            cur_w = alpha;
            continue;
        }

        // One recombination step: mix the running Hamiltonian with the next
        // unit, re-expressing entries in the mixture coefficients.
        const double new_w = cur_w + alpha;
        Eigen::VectorXd new_sq(code.cutoff + 1), new_c(code.cutoff + 1);
        for (int k = 0; k <= code.cutoff; ++k) {
            new_sq(k) = std::max(0.0, (cur_w * cur_sq(k) + alpha * usq(k)) / new_w);
            new_c(k) = std::sqrt(new_sq(k));
        }
        for (std::size_t s = 0; s < cur.size(); ++s) {
            const int base = s == 0 ? 0 : 1;
            Mat next = Mat::Zero(cur[s].rows(), cur[s].cols());
            for (Eigen::Index r = 0; r < next.rows(); ++r) {
                const int k = int(r) + base;
                const double dk = new_c(k) < 1e-14 ? 1.0 : new_c(k);
                for (Eigen::Index c2 = 0; c2 < next.cols(); ++c2) {
                    const int k2 = int(c2) + base;
                    const double dk2 = new_c(k2) < 1e-14 ? 1.0 : new_c(k2);
                    next(r, c2) = (cur_w * cur[s](r, c2) * cur_c(k) * cur_c(k2) +
                                   alpha * unit_h.blocks.blocks[s](r, c2) * ucr(k) * ucr(k2)) /
                                  (new_w * dk * dk2);
                }
            }
            cur[s] = std::move(next);
        }
        cur_sq = new_sq;
        cur_c = new_c;
        cur_w = new_w;
    }
    if (cur.empty()) throw std::logic_error("theorem1_hamiltonian: no units contributed");

    // The mixture must reproduce the target magnitudes; restore target phases.
    Vec denom(code.cutoff + 1);
    for (int k = 0; k <= code.cutoff; ++k) {
        if (std::abs(std::abs(code.coeffs(k)) - cur_c(k)) > 1e-8)
            throw std::logic_error("theorem1_hamiltonian: mixture coefficients diverged");
        denom(k) = std::abs(code.coeffs(k)) < 1e-14 ? Complex(1.0) : code.coeffs(k);
    }
    ParityBlocks pb;
    pb.spacing = code.spacing;
    pb.cutoff = code.cutoff;
    for (std::size_t s = 0; s < cur.size(); ++s) {
        const int base = s == 0 ? 0 : 1;
        Mat block = Mat::Zero(cur[s].rows(), cur[s].cols());
        for (Eigen::Index r = 0; r < block.rows(); ++r)
            for (Eigen::Index c2 = 0; c2 < block.cols(); ++c2)
                block(r, c2) = cur[s](r, c2) * cur_c(int(r) + base) * cur_c(int(c2) + base) /
                               (std::conj(denom(int(r) + base)) * denom(int(c2) + base));
        pb.blocks.push_back(std::move(block));
    }
    return assemble(from_parity_blocks(pb), code, Construction::theorem1, target);
}

EtHamiltonian theorem2_hamiltonian(const CodeSpec& code, int l) {
    if (l < 0) throw std::invalid_argument("theorem2_hamiltonian: l must be >= 0");
    if (l >= code.spacing)
        throw NotCorrectable("theorem2_hamiltonian: spacing " + std::to_string(code.spacing) +
                             " cannot resolve l = " + std::to_string(l) + " jump sectors");
    ParityBlocks pb;
    pb.spacing = code.spacing;
    pb.cutoff = code.cutoff;
    pb.blocks.push_back(Mat::Zero(code.cutoff + 1, code.cutoff + 1));
    for (int s = 1; s < code.spacing; ++s)
        pb.blocks.push_back(Mat::Zero(code.cutoff, code.cutoff));

    for (int m = 0; m <= l; ++m) {
        const ErrorWords words = jump_error_words(code, m);
        const Vec& sc = words.shifted_coeffs;
        double alternating = 0.0;
        for (int k = 0; k <= code.cutoff; ++k)
            alternating += (k % 2 == 0 ? 1.0 : -1.0) * std::norm(sc(k));
        if (std::abs(alternating) > 2e-10)
            throw NotCorrectable("theorem2_hamiltonian: code does not correct a^" +
                                 std::to_string(m) + " (alternating sum " +
                                 std::to_string(alternating) + ")");
        const int kmin = m == 0 ? 0 : 1;
        Mat& block = pb.blocks[m];
        for (int k = kmin; k < code.cutoff; ++k) {
            double num = 0.0;
            for (int j = kmin; j <= k; ++j)
                num += ((j + k) % 2 == 0 ? 1.0 : -1.0) * std::norm(sc(j));
            const Complex den = std::conj(sc(k)) * sc(k + 1);
            Complex v;
            if (std::abs(den) < 1e-14) {
                if (std::abs(num) > 1e-12)
                    throw DegenerateError(
                        "theorem2_hamiltonian: vanishing shifted coefficient at k = " +
                        std::to_string(k) + " blocks the chain");
                v = Complex(0.0);
            } else {
                v = num / den;
            }
            block(k - kmin, k + 1 - kmin) = v;
            block(k + 1 - kmin, k - kmin) = std::conj(v);
        }
    }
    return assemble(from_parity_blocks(pb), code, Construction::theorem2,
                    ErrorSet::jumps_only(l));
}

EtHamiltonian direct_solve_hamiltonian(const CodeSpec& code, const ErrorSet& set,
                                       const std::vector<int>& allowed_odd) {
    if (allowed_odd.empty())
        throw std::invalid_argument("direct_solve_hamiltonian: allowed set is empty");
    for (int j : allowed_odd)
        if (j < 1 || j % 2 == 0)
            throw std::invalid_argument(
                "direct_solve_hamiltonian: allowed off-diagonals must be odd and positive");
    for (const auto& t : set.terms)
        if (t.jumps >= code.spacing)
            throw std::invalid_argument(
                "direct_solve_hamiltonian: jump power must stay below the spacing");

    auto [plus, minus] = dual_codewords(code);
    std::map<int, std::vector<ErrorTerm>> by_sector;
    for (const auto& t : set.terms) by_sector[t.jumps].push_back(t);

    ParityBlocks pb;
    pb.spacing = code.spacing;
    pb.cutoff = code.cutoff;
    pb.blocks.push_back(Mat::Zero(code.cutoff + 1, code.cutoff + 1));
    for (int s = 1; s < code.spacing; ++s)
        pb.blocks.push_back(Mat::Zero(code.cutoff, code.cutoff));

    for (const auto& [sector, terms] : by_sector) {
        const int kmin = sector == 0 ? 0 : 1;
        const int width = code.cutoff + 1 - kmin;

        // Unknowns: one complex entry per allowed off-diagonal position.
        std::vector<std::pair<int, int>> vars;
        for (int j : allowed_odd)
            for (int k = kmin; k + j <= code.cutoff; ++k) vars.emplace_back(k, k + j);

        std::vector<Vec> images;
        std::vector<double> signs;
        for (const auto& t : terms) {
            const Mat e = error_operator(t, code.dim());
            for (double sign : {1.0, -1.0}) {
                const Vec full = e * (sign > 0 ? plus : minus);
                Vec w(width);
                for (int k = kmin; k <= code.cutoff; ++k)
                    w(k - kmin) = full(Eigen::Index(k) * code.spacing - sector);
                images.push_back(std::move(w));
                signs.push_back(sign);
            }
        }

        const Eigen::Index rows = 2 * Eigen::Index(images.size()) * width;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, 2 * Eigen::Index(vars.size()));
        Eigen::VectorXd b(rows);
        Eigen::Index row = 0;
        for (std::size_t i = 0; i < images.size(); ++i) {
            const Vec& w = images[i];
            for (int k = kmin; k <= code.cutoff; ++k) {
                Eigen::VectorXcd coeff = Eigen::VectorXcd::Zero(vars.size());
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    // Row k of H w picks up x * w(k') for pair (k, k') and
                    // conj(x) * w(k'') for pair (k'', k).
                    if (vars[v].first == k) coeff(v) += w(vars[v].second - kmin);
                    if (vars[v].second == k) {
                        const Complex wc = w(vars[v].first - kmin);
                        a(row, 2 * v) += wc.real();
                        a(row, 2 * v + 1) += wc.imag();
                        a(row + 1, 2 * v) += wc.imag();
                        a(row + 1, 2 * v + 1) -= wc.real();
                    }
                }
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    a(row, 2 * v) += coeff(v).real();
                    a(row, 2 * v + 1) -= coeff(v).imag();
                    a(row + 1, 2 * v) += coeff(v).imag();
                    a(row + 1, 2 * v + 1) += coeff(v).real();
                }
                const Complex rhs = signs[i] * w(k - kmin);
                b(row) = rhs.real();
                b(row + 1) = rhs.imag();
                row += 2;
            }
        }

        Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * Eigen::Index(vars.size()));
        double residual = b.norm();
        if (vars.size() > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd;
            svd.setThreshold(1e-9);
            svd.compute(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
            x = svd.solve(b);
            residual = (a * x - b).norm();
        }
        if (residual > 1e-8 * (1.0 + b.norm()))
            throw InconsistentSystem("direct_solve_hamiltonian: sector " +
                                     std::to_string(sector) + " residual " +
                                     std::to_string(residual));
        Mat& block = pb.blocks[sector];
        for (std::size_t v = 0; v < vars.size(); ++v) {
            const Complex xv(x(2 * v), x(2 * v + 1));
            block(vars[v].first - kmin, vars[v].second - kmin) = xv;
            block(vars[v].second - kmin, vars[v].first - kmin) = std::conj(xv);
        }
    }
    return assemble(from_parity_blocks(pb), code, Construction::direct, set);
}

EtHamiltonian phase_gate_hamiltonian(const CodeSpec& code, double theta, int l) {
    if (l < 0) throw std::invalid_argument("phase_gate_hamiltonian: l must be >= 0");
    if (l >= code.spacing)
        throw NotCorrectable("phase_gate_hamiltonian: spacing " + std::to_string(code.spacing) +
                             " cannot resolve l = " + std::to_string(l) + " jump sectors");
    const KLReport kl = check_knill_laflamme(code, ErrorSet::jumps_only(l), 1e-8);
    if (!kl.passes)
        throw NotCorrectable("phase_gate_hamiltonian: Knill-Laflamme violation " +
                             std::to_string(kl.max_violation));
    Mat h = Mat::Zero(code.dim(), code.dim());
    for (int m = 0; m <= l; ++m) {
        for (int k = 0; k <= code.cutoff; ++k) {
            const Eigen::Index n = Eigen::Index(k) * code.spacing - m;
            if (n < 0 || std::abs(code.coeffs(k)) < 1e-14) continue;
            if (k % 2 == 1) h(n, n) = theta;
        }
    }
    return assemble(std::move(h), code, Construction::phase, ErrorSet::full_set(l));
}

EtHamiltonian basic_gate_hamiltonian(const CodeSpec& code) {
    auto [zero, one] = codewords(code);
    Mat h = zero * one.adjoint() + one * zero.adjoint();
    return assemble(std::move(h), code, Construction::basic, ErrorSet::full_set(0));
}

EtHamiltonian idle_hamiltonian(const CodeSpec& code) {
    return assemble(Mat::Zero(code.dim(), code.dim()), code, Construction::idle,
                    ErrorSet::full_set(0));
}

EtReport check_error_transparency(const Mat& h, const CodeSpec& code, const ErrorSet& set,
                                  double tol) {
    if (h.rows() != code.dim() || h.cols() != code.dim())
        throw std::invalid_argument("check_error_transparency: dimension mismatch");
    auto [zero, one] = codewords(code);
    EtReport report;
    report.scale = max_abs(h);
    for (const auto& term : set.terms) {
        const Mat e = error_operator(term, code.dim());
        double r = 0.0;
        for (const Vec& mu : {zero, one})
            r = std::max(r, ((e * (h * mu)) - h * (e * mu)).norm());
        report.entries.push_back({term, r});
        report.max_residual = std::max(report.max_residual, r);
    }
    report.passes = report.max_residual <= tol * report.scale;
    return report;
}

EtReport check_general_et(const Mat& h, const CodeSpec& code, const ErrorSet& set, double tol) {
    if (h.rows() != code.dim() || h.cols() != code.dim())
        throw std::invalid_argument("check_general_et: dimension mismatch");
    auto [zero, one] = codewords(code);
    const Mat pc = zero * zero.adjoint() + one * one.adjoint();
    const Eigen::Index d2 = code.dim() * code.dim();

    std::vector<Mat> eps;
    Eigen::MatrixXcd basis(d2, Eigen::Index(set.size()));
    for (std::size_t i = 0; i < set.terms.size(); ++i) {
        eps.push_back(error_operator(set.terms[i], code.dim()) * pc);
        basis.col(Eigen::Index(i)) = Eigen::Map<const Vec>(eps.back().data(), d2);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(basis, Eigen::ComputeThinU);
    Eigen::Index rank = 0;
    const double smax = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
    while (rank < svd.singularValues().size() &&
           svd.singularValues()(rank) > 1e-12 * std::max(smax, 1e-300))
        ++rank;
    const Eigen::MatrixXcd q = svd.matrixU().leftCols(rank);

    EtReport report;
    report.scale = max_abs(h);
    const double hf = h.norm();  // Frobenius
    for (std::size_t i = 0; i < set.terms.size(); ++i) {
        const Mat comm = h * eps[i] - eps[i] * h;
        const Vec x = Eigen::Map<const Vec>(comm.data(), d2);
        const double off = (x - q * (q.adjoint() * x)).norm();
        const double scale = hf * eps[i].norm();
        const double r = scale > 1e-300 ? off / scale : 0.0;
        report.entries.push_back({set.terms[i], r});
        report.max_residual = std::max(report.max_residual, r);
    }
    report.passes = report.max_residual <= tol;
    return report;
}

WitnessReport min_squeezing_witness(const CodeSpec& code, int l, const WitnessConfig& cfg) {
    if (l < 0) throw std::invalid_argument("min_squeezing_witness: l must be >= 0");
    if (std::abs(cfg.alpha) < 1e-14)
        throw std::invalid_argument("min_squeezing_witness: alpha must be nonzero");
    if (std::abs(code.coeffs(0)) < 1e-14)
        throw std::invalid_argument("min_squeezing_witness: code needs support on |0>");

    auto coeff = [&](int j) {
        return j <= code.cutoff ? code.coeffs(j) : Complex(0.0);
    };
    std::vector<int> odd = cfg.odd_columns;
    for (std::size_t i = 0; i < odd.size(); ++i) {
        if (odd[i] < 1 || odd[i] % 2 == 0)
            throw std::invalid_argument("min_squeezing_witness: odd columns must be odd >= 1");
        for (std::size_t j = i + 1; j < odd.size(); ++j)
            if (odd[i] == odd[j])
                throw std::invalid_argument("min_squeezing_witness: duplicate odd column");
    }
    std::vector<int> even = cfg.even_columns;
    if (even.empty()) {
        for (int k = 0; k <= code.cutoff; k += 2)
            if (std::abs(code.coeffs(k)) > 1e-14) even.push_back(k);
    } else {
        for (std::size_t i = 0; i < even.size(); ++i) {
            if (even[i] < 0 || even[i] % 2 == 1 || std::abs(coeff(even[i])) < 1e-14)
                throw std::invalid_argument(
                    "min_squeezing_witness: even columns must be even with nonzero c_k");
            for (std::size_t j = i + 1; j < even.size(); ++j)
                if (even[i] == even[j])
                    throw std::invalid_argument("min_squeezing_witness: duplicate even column");
        }
    }

    const int half = l / 2;
    const Eigen::Index rows = 2 * (half + 1);
    const Eigen::Index cols = Eigen::Index(odd.size() + even.size());
    WitnessReport report;
    report.system = Eigen::MatrixXcd::Zero(rows, cols);
    report.rhs = Vec::Zero(rows);
    for (int p = 0; p <= half; ++p) {
        for (std::size_t i = 0; i < odd.size(); ++i) {
            const Complex v = std::pow(double(odd[i]), double(p)) * coeff(odd[i]);
            report.system(p, Eigen::Index(i)) = cfg.alpha * v;
            report.system(half + 1 + p, Eigen::Index(i)) = -v;
        }
        for (std::size_t i = 0; i < even.size(); ++i) {
            // 0^0 = 1 keeps the j = 0 column meaningful at p = 0.
            const double jp = even[i] == 0 ? (p == 0 ? 1.0 : 0.0)
                                           : std::pow(double(even[i]), double(p));
            const Complex v = jp * coeff(even[i]);
            report.system(p, Eigen::Index(odd.size() + i)) = v;
            report.system(half + 1 + p, Eigen::Index(odd.size() + i)) = std::conj(cfg.alpha) * v;
        }
    }
    report.rhs(0) = code.coeffs(0);
    report.rhs(half + 1) = -std::conj(cfg.alpha) * code.coeffs(0);

    auto rank_of = [&](const Eigen::MatrixXcd& m) {
        if (m.cols() == 0) return 0;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        const double smax = svd.singularValues()(0);
        int r = 0;
        while (r < svd.singularValues().size() &&
               svd.singularValues()(r) > cfg.rank_tol * std::max(smax, 1e-300))
            ++r;
        return r;
    };
    report.rank = rank_of(report.system);
    Eigen::MatrixXcd aug(rows, cols + 1);
    aug.leftCols(cols) = report.system;
    aug.col(cols) = report.rhs;
    report.rank_augmented = rank_of(aug);
    report.consistent = report.rank_augmented == report.rank;
    return report;
}

Mat spin_jx(int two_j) {
    if (two_j < 0) throw std::invalid_argument("spin_jx: two_j must be >= 0");
    Mat jx = Mat::Zero(two_j + 1, two_j + 1);
    for (int k = 0; k < two_j; ++k) {
        const double v = 0.5 * std::sqrt(double(k + 1) * double(two_j - k));
        jx(k, k + 1) = v;
        jx(k + 1, k) = v;
    }
    return jx;
}

}  // namespace pnest
