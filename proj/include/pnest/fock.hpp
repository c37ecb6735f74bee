#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <string>
#include <vector>

#include "pnest/errors.hpp"

namespace pnest {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using Mat = DenseMatrix<Complex>;
using Vec = DenseVector<Complex>;

// Largest entry magnitude; zero for empty matrices.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

// max|A - A^dag| <= tol * max|A| (entrywise, relative).
template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol = 1e-12) {
    const double scale = std::max(1.0, max_abs(a));
    return max_abs(a - a.adjoint()) <= tol * scale;
}

// Truncated annihilation operator a with <n-1|a|n> = sqrt(n).
template <typename Scalar = Complex>
DenseMatrix<Scalar> annihilation(Eigen::Index dim) {
    if (dim < 1) throw std::invalid_argument("annihilation: dim must be positive");
    DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = Scalar(std::sqrt(double(n)));
    return a;
}

// Number operator n = a^dag a.
template <typename Scalar = Complex>
DenseMatrix<Scalar> number_operator(Eigen::Index dim) {
    if (dim < 1) throw std::invalid_argument("number_operator: dim must be positive");
    DenseMatrix<Scalar> n = DenseMatrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = Scalar(double(k));
    return n;
}

// One monomial a^m n^k of the loss/dephasing expansion (n rightmost).
struct ErrorTerm {
    int jumps = 0;         // power of a
    int number_power = 0;  // power of n

    friend bool operator==(const ErrorTerm&, const ErrorTerm&) = default;
};

// Dense matrix of a^m n^k: entries <n-m| . |n> = sqrt(n!/(n-m)!) * n^k.
template <typename Scalar = Complex>
DenseMatrix<Scalar> error_operator(const ErrorTerm& term, Eigen::Index dim) {
    if (term.jumps < 0 || term.number_power < 0)
        throw std::invalid_argument("error_operator: powers must be non-negative");
    DenseMatrix<Scalar> e = DenseMatrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index n = term.jumps; n < dim; ++n) {
        double v = std::pow(double(n), double(term.number_power));
        for (int i = 0; i < term.jumps; ++i) v *= std::sqrt(double(n - i));
        e(n - term.jumps, n) = Scalar(v);
    }
    return e;
}

// Ordered collection of error terms; the identity term (0,0) comes first.
struct ErrorSet {
    std::vector<ErrorTerm> terms;
    std::string label = "custom";

    // E_l = { a^m n^k : m/2 + k <= l/2 }, ordered by m then k.
    static ErrorSet full_set(int l) {
        if (l < 0) throw std::invalid_argument("ErrorSet::full_set: l must be >= 0");
        ErrorSet set;
        set.label = "full";
        for (int m = 0; m <= l; ++m)
            for (int k = 0; 2 * k <= l - m; ++k) set.terms.push_back({m, k});
        return set;
    }

    // A_l = { a^m : m <= l }.
    static ErrorSet jumps_only(int l) {
        if (l < 0) throw std::invalid_argument("ErrorSet::jumps_only: l must be >= 0");
        ErrorSet set;
        set.label = "jumps";
        for (int m = 0; m <= l; ++m) set.terms.push_back({m, 0});
        return set;
    }

    std::size_t size() const { return terms.size(); }

    // Highest jump power appearing in the set.
    int max_jumps() const {
        int m = 0;
        for (const auto& t : terms) m = std::max(m, t.jumps);
        return m;
    }
};

// Projector onto Fock states with n = -sector (mod spacing).
template <typename Scalar = Complex>
DenseMatrix<Scalar> parity_projector(int spacing, int sector, Eigen::Index dim) {
    if (spacing < 1) throw std::invalid_argument("parity_projector: spacing must be >= 1");
    if (sector < 0 || sector >= spacing)
        throw std::invalid_argument("parity_projector: sector out of range");
    DenseMatrix<Scalar> p = DenseMatrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n)
        if ((n + sector) % spacing == 0) p(n, n) = Scalar(1);
    return p;
}

// Parity sector of Fock level n: states |kN - m> belong to sector m.
inline int parity_sector(Eigen::Index n, int spacing) {
    return int((spacing - n % spacing) % spacing);
}

// Row index of Fock level n inside its sector block (k of |kN - m>).
inline int parity_row(Eigen::Index n, int spacing) {
    return int((n + spacing - 1) / spacing);
}

// Permutation sorting Fock levels by parity sector: n -> ceil(n/N) + ((-n) mod N)*K.
// Block 0 occupies indices 0..K, block m >= 1 occupies mK+1..(m+1)K.
template <typename Scalar = Complex>
DenseMatrix<Scalar> parity_permutation(int spacing, int cutoff) {
    if (spacing < 1 || cutoff < 1)
        throw std::invalid_argument("parity_permutation: spacing and cutoff must be >= 1");
    const Eigen::Index dim = Eigen::Index(spacing) * cutoff + 1;
    DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        const int s = parity_sector(n, spacing);
        const Eigen::Index row = parity_row(n, spacing) + Eigen::Index(s) * cutoff;
        m(row, n) = Scalar(1);
    }
    return m;
}

// Diagonal blocks of a parity-nested operator in the permuted basis.
// Block 0 is (K+1)x(K+1) over Fock levels kN; blocks m = 1..N-1 are KxK over
// levels kN - m, k = 1..K. residual is the largest cross-sector magnitude.
template <typename Scalar>
struct ParityBlockDecomposition {
    int spacing = 1;
    int cutoff = 1;
    std::vector<DenseMatrix<Scalar>> blocks;
    double residual = 0.0;
};

using ParityBlocks = ParityBlockDecomposition<Complex>;

// Split H into parity-sector blocks; cross-sector entries above tol * max|H|
// raise ParityViolation.
template <typename Scalar>
ParityBlockDecomposition<Scalar> to_parity_blocks(const DenseMatrix<Scalar>& h, int spacing,
                                                  double tol = 1e-10) {
    if (spacing < 1) throw std::invalid_argument("to_parity_blocks: spacing must be >= 1");
    const Eigen::Index dim = h.rows();
    if (h.cols() != dim || dim < 1 || (dim - 1) % spacing != 0)
        throw std::invalid_argument("to_parity_blocks: dim must equal spacing*cutoff + 1");
    const int cutoff = int((dim - 1) / spacing);
    if (cutoff < 1) throw std::invalid_argument("to_parity_blocks: cutoff must be >= 1");

    ParityBlockDecomposition<Scalar> out;
    out.spacing = spacing;
    out.cutoff = cutoff;
    out.blocks.push_back(DenseMatrix<Scalar>::Zero(cutoff + 1, cutoff + 1));
    for (int s = 1; s < spacing; ++s)
        out.blocks.push_back(DenseMatrix<Scalar>::Zero(cutoff, cutoff));

    for (Eigen::Index p = 0; p < dim; ++p) {
        const int sp = parity_sector(p, spacing);
        for (Eigen::Index q = 0; q < dim; ++q) {
            const int sq = parity_sector(q, spacing);
            if (sp == sq) {
                const int base = sp == 0 ? 0 : 1;
                out.blocks[sp](parity_row(p, spacing) - base, parity_row(q, spacing) - base) =
                    h(p, q);
            } else {
                out.residual = std::max(out.residual, double(std::abs(h(p, q))));
            }
        }
    }
    if (out.residual > tol * std::max(1e-300, max_abs(h)))
        throw ParityViolation("to_parity_blocks: cross-sector residual " +
                              std::to_string(out.residual));
    return out;
}

// Reassemble a full-space operator from parity-sector blocks (exact inverse
// of to_parity_blocks for parity-nested input).
template <typename Scalar>
DenseMatrix<Scalar> from_parity_blocks(const ParityBlockDecomposition<Scalar>& pb) {
    const Eigen::Index dim = Eigen::Index(pb.spacing) * pb.cutoff + 1;
    DenseMatrix<Scalar> h = DenseMatrix<Scalar>::Zero(dim, dim);
    for (Eigen::Index p = 0; p < dim; ++p) {
        const int sp = parity_sector(p, pb.spacing);
        const int base = sp == 0 ? 0 : 1;
        for (Eigen::Index q = 0; q < dim; ++q) {
            if (parity_sector(q, pb.spacing) != sp) continue;
            h(p, q) = pb.blocks[sp](parity_row(p, pb.spacing) - base,
                                    parity_row(q, pb.spacing) - base);
        }
    }
    return h;
}

// Block off-diagonal orders j >= 1 with an entry above tol * max|H|; these are
// the squeezing orders a^(jN)-like couplings the gate needs. Requires H
// parity nested at the same tolerance.
template <typename Scalar>
std::vector<int> squeezing_orders(const DenseMatrix<Scalar>& h, int spacing,
                                  double tol = 1e-10) {
    if (spacing < 1) throw std::invalid_argument("squeezing_orders: spacing must be >= 1");
    const Eigen::Index dim = h.rows();
    if (h.cols() != dim || dim < 1 || (dim - 1) % spacing != 0)
        throw std::invalid_argument("squeezing_orders: dim must equal spacing*cutoff + 1");
    const double thr = tol * std::max(1e-300, max_abs(h));
    std::set<int> orders;
    for (Eigen::Index p = 0; p < dim; ++p) {
        for (Eigen::Index q = 0; q < dim; ++q) {
            if (std::abs(h(p, q)) <= thr) continue;
            const Eigen::Index d = p > q ? p - q : q - p;
            if (d % spacing != 0)
                throw ParityViolation("squeezing_orders: operator is not parity nested");
            if (d > 0) orders.insert(int(d / spacing));
        }
    }
    return std::vector<int>(orders.begin(), orders.end());
}

}  // namespace pnest
