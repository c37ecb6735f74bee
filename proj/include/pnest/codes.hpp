#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pnest/fock.hpp"

namespace pnest {

// Exact binomial coefficient as a double (arguments stay small here).
double binomial_coefficient(int n, int k);

// Rotation-symmetric code on the Fock grid kN, k = 0..K: codewords split the
// coefficient vector by parity of k. Coefficients are normalized per parity
// (sum_even |c_k|^2 = sum_odd |c_k|^2 = 1).
struct CodeSpec {
    int spacing = 1;   // N, Fock-grid step
    int cutoff = 1;    // K, highest grid index
    Vec coeffs;        // c_k, k = 0..K
    std::string family = "custom";

    Eigen::Index dim() const { return Eigen::Index(spacing) * cutoff + 1; }
};

// Validate and per-parity normalize arbitrary coefficients.
CodeSpec make_code(int spacing, int cutoff, Vec coeffs, std::string family = "custom");

// Binomial code: c_k = sqrt(binom(K, k)), normalized per parity.
CodeSpec binomial_code(int spacing, int cutoff);

// Computational codewords |0_L> (even k) and |1_L> (odd k).
std::pair<Vec, Vec> codewords(const CodeSpec& code);

// Dual-basis codewords |+_L>, |-_L> = sum_k (+-1)^k c_k |kN> / sqrt(2).
std::pair<Vec, Vec> dual_codewords(const CodeSpec& code);

// Normalized states a code maps an error onto. zero/one live on shifted grids
// and inherit the codeword parity split; plus/minus are their duals.
struct ErrorWords {
    ErrorTerm term;
    Vec zero_word;
    Vec one_word;
    double norm_const = 1.0;  // N_m of the closed form; 1 when not applicable
    Vec shifted_coeffs;       // (c_m)_k = N_m eps_k c_k; empty when not applicable

    Vec plus_word() const { return ((zero_word + one_word) / std::sqrt(2.0)).eval(); }
    Vec minus_word() const { return ((zero_word - one_word) / std::sqrt(2.0)).eval(); }
};

// Closed-form words for a pure jump a^m:
//   |mu_{a^m}> = N_m sum_{k parity mu} eps_k^m c_k |kN - m>,
//   eps_k^m = sqrt((kN - m + 1) ... (kN)),  N_m = sqrt(2 / sum_k (eps_k^m)^2 |c_k|^2).
// DegenerateError if a^m annihilates either codeword.
ErrorWords jump_error_words(const CodeSpec& code, int jumps);

// Gram-Schmidt words for a whole error set, orthogonalizing each image
// E|+-_L> against all previously produced words of the same sign, in listed
// order. The identity term must come first and reproduces the codewords.
// DegenerateError if a projected image (relative) norm drops below 1e-12.
std::vector<ErrorWords> orthogonalized_error_words(const CodeSpec& code, const ErrorSet& set);

// Knill-Laflamme condition <mu|E_i^dag E_j|nu> = a_ij delta_munu over a set.
struct KLReport {
    Eigen::MatrixXcd pair_overlaps;  // a_ij estimates
    double max_violation = 0.0;
    bool passes = false;
};
KLReport check_knill_laflamme(const CodeSpec& code, const ErrorSet& set, double tol = 1e-10);

// Alternating moment sums sum_k (-1)^k k^p |c_k|^2 for p = 0..l; the code
// corrects E_l (for l < N) iff all of them vanish.
struct MomentReport {
    Eigen::VectorXd sums;
    bool passes = false;
};
MomentReport moment_check(const CodeSpec& code, int l);

// Decompose squared coefficients onto shifted binomial rows of order l+1:
//   |c_k|^2 = sum_j w_j binom(l+1, k - j),  j = 0..K-l-1.
// Solved by forward substitution on the row-echelon system; NotCorrectable if
// the residual exceeds 1e-10 (equivalent to a failed moment_check).
Eigen::VectorXd lemma1_decompose(const CodeSpec& code, int l);

}  // namespace pnest
