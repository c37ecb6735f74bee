#pragma once

#include <string>
#include <vector>

#include "pnest/codes.hpp"

namespace pnest {

enum class Construction { naive, theorem1, theorem2, direct, phase, basic, idle };

std::string to_string(Construction c);
Construction construction_from_string(const std::string& name);

// A synthesized gate Hamiltonian together with its parity-block view and the
// squeezing orders (block off-diagonals) it occupies.
struct EtHamiltonian {
    Mat h;
    CodeSpec code;
    Construction tag = Construction::idle;
    ErrorSet target;
    ParityBlocks blocks;
    std::vector<int> orders;
};

// Eigendecomposition construction H = sum_E (|+_E><+_E| - |-_E><-_E|) over
// the orthogonalized error words of the set. NotCorrectable if the code fails
// the Knill-Laflamme conditions for the set.
EtHamiltonian naive_et_hamiltonian(const CodeSpec& code, const ErrorSet& set);

// Squeezing-scaling construction: decompose the code into shifted binomial
// units of order l+1 (lemma1_decompose), build the naive Hamiltonian of each
// unit for the full set E_l, and recombine block by block with the running
// mixture weights. Uses floor(l/2) + 1 squeezing orders.
EtHamiltonian theorem1_hamiltonian(const CodeSpec& code, int l);

// Single-squeezing construction ET to the jump set A_l: nearest-neighbor
// chain per parity block with
//   (H_m)_{k,k+1} = sum_{j <= k} (-1)^{j+k} |(c_m)_j|^2 / ((c_m)_k^* (c_m)_{k+1}).
// NotCorrectable if an alternating shifted-coefficient sum is nonzero.
EtHamiltonian theorem2_hamiltonian(const CodeSpec& code, int l);

// Least-squares solve for a hermitian parity-nested Hamiltonian supported on
// the given odd block off-diagonals with E|+-_L> as +-1 eigenvectors for every
// set element. Minimum-norm solution; InconsistentSystem if the constraints
// cannot be met within 1e-8 (relative).
EtHamiltonian direct_solve_hamiltonian(const CodeSpec& code, const ErrorSet& set,
                                       const std::vector<int>& allowed_odd);

// Diagonal phase gate: phase 0 on the supports of a^m|0_L> and theta on the
// supports of a^m|1_L> for m = 0..l; ET to the full set E_l.
EtHamiltonian phase_gate_hamiltonian(const CodeSpec& code, double theta, int l);

// Bare logical flip |0_L><1_L| + h.c., ET only to the identity.
EtHamiltonian basic_gate_hamiltonian(const CodeSpec& code);

// Zero Hamiltonian (memory baseline).
EtHamiltonian idle_hamiltonian(const CodeSpec& code);

// Commutator check per error: residual_E = max_mu ||[E, H]|mu_L>||.
// passes iff every residual <= tol * max|H|.
struct EtReport {
    struct Entry {
        ErrorTerm term;
        double residual = 0.0;
    };
    std::vector<Entry> entries;
    double max_residual = 0.0;
    double scale = 0.0;  // max|H|
    bool passes = false;
};
EtReport check_error_transparency(const Mat& h, const CodeSpec& code, const ErrorSet& set,
                                  double tol = 1e-10);

// Subspace-closure check: with V = span{vec(E P_C)}, the residual per error is
// the part of vec([H, E P_C]) outside V, normalized by ||H||_F ||E P_C||_F.
// passes iff every residual <= tol.
EtReport check_general_et(const Mat& h, const CodeSpec& code, const ErrorSet& set,
                          double tol = 1e-10);

// Linear system of the minimum-squeezing argument: rows are the first-row
// eigenvector constraints <0|H_0 n^p|psi> = <0|n^p|psi> (p = 0..floor(l/2))
// for psi = |0_L> + alpha|1_L> and its orthogonal complement; columns are the
// candidate first-row matrix elements on the odd off-diagonals in J and on
// the even off-diagonals. The system is consistent iff such a Hamiltonian row
// can exist.
struct WitnessConfig {
    Complex alpha{1.0, 0.0};
    std::vector<int> odd_columns;   // J; sizes other than floor(l/2) allowed
    std::vector<int> even_columns;  // empty -> every even k with c_k != 0
    double rank_tol = 1e-9;
};
struct WitnessReport {
    bool consistent = false;
    int rank = 0;
    int rank_augmented = 0;
    Eigen::MatrixXcd system;
    Vec rhs;
};
WitnessReport min_squeezing_witness(const CodeSpec& code, int l, const WitnessConfig& cfg = {});

// Spin-J x operator, dimension two_j + 1: (J_x)_{k,k+1} = sqrt((k+1)(two_j - k))/2.
Mat spin_jx(int two_j);

}  // namespace pnest
