#pragma once

#include <string>
#include <vector>

#include "pnest/codes.hpp"

namespace pnest {

// Pure-loss channel strength: kappa is the Lindblad rate, t the gate time,
// and gamma = 1 - e^(-kappa t) the total loss fraction.
struct LossParams {
    double kappa = 0.0;
    double t = 0.0;

    double gamma() const;
    static LossParams from_kappa(double kappa, double t);
    static LossParams from_gamma(double gamma, double t);  // kappa = -ln(1-gamma)/t
};

// Kraus operator E_m of the pure-loss channel,
//   <n-m|E_m|n> = sqrt(binom(n, m)) gamma^(m/2) (1-gamma)^((n-m)/2).
// The set m = 0..dim-1 resolves the identity exactly on the truncation.
Mat loss_kraus(double gamma, int m, Eigen::Index dim);

// Coefficient of gamma^(l/2) in the series of the rescaled Kraus operator
//   E~_m = gamma^(m/2) (a^m / sqrt(m!)) (1-gamma)^(n/2);
// equal to (a^m / sqrt(m!)) diag((-1)^j binom(n/2, j)) with j = (l-m)/2.
// Requires l >= m with l - m even.
Mat kraus_taylor_term(int m, int l, Eigen::Index dim);

struct EvolveOptions {
    int steps = 0;      // 0 -> one step per (pi/2)/2000 of evolution time
    bool check = true;  // re-run at half resolution and compare
};

// Fixed-step RK4 integration of X' = -i[H,X] + kappa (a X a^dag - {n,X}/2)
// over [0,t]. StepSizeFailure if halving the step count moves the result by
// more than 1e-8 (relative).
Mat lindblad_evolve(const Mat& h, double kappa, double t, const Mat& x0,
                    const EvolveOptions& opts = {});

// Ideal recovery: per jump sector, map the Loewdin orthonormalization of
// {E_m|0_L>, E_m|1_L>} back onto the codewords; a final element projects onto
// the unrecovered complement so the channel is trace preserving.
struct RecoveryChannel {
    std::vector<Mat> kraus;
    double gamma = 0.0;

    Mat apply(const Mat& x) const;
};
RecoveryChannel recovery_channel(const CodeSpec& code, double gamma);

// Process fidelity of the noisy gate followed by recovery, relative to
// U = exp(-iHt):  F = (1/8) sum_M Tr[M_L R(L(U^dag M_L U))] over the four
// codespace Paulis M = P, X, Y, Z.
double process_fidelity(const Mat& h, const CodeSpec& code, double kappa, double t,
                        const EvolveOptions& opts = {});

struct FidelityPoint {
    double kappa = 0.0;
    double gamma = 0.0;
    double infidelity = 0.0;
};

struct FidelityCurve {
    std::vector<FidelityPoint> points;  // sorted by gamma
    double t = 0.0;
    std::vector<std::string> warnings;  // per-point failures, non-fatal
};

// Sweep gamma values (gate time fixed, kappa = -ln(1-gamma)/t per point).
FidelityCurve fidelity_sweep(const Mat& h, const CodeSpec& code,
                             const std::vector<double>& gammas, double t,
                             const EvolveOptions& opts = {});

// Least-squares line through (log10 gamma, log10 infidelity) for points with
// gamma < gamma_max; InsufficientPoints below 3 usable points.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};
SlopeFit fit_loglog_slope(const FidelityCurve& curve, double gamma_max);

}  // namespace pnest
