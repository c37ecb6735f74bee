#include "pnest/loss.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace pnest {

double LossParams::gamma() const { return -std::expm1(-kappa * t); }

LossParams LossParams::from_kappa(double kappa, double t) {
    if (kappa < 0.0 || t < 0.0)
        throw std::invalid_argument("LossParams: kappa and t must be >= 0");
    return {kappa, t};
}

LossParams LossParams::from_gamma(double gamma, double t) {
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("LossParams: gamma must be in [0, 1)");
    if (t <= 0.0) throw std::invalid_argument("LossParams: t must be positive");
    return {-std::log1p(-gamma) / t, t};
}

Mat loss_kraus(double gamma, int m, Eigen::Index dim) {
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("loss_kraus: gamma must be in [0, 1)");
    if (m < 0) throw std::invalid_argument("loss_kraus: m must be >= 0");
    Mat e = Mat::Zero(dim, dim);
    for (Eigen::Index n = m; n < dim; ++n)
        e(n - m, n) = std::sqrt(binomial_coefficient(int(n), m)) *
                      std::pow(gamma, 0.5 * m) * std::pow(1.0 - gamma, 0.5 * double(n - m));
    return e;
}

Mat kraus_taylor_term(int m, int l, Eigen::Index dim) {
    if (m < 0 || l < m || (l - m) % 2 != 0)
        throw std::invalid_argument("kraus_taylor_term: need l >= m with l - m even");
    const int j = (l - m) / 2;
    Mat term = Mat::Zero(dim, dim);
    double mfact = 1.0;
    for (int i = 2; i <= m; ++i) mfact *= i;
    for (Eigen::Index n = m; n < dim; ++n) {
        // Generalized binomial binom(n/2, j), sign (-1)^j folded in.
        double d = 1.0;
        for (int i = 0; i < j; ++i) d *= (0.5 * double(n) - i) / double(i + 1);
        double ladder = 1.0;
        for (int i = 0; i < m; ++i) ladder *= std::sqrt(double(n - i));
        term(n - m, n) = (j % 2 == 0 ? 1.0 : -1.0) * d * ladder / std::sqrt(mfact);
    }
    return term;
}

namespace {

int default_steps(double t) {
    const double base = (std::numbers::pi / 2.0) / 2000.0;
    return std::max(16, int(std::ceil(t / base)));
}

// One full RK4 run with n steps; the dissipator uses the shift structure of a
// directly so only the commutator costs matrix products.
Mat rk4_lindblad(const Mat& h, double kappa, double t, const Mat& x0, int n) {
    const Eigen::Index dim = x0.rows();
    Eigen::VectorXd num(dim);
    for (Eigen::Index i = 0; i < dim; ++i) num(i) = double(i);

    auto rhs = [&](const Mat& x) {
        Mat dx = Complex(0.0, -1.0) * (h * x - x * h);
        if (kappa > 0.0) {
            for (Eigen::Index i = 0; i < dim; ++i) {
                for (Eigen::Index j = 0; j < dim; ++j) {
                    Complex jump(0.0);
                    if (i + 1 < dim && j + 1 < dim)
                        jump = std::sqrt(double(i + 1) * double(j + 1)) * x(i + 1, j + 1);
                    dx(i, j) += kappa * (jump - 0.5 * (num(i) + num(j)) * x(i, j));
                }
            }
        }
        return dx;
    };

    const double dt = t / n;
    Mat x = x0;
    for (int s = 0; s < n; ++s) {
        const Mat k1 = rhs(x);
        const Mat k2 = rhs(x + (0.5 * dt) * k1);
        const Mat k3 = rhs(x + (0.5 * dt) * k2);
        const Mat k4 = rhs(x + dt * k3);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return x;
}

// exp(-iHt) through the eigendecomposition of hermitian H.
Mat gate_unitary(const Mat& h, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gate_unitary: eigendecomposition failed");
    Vec phases(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i) * t));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double fidelity_with_unitary(const Mat& h, const CodeSpec& code, const Mat& u, double kappa,
                             double t, const EvolveOptions& opts) {
    auto [zero, one] = codewords(code);
    const Mat paulis[4] = {
        zero * zero.adjoint() + one * one.adjoint(),
        zero * one.adjoint() + one * zero.adjoint(),
        Complex(0.0, 1.0) * (one * zero.adjoint() - zero * one.adjoint()),
        zero * zero.adjoint() - one * one.adjoint(),
    };
    const RecoveryChannel rec = recovery_channel(code, LossParams{kappa, t}.gamma());
    double f = 0.0;
    for (const Mat& m : paulis) {
        const Mat evolved = lindblad_evolve(h, kappa, t, u.adjoint() * m * u, opts);
        f += (m * rec.apply(evolved)).trace().real();
    }
    return f / 8.0;
}

}  // namespace

Mat lindblad_evolve(const Mat& h, double kappa, double t, const Mat& x0,
                    const EvolveOptions& opts) {
    if (kappa < 0.0 || t < 0.0)
        throw std::invalid_argument("lindblad_evolve: kappa and t must be >= 0");
    if (h.rows() != h.cols() || x0.rows() != x0.cols() || h.rows() != x0.rows())
        throw std::invalid_argument("lindblad_evolve: dimension mismatch");
    if (t == 0.0) return x0;
    const int n = opts.steps > 0 ? opts.steps : default_steps(t);
    const Mat x = rk4_lindblad(h, kappa, t, x0, n);
    if (opts.check && n >= 2) {
        const Mat coarse = rk4_lindblad(h, kappa, t, x0, n / 2);
        const double scale = std::max(1.0, max_abs(x));
        if (max_abs(x - coarse) > 1e-8 * scale)
            throw StepSizeFailure("lindblad_evolve: step halving moved the result by " +
                                  std::to_string(max_abs(x - coarse) / scale));
    }
    return x;
}

Mat RecoveryChannel::apply(const Mat& x) const {
    Mat out = Mat::Zero(x.rows(), x.cols());
    for (const Mat& k : kraus) out += k * x * k.adjoint();
    return out;
}

RecoveryChannel recovery_channel(const CodeSpec& code, double gamma) {
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("recovery_channel: gamma must be in [0, 1)");
    auto [zero, one] = codewords(code);
    const Eigen::Index dim = code.dim();

    RecoveryChannel rec;
    rec.gamma = gamma;
    Mat recovered = Mat::Zero(dim, dim);
    for (int m = 0; m < code.spacing; ++m) {
        const Mat e = loss_kraus(gamma, m, dim);
        const Vec v0 = e * zero, v1 = e * one;
        const double n0 = v0.norm(), n1 = v1.norm();
        if (n0 < 1e-150 && n1 < 1e-150) continue;
        Mat r;
        if (n0 < 1e-150 || n1 < 1e-150) {
            const Vec phi = (n0 >= n1 ? v0 / n0 : v1 / n1).eval();
            r = (n0 >= n1 ? zero : one) * phi.adjoint();
            recovered += phi * phi.adjoint();
        } else {
            Eigen::Matrix2cd gram;
            gram << v0.dot(v0), v0.dot(v1), v1.dot(v0), v1.dot(v1);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(gram);
            if (es.eigenvalues()(0) < 1e-24 * es.eigenvalues()(1))
                throw DegenerateError("recovery_channel: sector " + std::to_string(m) +
                                      " Gram matrix is singular");
            const Eigen::Matrix2cd isqrt =
                es.eigenvectors() *
                Eigen::Vector2d(1.0 / std::sqrt(es.eigenvalues()(0)),
                                1.0 / std::sqrt(es.eigenvalues()(1)))
                    .asDiagonal() *
                es.eigenvectors().adjoint();
            Mat v(dim, 2);
            v.col(0) = v0;
            v.col(1) = v1;
            const Mat phi = v * isqrt;  // Loewdin pair
            r = zero * phi.col(0).adjoint() + one * phi.col(1).adjoint();
            recovered += phi * phi.adjoint();
        }
        rec.kraus.push_back(std::move(r));
    }
    rec.kraus.push_back(Mat::Identity(dim, dim) - recovered);

    Mat total = Mat::Zero(dim, dim);
    for (const Mat& k : rec.kraus) total += k.adjoint() * k;
    if (max_abs(total - Mat::Identity(dim, dim)) > 1e-10)
        throw std::logic_error("recovery_channel: Kraus elements do not resolve the identity");
    return rec;
}

double process_fidelity(const Mat& h, const CodeSpec& code, double kappa, double t,
                        const EvolveOptions& opts) {
    if (h.rows() != code.dim() || h.cols() != code.dim())
        throw std::invalid_argument("process_fidelity: dimension mismatch");
    if (!is_hermitian(h, 1e-10))
        throw std::invalid_argument("process_fidelity: H must be hermitian");
    if (kappa < 0.0 || t < 0.0)
        throw std::invalid_argument("process_fidelity: kappa and t must be >= 0");
    return fidelity_with_unitary(h, code, gate_unitary(h, t), kappa, t, opts);
}

FidelityCurve fidelity_sweep(const Mat& h, const CodeSpec& code,
                             const std::vector<double>& gammas, double t,
                             const EvolveOptions& opts) {
    if (t <= 0.0) throw std::invalid_argument("fidelity_sweep: t must be positive");
    if (h.rows() != code.dim() || h.cols() != code.dim())
        throw std::invalid_argument("fidelity_sweep: dimension mismatch");
    if (!is_hermitian(h, 1e-10))
        throw std::invalid_argument("fidelity_sweep: H must be hermitian");
    std::vector<double> sorted = gammas;
    std::sort(sorted.begin(), sorted.end());

    FidelityCurve curve;
    curve.t = t;
    const Mat u = gate_unitary(h, t);
    for (double gamma : sorted) {
        try {
            const LossParams p = LossParams::from_gamma(gamma, t);
            const double f = fidelity_with_unitary(h, code, u, p.kappa, t, opts);
            curve.points.push_back({p.kappa, gamma, std::max(0.0, 1.0 - f)});
        } catch (const std::exception& ex) {
            curve.warnings.push_back("gamma = " + std::to_string(gamma) + ": " + ex.what());
        }
    }
    return curve;
}

SlopeFit fit_loglog_slope(const FidelityCurve& curve, double gamma_max) {
    std::vector<double> xs, ys;
    for (const auto& p : curve.points) {
        if (p.gamma <= 0.0 || p.gamma >= gamma_max || p.infidelity <= 0.0) continue;
        xs.push_back(std::log10(p.gamma));
        ys.push_back(std::log10(p.infidelity));
    }
    if (xs.size() < 3)
        throw InsufficientPoints("fit_loglog_slope: need at least 3 usable points, have " +
                                 std::to_string(xs.size()));
    const double n = double(xs.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    SlopeFit fit;
    fit.points_used = int(xs.size());
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-30)
        throw InsufficientPoints("fit_loglog_slope: degenerate abscissa");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    const double mean_y = sy / n;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double pred = fit.slope * xs[i] + fit.intercept;
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - mean_y) * (ys[i] - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

}  // namespace pnest
