#include "wienerjam/covariance.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>

#include "wienerjam/dirichlet.hpp"
#include "wienerjam/signal.hpp"

namespace wienerjam {

Eigen::MatrixXcd steering(const Eigen::VectorXd& omega, int L) {
    if (L < 2 || (L % 2) != 0) throw std::invalid_argument("L must be even and >= 2");
    const Eigen::VectorXi lags = window_lags(L);
    const int K = static_cast<int>(omega.size());
    Eigen::MatrixXcd psi(L, K);
    for (int k = 0; k < K; ++k) {
        for (int row = 0; row < L; ++row) {
            const double arg = lags[row] * omega[k];
            psi(row, k) = std::complex<double>(std::cos(arg), std::sin(arg));
        }
    }
    return psi;
}

Eigen::MatrixXd gamma_matrix(const Eigen::VectorXd& omega, int L) {
    if (L < 2 || (L % 2) != 0) throw std::invalid_argument("L must be even and >= 2");
    const int K = static_cast<int>(omega.size());
    Eigen::MatrixXd g(K, K);
    for (int k = 0; k < K; ++k) {
        g(k, k) = static_cast<double>(L);
        for (int kp = k + 1; kp < K; ++kp) {
            const double v = dirichlet(L / 2, omega[kp] - omega[k]) - 1.0;
            g(k, kp) = v;
            g(kp, k) = v;  // even kernel
        }
    }
    return g;
}

Eigen::MatrixXcd build_crr(const SystemParams& params, const ToneSet& tones) {
    params.validate();
    tones.validate();
    const int L = params.L;
    const Eigen::MatrixXcd psi = steering(tones.omega, L);
    const Eigen::VectorXd j = tones.alpha.array().square();
    Eigen::MatrixXcd crr = psi * j.asDiagonal() * psi.adjoint();
    crr.diagonal().array() += params.noise_floor();
    return (crr + crr.adjoint().eval()) / 2.0;  // exact Hermitian symmetry
}

Eigen::MatrixXcd build_crtheta(const ToneSet& tones, int L) {
    tones.validate();
    const Eigen::MatrixXcd psi = steering(tones.omega, L);
    const Eigen::VectorXd j = tones.alpha.array().square();
    return psi * j.asDiagonal();
}

Eigen::MatrixXd amat(const SystemParams& params, const ToneSet& tones) {
    const Eigen::VectorXd j = tones.alpha.array().square();
    const Eigen::MatrixXd g = gamma_matrix(tones.omega, params.L);
    Eigen::MatrixXd a = j.asDiagonal() * g / params.noise_floor();
    a.diagonal().array() += 1.0;
    return a;
}

Eigen::MatrixXd error_covariance(const SystemParams& params, const ToneSet& tones) {
    params.validate();
    tones.validate();
    const Eigen::MatrixXd a = amat(params, tones);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    // A = I + J*Gamma/(S+sigma^2) is invertible for positive powers; a
    // vanishing pivot here means the inputs violated that precondition.
    if (std::abs(lu.determinant()) < 1e-300) throw std::runtime_error("singular tone system matrix");
    const Eigen::VectorXd j = tones.alpha.array().square();
    Eigen::MatrixXd ceps = lu.solve(Eigen::MatrixXd(j.asDiagonal()));
    return (ceps + ceps.transpose()) / 2.0;  // symmetric up to solver round-off
}

Eigen::MatrixXd error_covariance_longform(const SystemParams& params, const ToneSet& tones) {
    params.validate();
    tones.validate();
    const Eigen::MatrixXcd crr = build_crr(params, tones);
    const Eigen::MatrixXcd crtheta = build_crtheta(tones, params.L);
    Eigen::LLT<Eigen::MatrixXcd> llt(crr);
    if (llt.info() != Eigen::Success) throw std::runtime_error("covariance not PD");
    const Eigen::MatrixXcd ceps_c =
        Eigen::MatrixXcd(Eigen::VectorXcd(tones.alpha.array().square().cast<std::complex<double>>())
                             .asDiagonal()) -
        crtheta.adjoint() * llt.solve(crtheta);
    const double residue = ceps_c.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-9) throw std::runtime_error("imaginary residue in error covariance");
    return ceps_c.real();
}

double analytic_bmse(const SystemParams& params, const ToneSet& tones) {
    return error_covariance(params, tones).sum();
}

double bmse_one_tone(const SystemParams& params) {
    params.validate();
    const double nf = params.noise_floor();
    return nf / (nf / params.J + params.L);
}

double bmse_two_tone(const SystemParams& params, double delta) {
    params.validate();
    const double nf = params.noise_floor();
    const double d = dirichlet(params.L / 2, delta);
    return nf / (nf / params.J + 0.5 * (params.L - 1) + 0.5 * d);
}

double bmse_uniform_comb(const SystemParams& params, int K) {
    params.validate();
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    const double cells = static_cast<double>(params.L / (2 * K));  // floor(L/2K)
    return 1.0 / (1.0 / params.J + 2.0 * cells / params.noise_floor());
}

CovarianceModel build_covariance_model(const SystemParams& params, const ToneSet& tones) {
    CovarianceModel m;
    m.crr = build_crr(params, tones);
    m.crtheta = build_crtheta(tones, params.L);
    m.jmat = Eigen::MatrixXd(Eigen::VectorXd(tones.alpha.array().square()).asDiagonal());
    m.gamma = gamma_matrix(tones.omega, params.L);
    m.amat = amat(params, tones);
    m.ceps = error_covariance(params, tones);
    return m;
}

}  // namespace wienerjam
