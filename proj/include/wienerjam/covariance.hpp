#pragma once

#include <Eigen/Dense>

#include "wienerjam/types.hpp"

namespace wienerjam {

/// L x K matrix of per-tone phase ramps over the observation window.
/// Column k is [e^{j(L/2)w_k}, ..., e^{jw_k}, e^{-jw_k}, ..., e^{-j(L/2)w_k}];
/// every entry has modulus one and there is no lag-0 row.
Eigen::MatrixXcd steering(const Eigen::VectorXd& omega, int L);

/// K x K real symmetric Gram matrix of the steering columns. Entry (k,k')
/// equals D_{L/2}(w_k' - w_k) - 1; the diagonal is L.
Eigen::MatrixXd gamma_matrix(const Eigen::VectorXd& omega, int L);

/// Covariance matrix of the received window: (S+sigma_n^2) I_L + Psi J Psi^H.
/// Hermitian positive definite for positive powers.
Eigen::MatrixXcd build_crr(const SystemParams& params, const ToneSet& tones);

/// Cross-covariance between window and tone vector: Psi J (column k is
/// alpha_k^2 * psi(w_k)).
Eigen::MatrixXcd build_crtheta(const ToneSet& tones, int L);

/// K x K system matrix I_K + J Gamma / (S+sigma_n^2).
Eigen::MatrixXd amat(const SystemParams& params, const ToneSet& tones);

/// Minimum error covariance of the per-tone estimates, A^{-1} J.
/// Real, symmetric positive semidefinite.
Eigen::MatrixXd error_covariance(const SystemParams& params, const ToneSet& tones);

/// Same quantity computed the long way, J - J Psi^H Crr^{-1} Psi J, kept as
/// an independent oracle for the short route. Raises if the complex
/// arithmetic leaves an imaginary residue above 1e-9.
Eigen::MatrixXd error_covariance_longform(const SystemParams& params, const ToneSet& tones);

/// Estimation error power of the summed interference estimate, 1^T Ceps 1.
/// Always in (0, J].
double analytic_bmse(const SystemParams& params, const ToneSet& tones);

/// Closed form for a single tone of power J: (S+sigma^2) / ((S+sigma^2)/J + L).
/// Independent of the tone frequency.
double bmse_one_tone(const SystemParams& params);

/// Closed form for two equal-power tones separated by delta radians.
double bmse_two_tone(const SystemParams& params, double delta);

/// Closed form for K equal-power tones spaced 2pi/K:
/// [1/J + 2 floor(L/2K)/(S+sigma^2)]^{-1}. Equals J once K >= L/2+1.
double bmse_uniform_comb(const SystemParams& params, int K);

/// All analytic covariance objects for one jammer configuration.
struct CovarianceModel {
    Eigen::MatrixXcd crr;      // L x L Hermitian
    Eigen::MatrixXcd crtheta;  // L x K
    Eigen::MatrixXd jmat;      // K x K diagonal of alpha_k^2
    Eigen::MatrixXd gamma;     // K x K symmetric
    Eigen::MatrixXd amat;      // K x K
    Eigen::MatrixXd ceps;      // K x K minimum error covariance
};

CovarianceModel build_covariance_model(const SystemParams& params, const ToneSet& tones);

}  // namespace wienerjam
