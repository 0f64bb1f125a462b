#pragma once

#include <Eigen/Dense>

#include "wienerjam/signal.hpp"
#include "wienerjam/wiener.hpp"

namespace wienerjam {

/// Sample covariance estimates accumulated from M windows of a block of N
/// received samples (M = N - L when the block is contiguous).
struct SampleCovariances {
    Eigen::MatrixXcd crr_hat;  // L x L Hermitian
    Eigen::VectorXcd cri_hat;  // length L
    int M = 0;
    int N = 0;
};

/// Average of window outer products over centers m = L/2 .. L/2+M-1.
/// Hermitian PSD by construction.
Eigen::MatrixXcd sample_crr(const Eigen::VectorXcd& r, int L, int M);
Eigen::MatrixXcd sample_crr(const SampleStream& stream, int L, int M);

/// Average of window * conj(center sample) over the same centers.
Eigen::VectorXcd sample_cri(const Eigen::VectorXcd& r, int L, int M);
Eigen::VectorXcd sample_cri(const SampleStream& stream, int L, int M);

/// Both estimates in one pass over the block.
SampleCovariances sample_covariances(const Eigen::VectorXcd& r, int L, int M);

/// Filter solved from the sample covariances. Throws "insufficient averaging"
/// when Crr_hat is numerically rank deficient (smallest eigenvalue below
/// 1e-12 of the largest), which signals M too small.
WienerFilter blind_wiener(const SampleCovariances& cov);

}  // namespace wienerjam
