#pragma once

#include <Eigen/Dense>
#include <complex>

#include "wienerjam/types.hpp"

namespace wienerjam {

enum class FilterSource { analytic, blind };

/// Interpolation filter estimating the center sample from its L neighbors.
struct WienerFilter {
    Eigen::VectorXcd w;
    FilterSource source = FilterSource::analytic;

    int length() const { return static_cast<int>(w.size()); }
};

/// Solve Crr w = Crtheta 1 for the minimum-MSE interpolation filter.
/// Cholesky solve, no explicit inverse; throws "covariance not PD" when the
/// factorization fails.
WienerFilter wiener_filter(const Eigen::MatrixXcd& crr, const Eigen::MatrixXcd& crtheta);

/// Same solve with the cross-covariance vector given directly (used by the
/// blind path and by non-tonal jammers with known covariance sequence).
WienerFilter wiener_filter_from_cross(const Eigen::MatrixXcd& crr, const Eigen::VectorXcd& cri,
                                      FilterSource source);

/// Interference estimate w^H window.
std::complex<double> estimate_interference(const WienerFilter& filter,
                                           const Eigen::VectorXcd& window);

}  // namespace wienerjam
