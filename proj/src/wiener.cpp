#include "wienerjam/wiener.hpp"

#include <Eigen/Cholesky>
#include <stdexcept>

namespace wienerjam {

WienerFilter wiener_filter_from_cross(const Eigen::MatrixXcd& crr, const Eigen::VectorXcd& cri,
                                      FilterSource source) {
    if (crr.rows() != crr.cols() || crr.rows() != cri.size())
        throw std::invalid_argument("dimension mismatch");
    WienerFilter f;
    f.source = source;
    const double rhs_norm = cri.norm();
    if (rhs_norm == 0.0) {
        f.w = Eigen::VectorXcd::Zero(cri.size());
        return f;
    }
    Eigen::LLT<Eigen::MatrixXcd> llt(crr);
    if (llt.info() != Eigen::Success) throw std::runtime_error("covariance not PD");
    f.w = llt.solve(cri);
    f.w += llt.solve(cri - crr * f.w);  // one step of iterative refinement
    if (source == FilterSource::analytic) {
        const double residual = (crr * f.w - cri).norm() / rhs_norm;
        if (residual > 1e-10) throw std::runtime_error("ill-conditioned covariance solve");
    }
    return f;
}

WienerFilter wiener_filter(const Eigen::MatrixXcd& crr, const Eigen::MatrixXcd& crtheta) {
    const Eigen::VectorXcd cri = crtheta.rowwise().sum();
    return wiener_filter_from_cross(crr, cri, FilterSource::analytic);
}

std::complex<double> estimate_interference(const WienerFilter& filter,
                                           const Eigen::VectorXcd& window) {
    if (filter.w.size() != window.size()) throw std::invalid_argument("window length mismatch");
    return filter.w.dot(window);  // Eigen dot conjugates the left operand
}

}  // namespace wienerjam
