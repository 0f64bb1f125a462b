#include "wienerjam/blind.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace wienerjam {

Eigen::MatrixXcd sample_crr(const Eigen::VectorXcd& r, int L, int M) {
    const Eigen::MatrixXcd win = windows_as_columns(r, L, M);
    Eigen::MatrixXcd c = win * win.adjoint() / static_cast<double>(M);
    return (c + c.adjoint().eval()) / 2.0;
}

Eigen::MatrixXcd sample_crr(const SampleStream& stream, int L, int M) {
    return sample_crr(stream.r, L, M);
}

Eigen::VectorXcd sample_cri(const Eigen::VectorXcd& r, int L, int M) {
    const Eigen::MatrixXcd win = windows_as_columns(r, L, M);
    const int h = L / 2;
    return win * r.segment(h, M).conjugate() / static_cast<double>(M);
}

Eigen::VectorXcd sample_cri(const SampleStream& stream, int L, int M) {
    return sample_cri(stream.r, L, M);
}

SampleCovariances sample_covariances(const Eigen::VectorXcd& r, int L, int M) {
    const Eigen::MatrixXcd win = windows_as_columns(r, L, M);
    const int h = L / 2;
    SampleCovariances cov;
    Eigen::MatrixXcd c = win * win.adjoint() / static_cast<double>(M);
    cov.crr_hat = (c + c.adjoint().eval()) / 2.0;
    cov.cri_hat = win * r.segment(h, M).conjugate() / static_cast<double>(M);
    cov.M = M;
    cov.N = static_cast<int>(r.size());
    return cov;
}

WienerFilter blind_wiener(const SampleCovariances& cov) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(cov.crr_hat,
                                                        Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    if (ev.size() == 0 || ev[0] <= 1e-12 * ev[ev.size() - 1])
        throw std::runtime_error("insufficient averaging");
    WienerFilter f = wiener_filter_from_cross(cov.crr_hat, cov.cri_hat, FilterSource::blind);
    return f;
}

}  // namespace wienerjam
