#include "wienerjam/signal.hpp"

#include <stdexcept>

namespace wienerjam {

Eigen::VectorXcd tone_contributions(const ToneSet& tones, std::int64_t m) {
    tones.validate();
    if (!tones.phi) throw std::invalid_argument("phases unresolved");
    const int K = tones.size();
    Eigen::VectorXcd out(K);
    for (int k = 0; k < K; ++k) {
        const double arg = tones.omega[k] * static_cast<double>(m) + (*tones.phi)[k];
        out[k] = tones.alpha[k] * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return out;
}

std::complex<double> jammer_sample(const ToneSet& tones, std::int64_t m) {
    return tone_contributions(tones, m).sum();
}

Eigen::VectorXcd gen_qpsk_chips(int count, double S, Rng& rng) {
    if (count < 0) throw std::invalid_argument("count must be >= 0");
    const double amp = std::sqrt(S / 2.0);
    Eigen::VectorXcd out(count);
    for (int m = 0; m < count; ++m) out[m] = std::complex<double>(amp * rng.sign(), amp * rng.sign());
    return out;
}

Eigen::VectorXcd gen_awgn(int count, double sigma_n2, Rng& rng) {
    if (count < 0) throw std::invalid_argument("count must be >= 0");
    if (sigma_n2 < 0.0) throw std::invalid_argument("sigma_n2 must be >= 0");
    Eigen::VectorXcd out(count);
    for (int m = 0; m < count; ++m) out[m] = rng.circular_gaussian(sigma_n2);
    return out;
}

Eigen::VectorXcd gen_ar1_jammer(int count, double J, double a, Rng& rng) {
    if (count < 0) throw std::invalid_argument("count must be >= 0");
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("AR(1) pole must lie in (0,1)");
    if (!(J > 0.0)) throw std::invalid_argument("J must be positive");
    Eigen::VectorXcd out(count);
    if (count == 0) return out;
    out[0] = rng.circular_gaussian(J);  // stationary start
    const double innovation = J * (1.0 - a * a);
    for (int m = 1; m < count; ++m) out[m] = a * out[m - 1] + rng.circular_gaussian(innovation);
    return out;
}

Eigen::VectorXcd gen_tone_jammer(const ToneSet& tones, int count) {
    tones.validate();
    if (!tones.phi) throw std::invalid_argument("phases unresolved");
    const int K = tones.size();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(count);
    // Per-tone phasor recurrence; one complex multiply per sample per tone.
    for (int k = 0; k < K; ++k) {
        const double phi = (*tones.phi)[k];
        std::complex<double> c = tones.alpha[k] * std::complex<double>(std::cos(phi), std::sin(phi));
        const std::complex<double> step(std::cos(tones.omega[k]), std::sin(tones.omega[k]));
        for (int m = 0; m < count; ++m) {
            out[m] += c;
            c *= step;
        }
    }
    return out;
}

SampleStream assemble_stream(Eigen::VectorXcd s, Eigen::VectorXcd n, Eigen::VectorXcd i) {
    if (s.size() != n.size() || s.size() != i.size())
        throw std::invalid_argument("component length mismatch");
    SampleStream st;
    st.s = std::move(s);
    st.n = std::move(n);
    st.i = std::move(i);
    st.r = st.s + st.n + st.i;
    return st;
}

Eigen::VectorXi window_lags(int L) {
    Eigen::VectorXi lags(L);
    const int h = L / 2;
    int idx = 0;
    for (int l = h; l >= 1; --l) lags[idx++] = l;
    for (int l = -1; l >= -h; --l) lags[idx++] = l;
    return lags;
}

Eigen::VectorXcd received_window(const Eigen::VectorXcd& r, int m, int L) {
    const int h = L / 2;
    if (m - h < 0 || m + h >= r.size()) throw std::out_of_range("window out of bounds");
    Eigen::VectorXcd win(L);
    int idx = 0;
    for (int l = h; l >= 1; --l) win[idx++] = r[m + l];
    for (int l = -1; l >= -h; --l) win[idx++] = r[m + l];
    return win;
}

Eigen::VectorXcd received_window(const SampleStream& stream, int m, int L) {
    return received_window(stream.r, m, L);
}

Eigen::MatrixXcd windows_as_columns(const Eigen::VectorXcd& r, int L, int M) {
    if (M < 1) throw std::invalid_argument("M must be >= 1");
    const int h = L / 2;
    if (h + (M - 1) + h >= r.size()) throw std::invalid_argument("insufficient samples for M windows");
    Eigen::MatrixXcd win(L, M);
    for (int c = 0; c < M; ++c) {
        const int m = h + c;
        int idx = 0;
        for (int l = h; l >= 1; --l) win(idx++, c) = r[m + l];
        for (int l = -1; l >= -h; --l) win(idx++, c) = r[m + l];
    }
    return win;
}

}  // namespace wienerjam
