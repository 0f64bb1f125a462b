#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "wienerjam/rng.hpp"
#include "wienerjam/types.hpp"

namespace wienerjam {

/// One realization of the sampled receive chain: useful chips s, noise n,
/// jammer i and their sum r, all of equal length.
struct SampleStream {
    Eigen::VectorXcd s;
    Eigen::VectorXcd n;
    Eigen::VectorXcd i;
    Eigen::VectorXcd r;

    int length() const { return static_cast<int>(r.size()); }
};

/// Per-tone contribution alpha_k * exp(j(omega_k m + phi_k)) at sample index m.
/// Throws if the tone set has unresolved phases.
Eigen::VectorXcd tone_contributions(const ToneSet& tones, std::int64_t m);

/// Jammer sample at index m: sum of the per-tone contributions.
std::complex<double> jammer_sample(const ToneSet& tones, std::int64_t m);

/// Constant-modulus QPSK chips sqrt(S)*(I+jQ)/sqrt(2), I,Q uniform on {-1,+1},
/// so |s_m|^2 == S exactly.
Eigen::VectorXcd gen_qpsk_chips(int count, double S, Rng& rng);

/// Circularly symmetric complex white Gaussian noise of total variance sigma_n2.
Eigen::VectorXcd gen_awgn(int count, double sigma_n2, Rng& rng);

/// Complex first-order autoregressive jammer with pole a in (0,1) and
/// stationary power J (covariance J*a^|k|). The first sample is drawn from
/// the stationary distribution, not burned in.
Eigen::VectorXcd gen_ar1_jammer(int count, double J, double a, Rng& rng);

/// Multi-tone jammer samples for m = 0..count-1 (phases must be resolved).
Eigen::VectorXcd gen_tone_jammer(const ToneSet& tones, int count);

/// Assemble a stream; r is formed as the exact sum s + n + i.
SampleStream assemble_stream(Eigen::VectorXcd s, Eigen::VectorXcd n, Eigen::VectorXcd i);

/// The L samples surrounding index m in the interpolation ordering
/// [r_{m+L/2}, ..., r_{m+1}, r_{m-1}, ..., r_{m-L/2}] (center excluded).
Eigen::VectorXcd received_window(const Eigen::VectorXcd& r, int m, int L);
Eigen::VectorXcd received_window(const SampleStream& stream, int m, int L);

/// Signed lag offsets of the window taps: [L/2, ..., 1, -1, ..., -L/2].
Eigen::VectorXi window_lags(int L);

/// The M windows centered at m = L/2 .. L/2+M-1, stacked as columns (L x M).
Eigen::MatrixXcd windows_as_columns(const Eigen::VectorXcd& r, int L, int M);

}  // namespace wienerjam
