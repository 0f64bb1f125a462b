#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace wienerjam {

/// Wrap an angle into [-pi, pi).
inline double wrap_angle(double x) {
    const double two_pi = 2.0 * M_PI;
    double w = x - two_pi * std::floor((x + M_PI) / two_pi);
    if (w >= M_PI) w -= two_pi;  // guard the upper edge against rounding
    return w;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Receiver-side constants: useful power S, noise variance sigma_n^2,
/// total jammer power J, interpolation window length L and tone count K.
/// All powers are linear; dB conversion happens at the CLI boundary only.
struct SystemParams {
    double S = 1.0;
    double sigma_n2 = 1.0;
    double J = 1.0;
    int L = 8;
    int K = 1;

    double noise_floor() const { return S + sigma_n2; }

    void validate() const {
        if (L < 2 || (L % 2) != 0) throw std::invalid_argument("L must be even and >= 2");
        if (!(S > 0.0)) throw std::invalid_argument("S must be positive");
        if (!(sigma_n2 > 0.0)) throw std::invalid_argument("sigma_n2 must be positive");
        if (!(J > 0.0)) throw std::invalid_argument("J must be positive");
        if (K < 1) throw std::invalid_argument("K must be >= 1");
    }
};

/// Multi-tone jammer parameterization: per-tone modulus alpha_k >= 0,
/// normalized angular frequency omega_k in [-pi, pi) and, when resolved,
/// initial phase phi_k. Absent phases mean "draw uniformly per realization".
struct ToneSet {
    Eigen::VectorXd alpha;
    Eigen::VectorXd omega;
    std::optional<Eigen::VectorXd> phi;

    int size() const { return static_cast<int>(alpha.size()); }

    double total_power() const { return alpha.squaredNorm(); }

    bool satisfies_power(double J, double rtol = 1e-9) const {
        return std::abs(total_power() - J) <= rtol * std::abs(J);
    }

    void validate() const {
        if (omega.size() != alpha.size()) throw std::invalid_argument("alpha/omega length mismatch");
        if (phi && phi->size() != alpha.size()) throw std::invalid_argument("phi length mismatch");
        for (int k = 0; k < size(); ++k) {
            if (alpha[k] < 0.0) throw std::invalid_argument("tone modulus must be nonnegative");
        }
    }

    /// Copy with phases resolved (required before generating samples).
    ToneSet with_phases(const Eigen::VectorXd& phases) const {
        ToneSet t = *this;
        t.phi = phases;
        return t;
    }
};

}  // namespace wienerjam
