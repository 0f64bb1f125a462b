#pragma once

#include <cmath>

namespace wienerjam {

/// Dirichlet kernel D_n(x) = sin((n+1/2)x)/sin(x/2), with the removable
/// singularity at x == 0 (mod 2pi) evaluated as 2n+1. 2pi-periodic and even.
inline double dirichlet(int n, double x) {
    const double s = std::sin(0.5 * x);
    if (std::abs(s) < 1e-9) return 2.0 * n + 1.0;
    return std::sin((n + 0.5) * x) / s;
}

/// d/dx of the half-window Dirichlet kernel D_{L/2}(x). Odd in x, zero at
/// x == 0 (mod 2pi). Tones closer than 1e-7 in frequency hit the limit branch.
inline double dirichlet_derivative(int L, double x) {
    const double s = std::sin(0.5 * x);
    if (std::abs(s) < 1e-7) return 0.0;
    const double a = 0.5 * (L + 1);
    return (a * std::cos(a * x) * s - 0.5 * std::cos(0.5 * x) * std::sin(a * x)) / (s * s);
}

}  // namespace wienerjam
