#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wienerjam/rng.hpp"
#include "wienerjam/types.hpp"

namespace wienerjam {

struct OptimizerConfig {
    double mu_alpha = 5e-2;   // step size on tone moduli
    double mu_omega = 1e-2;   // step size on tone frequencies
    int max_iter = 1000;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    int restarts = 16;
    double tol = 1e-10;       // relative loss change for early stop
    int tol_window = 20;      // consecutive quiet iterations before stopping

    void validate() const;
};

/// Iterate of the projected Adam recursion, with per-variable moment
/// accumulators and the running loss trace.
struct OptimizerState {
    Eigen::VectorXd alpha;
    Eigen::VectorXd omega;
    Eigen::VectorXd m_alpha, v_alpha;
    Eigen::VectorXd m_omega, v_omega;
    int iter = 0;
    std::vector<double> loss_trace;
};

struct Gradients {
    Eigen::VectorXd alpha_sq;  // d f / d alpha_k^2
    Eigen::VectorXd omega;     // d f / d omega_k
};

enum class DesignMethod { closed_form_k1, closed_form_k2, structured_refined, random_restart, uniform_comb };

const char* design_method_name(DesignMethod m);

struct DesignResult {
    ToneSet tones;
    double bmse = 0.0;
    DesignMethod method = DesignMethod::closed_form_k1;
    std::vector<double> trace;
};

/// Loss surface being descended: the negative estimation-error power.
double loss(const SystemParams& params, const ToneSet& tones);

/// Derivative of the loss with respect to each squared modulus alpha_k^2:
/// -(1^T e_k)^2 with e_k the k-th column of A^{-1}. The power constraint is
/// enforced by projection, so no multiplier term appears here.
Eigen::VectorXd grad_alpha(const SystemParams& params, const ToneSet& tones);

/// Derivative of the loss with respect to each tone frequency omega_k.
/// Coincident tones fall into the kernel-derivative limit (zero slope).
Eigen::VectorXd grad_omega(const SystemParams& params, const ToneSet& tones);

/// Rescale a modulus vector onto the power sphere ||alpha||^2 = J.
/// Throws "degenerate iterate" on the zero vector.
Eigen::VectorXd project_power(const Eigen::VectorXd& alpha, double J);

/// One bias-corrected Adam update on (alpha, omega) followed by the power
/// projection and frequency wrapping; appends the post-step loss to the trace.
OptimizerState adam_step(const SystemParams& params, OptimizerState state, const Gradients& grads,
                         const OptimizerConfig& config);

/// Equal-power tones spaced by the optimal two-tone separation 9/(L+1),
/// starting at omega1.
ToneSet init_structured(int K, int L, double J, double omega1);

struct RefineOutcome {
    ToneSet tones;
    std::vector<double> trace;  // best-seen loss per iteration
};

/// Frequency-only refinement around a structured initialization: moduli stay
/// frozen at sqrt(J/K), Adam descends on omega alone, and the best-seen
/// iterate is returned so the result never degrades the initial loss.
ToneSet refine_frequencies(const SystemParams& params, const ToneSet& init,
                           const OptimizerConfig& config);
RefineOutcome refine_frequencies_traced(const SystemParams& params, const ToneSet& init,
                                        const OptimizerConfig& config);

/// Full projected Adam on (alpha, omega) from `restarts` random initial
/// points; returns the best final iterate. Per-restart traces available via
/// the traced variant.
DesignResult optimize_random_restarts(const SystemParams& params, int K,
                                      const OptimizerConfig& config, Rng& rng);

struct RestartOutcome {
    DesignResult best;
    std::vector<std::vector<double>> traces;  // best-seen loss per iteration, per restart
};

RestartOutcome optimize_random_restarts_traced(const SystemParams& params, int K,
                                               const OptimizerConfig& config, Rng& rng);

/// Hardest-to-estimate two-tone jammer: equal powers, spacing 9/(L+1)
/// (or the mirrored 2pi - 9/(L+1) branch).
DesignResult two_tone_closed_form(const SystemParams& params, double omega1,
                                  bool mirrored_branch = false);

/// Equal-power comb spaced 2pi/K. Renders the filter useless for K >= L/2+1.
DesignResult uniform_comb(const SystemParams& params, int K, double omega1);

/// Dispatch over the tone-count regimes: K=1 single tone, K=2 closed form,
/// 3 <= K < L/2+1 structured init plus frequency refinement, K >= L/2+1 comb.
DesignResult design_jammer(const SystemParams& params, int K, const OptimizerConfig& config,
                           Rng& rng);

struct ErrorRatios {
    double R;        // total estimation-error power ratio
    double R0;       // per-tone error (trace) ratio
    double R1;       // adjacent-pair error-correlation ratio
    double R_others; // non-adjacent error-correlation ratio
};

struct GradCheckCase {
    int K = 0;
    int L = 0;
    double rel_err_alpha = 0.0;  // analytic vs central differences in alpha_k^2
    double rel_err_omega = 0.0;  // analytic vs central differences in omega_k
    bool pass = false;
};

/// Randomized comparison of the analytic gradients against central finite
/// differences (step 1e-6 in alpha^2, 1e-7 in omega). Vector-norm relative
/// errors; a vanishing reference gradient (single tone) counts as exact.
std::vector<GradCheckCase> gradient_check_suite(int cases, int fixed_K, std::uint64_t seed,
                                                double tol_alpha = 1e-5, double tol_omega = 1e-4);

/// Improvement ratios of a refined frequency layout over its initialization.
/// Both tone sets must share the same modulus vector.
ErrorRatios error_ratios(const SystemParams& params, const ToneSet& init, const ToneSet& refined);

}  // namespace wienerjam
