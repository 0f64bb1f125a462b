#include "wienerjam/optimizer.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wienerjam/covariance.hpp"
#include "wienerjam/dirichlet.hpp"

namespace wienerjam {

void OptimizerConfig::validate() const {
    if (!(mu_alpha > 0.0) || !(mu_omega > 0.0)) throw std::invalid_argument("step sizes must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
}

const char* design_method_name(DesignMethod m) {
    switch (m) {
        case DesignMethod::closed_form_k1: return "closed_form_k1";
        case DesignMethod::closed_form_k2: return "closed_form_k2";
        case DesignMethod::structured_refined: return "structured_refined";
        case DesignMethod::random_restart: return "random_restart";
        case DesignMethod::uniform_comb: return "uniform_comb";
    }
    return "unknown";
}

double loss(const SystemParams& params, const ToneSet& tones) {
    return -analytic_bmse(params, tones);
}

Eigen::VectorXd grad_alpha(const SystemParams& params, const ToneSet& tones) {
    const int K = tones.size();
    const Eigen::MatrixXd e = amat(params, tones).partialPivLu().inverse();
    Eigen::VectorXd g(K);
    for (int k = 0; k < K; ++k) {
        const double colsum = e.col(k).sum();
        g[k] = -colsum * colsum;
    }
    return g;
}

Eigen::VectorXd grad_omega(const SystemParams& params, const ToneSet& tones) {
    const int K = tones.size();
    const Eigen::MatrixXd ceps = error_covariance(params, tones);
    const Eigen::VectorXd row = ceps.colwise().sum();  // 1^T Ceps, symmetric
    Eigen::VectorXd g = Eigen::VectorXd::Zero(K);
    // dGamma/dw_k is zero except for the cross through row/column k, so the
    // quadratic form collapses to a single sum over k' != k.
    for (int k = 0; k < K; ++k) {
        double acc = 0.0;
        for (int kp = 0; kp < K; ++kp) {
            if (kp == k) continue;
            const double kernel_slope = -dirichlet_derivative(params.L, tones.omega[kp] - tones.omega[k]);
            acc += row[k] * kernel_slope * row[kp];
        }
        g[k] = 2.0 * acc / params.noise_floor();
    }
    return g;
}

Eigen::VectorXd project_power(const Eigen::VectorXd& alpha, double J) {
    const double norm = alpha.norm();
    if (norm == 0.0) throw std::runtime_error("degenerate iterate");
    return std::sqrt(J) / norm * alpha;
}

namespace {

void adam_update(Eigen::VectorXd& x, Eigen::VectorXd& m, Eigen::VectorXd& v,
                 const Eigen::VectorXd& g, double mu, double b1, double b2, double eps, int t) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    const double c1 = 1.0 - std::pow(b1, t);
    const double c2 = 1.0 - std::pow(b2, t);
    x -= mu * ((m / c1).array() / ((v / c2).array().sqrt() + eps)).matrix();
}

}  // namespace

OptimizerState adam_step(const SystemParams& params, OptimizerState state, const Gradients& grads,
                         const OptimizerConfig& config) {
    const int K = static_cast<int>(state.alpha.size());
    state.iter += 1;
    const int t = state.iter;

    if (grads.alpha_sq.size() > 0) {
        // The optimizer variable is alpha itself; chain through d(alpha^2).
        const Eigen::VectorXd g_alpha = 2.0 * state.alpha.cwiseProduct(grads.alpha_sq);
        adam_update(state.alpha, state.m_alpha, state.v_alpha, g_alpha, config.mu_alpha,
                    config.adam_beta1, config.adam_beta2, config.adam_eps, t);
        state.alpha = project_power(state.alpha.cwiseAbs(), params.J);
    }
    if (grads.omega.size() > 0) {
        adam_update(state.omega, state.m_omega, state.v_omega, grads.omega, config.mu_omega,
                    config.adam_beta1, config.adam_beta2, config.adam_eps, t);
        for (int k = 0; k < K; ++k) state.omega[k] = wrap_angle(state.omega[k]);
    }

    ToneSet tones{state.alpha, state.omega, std::nullopt};
    state.loss_trace.push_back(loss(params, tones));
    return state;
}

ToneSet init_structured(int K, int L, double J, double omega1) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    const double spacing = 9.0 / (L + 1);
    ToneSet t;
    t.alpha = Eigen::VectorXd::Constant(K, std::sqrt(J / K));
    t.omega.resize(K);
    for (int k = 0; k < K; ++k) t.omega[k] = wrap_angle(omega1 + k * spacing);
    return t;
}

namespace {

OptimizerState make_state(const ToneSet& init) {
    OptimizerState s;
    s.alpha = init.alpha;
    s.omega = init.omega;
    const int K = init.size();
    s.m_alpha = Eigen::VectorXd::Zero(K);
    s.v_alpha = Eigen::VectorXd::Zero(K);
    s.m_omega = Eigen::VectorXd::Zero(K);
    s.v_omega = Eigen::VectorXd::Zero(K);
    return s;
}

struct RunOutcome {
    ToneSet best;
    double best_loss;
    std::vector<double> trace;  // best-seen loss per iteration
};

// Shared projected-Adam driver. `update_alpha` false freezes the moduli.
RunOutcome run_adam(const SystemParams& params, const ToneSet& init, const OptimizerConfig& config,
                    bool update_alpha) {
    config.validate();
    OptimizerState state = make_state(init);
    ToneSet current = init;
    double f = loss(params, current);
    RunOutcome out{current, f, {f}};
    int quiet = 0;
    for (int it = 0; it < config.max_iter; ++it) {
        Gradients g;
        if (update_alpha) g.alpha_sq = grad_alpha(params, current);
        g.omega = grad_omega(params, current);
        state = adam_step(params, std::move(state), g, config);
        current.alpha = state.alpha;
        current.omega = state.omega;
        const double f_new = state.loss_trace.back();
        if (f_new < out.best_loss) {
            out.best_loss = f_new;
            out.best = current;
        }
        out.trace.push_back(out.best_loss);
        // Early stop once the loss has been flat for a window of iterations.
        if (std::abs(f_new - f) <= config.tol * std::max(1.0, std::abs(f))) {
            if (++quiet >= config.tol_window) break;
        } else {
            quiet = 0;
        }
        f = f_new;
    }
    return out;
}

}  // namespace

RefineOutcome refine_frequencies_traced(const SystemParams& params, const ToneSet& init,
                                        const OptimizerConfig& config) {
    RunOutcome run = run_adam(params, init, config, /*update_alpha=*/false);
    return RefineOutcome{run.best, run.trace};
}

ToneSet refine_frequencies(const SystemParams& params, const ToneSet& init,
                           const OptimizerConfig& config) {
    return refine_frequencies_traced(params, init, config).tones;
}

RestartOutcome optimize_random_restarts_traced(const SystemParams& params, int K,
                                               const OptimizerConfig& config, Rng& rng) {
    config.validate();
    RestartOutcome out;
    bool have_best = false;
    double best_loss = 0.0;
    for (int r = 0; r < config.restarts; ++r) {
        ToneSet init;
        init.alpha.resize(K);
        init.omega.resize(K);
        for (int k = 0; k < K; ++k) init.alpha[k] = rng.uniform01();
        init.alpha = project_power(init.alpha, params.J);
        for (int k = 0; k < K; ++k) init.omega[k] = rng.uniform(-M_PI, M_PI);
        RunOutcome run = run_adam(params, init, config, /*update_alpha=*/true);
        out.traces.push_back(run.trace);
        if (!have_best || run.best_loss < best_loss) {
            have_best = true;
            best_loss = run.best_loss;
            out.best.tones = run.best;
            out.best.trace = run.trace;
        }
    }
    out.best.method = DesignMethod::random_restart;
    out.best.bmse = analytic_bmse(params, out.best.tones);
    return out;
}

DesignResult optimize_random_restarts(const SystemParams& params, int K,
                                      const OptimizerConfig& config, Rng& rng) {
    return optimize_random_restarts_traced(params, K, config, rng).best;
}

DesignResult two_tone_closed_form(const SystemParams& params, double omega1,
                                  bool mirrored_branch) {
    params.validate();
    const double spacing = mirrored_branch ? 2.0 * M_PI - 9.0 / (params.L + 1) : 9.0 / (params.L + 1);
    DesignResult res;
    res.method = DesignMethod::closed_form_k2;
    res.tones.alpha = Eigen::VectorXd::Constant(2, std::sqrt(params.J / 2.0));
    res.tones.omega.resize(2);
    res.tones.omega[0] = wrap_angle(omega1);
    res.tones.omega[1] = wrap_angle(omega1 + spacing);
    res.bmse = analytic_bmse(params, res.tones);
    return res;
}

DesignResult uniform_comb(const SystemParams& params, int K, double omega1) {
    params.validate();
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    DesignResult res;
    res.method = DesignMethod::uniform_comb;
    res.tones.alpha = Eigen::VectorXd::Constant(K, std::sqrt(params.J / K));
    res.tones.omega.resize(K);
    for (int k = 0; k < K; ++k) res.tones.omega[k] = wrap_angle(omega1 + 2.0 * M_PI * k / K);
    res.bmse = analytic_bmse(params, res.tones);
    return res;
}

DesignResult design_jammer(const SystemParams& params, int K, const OptimizerConfig& config,
                           Rng& rng) {
    params.validate();
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    (void)rng;  // dispatch paths below are deterministic
    if (K == 1) {
        DesignResult res;
        res.method = DesignMethod::closed_form_k1;
        res.tones.alpha = Eigen::VectorXd::Constant(1, std::sqrt(params.J));
        res.tones.omega = Eigen::VectorXd::Zero(1);  // frequency has no effect
        res.bmse = analytic_bmse(params, res.tones);
        return res;
    }
    if (K == 2) return two_tone_closed_form(params, 0.0);
    if (K >= params.L / 2 + 1) return uniform_comb(params, K, 0.0);

    const ToneSet init = init_structured(K, params.L, params.J, 0.0);
    RefineOutcome refined = refine_frequencies_traced(params, init, config);
    DesignResult res;
    res.method = DesignMethod::structured_refined;
    res.tones = refined.tones;
    res.trace = std::move(refined.trace);
    res.bmse = analytic_bmse(params, res.tones);
    return res;
}

std::vector<GradCheckCase> gradient_check_suite(int cases, int fixed_K, std::uint64_t seed,
                                                double tol_alpha, double tol_omega) {
    Rng rng(seed);
    const int L_choices[] = {4, 8, 16, 32};
    std::vector<GradCheckCase> out;
    out.reserve(cases);
    for (int c = 0; c < cases; ++c) {
        GradCheckCase cc;
        cc.K = fixed_K > 0 ? fixed_K : 1 + static_cast<int>(rng.uniform01() * 8);
        cc.L = L_choices[static_cast<int>(rng.uniform01() * 4)];
        SystemParams params;
        params.S = 1.0;
        params.sigma_n2 = rng.uniform(0.5, 40.0);
        params.L = cc.L;
        params.K = cc.K;
        ToneSet tones;
        tones.alpha.resize(cc.K);
        tones.omega.resize(cc.K);
        for (int k = 0; k < cc.K; ++k) {
            tones.alpha[k] = rng.uniform(0.3, 3.0);
            tones.omega[k] = rng.uniform(-M_PI, M_PI);
        }
        params.J = tones.total_power();

        const Eigen::VectorXd ga = grad_alpha(params, tones);
        Eigen::VectorXd fda(cc.K);
        const double ha = 1e-6;
        for (int k = 0; k < cc.K; ++k) {
            ToneSet tp = tones, tm = tones;
            tp.alpha[k] = std::sqrt(tones.alpha[k] * tones.alpha[k] + ha);
            tm.alpha[k] = std::sqrt(tones.alpha[k] * tones.alpha[k] - ha);
            fda[k] = (loss(params, tp) - loss(params, tm)) / (2.0 * ha);
        }
        cc.rel_err_alpha = (ga - fda).norm() / std::max(fda.norm(), 1e-300);

        const Eigen::VectorXd gw = grad_omega(params, tones);
        Eigen::VectorXd fdw(cc.K);
        const double hw = 1e-7;
        for (int k = 0; k < cc.K; ++k) {
            ToneSet tp = tones, tm = tones;
            tp.omega[k] += hw;
            tm.omega[k] -= hw;
            fdw[k] = (loss(params, tp) - loss(params, tm)) / (2.0 * hw);
        }
        if (fdw.norm() < 1e-12) {
            cc.rel_err_omega = gw.norm() < 1e-12 ? 0.0 : 1.0;  // single tone: both vanish
        } else {
            cc.rel_err_omega = (gw - fdw).norm() / fdw.norm();
        }
        cc.pass = cc.rel_err_alpha < tol_alpha && cc.rel_err_omega < tol_omega;
        out.push_back(cc);
    }
    return out;
}

ErrorRatios error_ratios(const SystemParams& params, const ToneSet& init, const ToneSet& refined) {
    if (init.size() != refined.size()) throw std::invalid_argument("tone count mismatch");
    if ((init.alpha - refined.alpha).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("tone sets must share the modulus vector");
    const int K = init.size();
    const Eigen::MatrixXd c0 = error_covariance(params, init);
    const Eigen::MatrixXd c1 = error_covariance(params, refined);

    const double D = c0.sum(), N = c1.sum();
    const double D0 = c0.trace(), N0 = c1.trace();
    double D1 = 0.0, N1 = 0.0;
    for (int k = 0; k + 1 < K; ++k) {
        D1 += c0(k, k + 1);
        N1 += c1(k, k + 1);
    }
    const double D_others = D - D0 - 2.0 * D1;
    const double N_others = N - N0 - 2.0 * N1;
    const double scale = std::abs(D);
    if (scale == 0.0 || std::abs(D0) < 1e-14 * scale || std::abs(D1) < 1e-14 * scale ||
        std::abs(D_others) < 1e-14 * scale)
        throw std::runtime_error("degenerate ratio denominator");
    return ErrorRatios{N / D, N0 / D0, N1 / D1, N_others / D_others};
}

}  // namespace wienerjam
