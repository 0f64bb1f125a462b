// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criterion 10 drives the installed CLI binary; pass its path as argv[1].

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "wienerjam/blind.hpp"
#include "wienerjam/covariance.hpp"
#include "wienerjam/dirichlet.hpp"
#include "wienerjam/experiment.hpp"
#include "wienerjam/io.hpp"
#include "wienerjam/optimizer.hpp"
#include "wienerjam/rng.hpp"
#include "wienerjam/signal.hpp"
#include "wienerjam/wiener.hpp"

using namespace wienerjam;
using cd = std::complex<double>;
using clock_type = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::printf("[%2d] %-28s %s%s%s\n", id, name, pass ? "PASS" : "FAIL",
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

ToneSet random_tones(Rng& rng, int K, double amin, double amax) {
    ToneSet t;
    t.alpha.resize(K);
    t.omega.resize(K);
    for (int k = 0; k < K; ++k) {
        t.alpha[k] = rng.uniform(amin, amax);
        t.omega[k] = rng.uniform(-M_PI, M_PI);
    }
    return t;
}

// --- 1. short route vs long (matrix-inversion-lemma) route -----------------
void criterion1() {
    const auto t0 = clock_type::now();
    Rng rng(101);
    const int L_choices[] = {4, 8, 16, 32};
    double worst = 0.0;
    for (int c = 0; c < 500; ++c) {
        const int K = 1 + static_cast<int>(rng.uniform01() * 8);
        const int L = L_choices[static_cast<int>(rng.uniform01() * 4)];
        ToneSet tones = random_tones(rng, K, 0.1, 4.0);
        SystemParams p;
        p.S = rng.uniform(0.05, 2.0);
        p.sigma_n2 = rng.uniform(0.05, 50.0);
        p.J = tones.total_power();
        p.L = L;
        p.K = K;
        const double fast = analytic_bmse(p, tones);
        const double slow = error_covariance_longform(p, tones).sum();
        worst = std::max(worst, std::abs(fast - slow) / std::abs(slow));
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "500 configs, worst rel err %.2e, %.2f s", worst, dt);
    report(1, "closed-form consistency", worst < 1e-9 && dt < 10.0, buf);
}

// --- 2. special-case closed forms ------------------------------------------
void criterion2() {
    Rng rng(102);
    const int L_choices[] = {4, 8, 16, 32};
    double worst1 = 0.0, worst2 = 0.0, worst3 = 0.0, worst_comb_J = 0.0;
    for (int c = 0; c < 100; ++c) {
        SystemParams p;
        p.S = rng.uniform(0.05, 2.0);
        p.sigma_n2 = rng.uniform(0.05, 30.0);
        p.J = rng.uniform(0.1, 1000.0);
        p.L = L_choices[static_cast<int>(rng.uniform01() * 4)];

        p.K = 1;
        ToneSet one;
        one.alpha = Eigen::VectorXd::Constant(1, std::sqrt(p.J));
        one.omega = Eigen::VectorXd::Constant(1, rng.uniform(-M_PI, M_PI));
        worst1 = std::max(worst1,
                          std::abs(bmse_one_tone(p) - analytic_bmse(p, one)) / bmse_one_tone(p));

        p.K = 2;
        const double w1 = rng.uniform(-M_PI, M_PI);
        const double dagger = 9.0 / (p.L + 1);
        ToneSet pair;
        pair.alpha = Eigen::VectorXd::Constant(2, std::sqrt(p.J / 2.0));
        pair.omega.resize(2);
        pair.omega << wrap_angle(w1), wrap_angle(w1 + dagger);
        worst2 = std::max(worst2, std::abs(bmse_two_tone(p, dagger) - analytic_bmse(p, pair)) /
                                      bmse_two_tone(p, dagger));

        const int K = 1 + static_cast<int>(rng.uniform01() * 12);
        p.K = K;
        ToneSet comb;
        comb.alpha = Eigen::VectorXd::Constant(K, std::sqrt(p.J / K));
        comb.omega.resize(K);
        for (int k = 0; k < K; ++k) comb.omega[k] = wrap_angle(w1 + 2.0 * M_PI * k / K);
        worst3 = std::max(worst3, std::abs(bmse_uniform_comb(p, K) - analytic_bmse(p, comb)) /
                                      bmse_uniform_comb(p, K));

        const int Kbig = p.L / 2 + 1 + static_cast<int>(rng.uniform01() * 4);
        worst_comb_J =
            std::max(worst_comb_J, std::abs(bmse_uniform_comb(p, Kbig) - p.J) / p.J);
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "rel errs: 1-tone %.1e, 2-tone %.1e, comb %.1e, comb-sat vs J %.1e", worst1,
                  worst2, worst3, worst_comb_J);
    report(2, "special-case closed forms",
           worst1 < 1e-10 && worst2 < 1e-10 && worst3 < 1e-10 && worst_comb_J < 1e-9, buf);
}

// --- 3. analytic gradients vs central differences ---------------------------
void criterion3() {
    const auto t0 = clock_type::now();
    const auto suite = gradient_check_suite(100, 0, 103);
    double worst_a = 0.0, worst_w = 0.0;
    int failures = 0;
    for (const auto& c : suite) {
        worst_a = std::max(worst_a, c.rel_err_alpha);
        worst_w = std::max(worst_w, c.rel_err_omega);
        if (!c.pass) ++failures;
    }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "worst alpha^2 %.2e (<1e-5), worst omega %.2e (<1e-4), %.2f s",
                  worst_a, worst_w, dt);
    report(3, "gradient suite", failures == 0 && dt < 30.0, buf);
}

// --- 4. two-tone optimum location -------------------------------------------
void criterion4() {
    const int grid_n = 100000;
    const double step = 2.0 * M_PI / grid_n;
    const auto fold = [](double x) { return x <= M_PI ? x : 2.0 * M_PI - x; };

    bool argmax_ok = true;
    std::vector<double> errs;
    std::string seq;
    for (int L : {4, 8, 16, 32, 64, 128}) {
        SystemParams p;
        p.S = 1.0;
        p.sigma_n2 = db_to_linear(15.0);
        p.J = db_to_linear(25.0);
        p.L = L;
        p.K = 2;
        double best_b = -1.0, best_b_at = 0.0, best_d = 1e300, best_d_at = 0.0;
        for (int g = 1; g < grid_n; ++g) {
            const double delta = step * g;
            const double b = bmse_two_tone(p, delta);
            if (b > best_b) {
                best_b = b;
                best_b_at = delta;
            }
            const double d = dirichlet(L / 2, delta);
            if (d < best_d) {
                best_d = d;
                best_d_at = delta;
            }
        }
        // The kernel is even and 2pi-periodic, so the optimum appears twice;
        // compare on the folded half-interval.
        if (std::abs(fold(best_b_at) - fold(best_d_at)) > step + 1e-12) argmax_ok = false;
        errs.push_back(std::abs(fold(best_d_at) - 9.0 / (L + 1)));
        char num[48];
        std::snprintf(num, sizeof(num), "%sL%d:%.3e", seq.empty() ? "" : " ", L, errs.back());
        seq += num;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (errs[i] >= errs[i - 1]) monotone = false;
    report(4, "2-tone optimum", argmax_ok && monotone,
           std::string(argmax_ok ? "argmax matches argmin; " : "argmax mismatch; ") +
               "|D*-9/(L+1)| = " + seq + (monotone ? " (monotone)" : " (NOT monotone)"));
}

// --- 5. comb eigenvalue identity --------------------------------------------
void criterion5() {
    double worst = 0.0;
    for (int K = 1; K <= 16; ++K) {
        for (int L = 2; L <= 64; L += 2) {
            Eigen::VectorXd omega(K);
            for (int k = 0; k < K; ++k) omega[k] = wrap_angle(0.37 + 2.0 * M_PI * k / K);
            const Eigen::MatrixXd gamma = gamma_matrix(omega, L);
            // Circulant first row -> all eigenvalues by direct DFT; the one on
            // the all-ones direction must hit 2K*floor(L/2K).
            std::vector<cd> lambda(K, cd(0.0));
            for (int i = 0; i < K; ++i)
                for (int kp = 0; kp < K; ++kp)
                    lambda[i] += gamma(0, kp) * std::exp(cd(0.0, 2.0 * M_PI * i * kp / K));
            const double expected = 2.0 * K * (L / (2 * K));
            worst = std::max(worst, std::abs(lambda[0].real() - expected));
            worst = std::max(worst, std::abs(lambda[0].imag()));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "K<=16, L<=64, worst |lambda1 - 2K*floor(L/2K)| = %.2e", worst);
    report(5, "circulant eigenvalue", worst < 1e-9, buf);
}

// --- 6 & 7. Monte Carlo comparison table ------------------------------------
const CellResult& find_row(const std::vector<CellResult>& rows, const std::string& jammer, int L,
                           EstimationMode mode) {
    for (const auto& r : rows)
        if (r.jammer == jammer && r.L == L && r.mode == mode) return r;
    throw std::runtime_error("row not found");
}

std::vector<CellResult> criterion6(const ExperimentConfig& config) {
    const auto t0 = clock_type::now();
    const auto rows = run_figure5(config);
    const double dt = seconds_since(t0);

    bool pass = true;
    std::string detail;
    char buf[200];
    for (int L : config.L_list) {
        const double ket = find_row(rows, "ketchum100", L, EstimationMode::perfect).normalized;
        const double li = find_row(rows, "li10", L, EstimationMode::perfect).normalized;
        const double ar = find_row(rows, "ar1", L, EstimationMode::perfect).normalized;
        const double comb = find_row(rows, "comb", L, EstimationMode::perfect).normalized;
        const bool ok_ket = ket < 0.04;
        const bool ok_li = li < 0.04;
        const bool ok_ar = std::abs(ar - 0.30) <= 0.03;
        const bool ok_comb = std::abs(comb - 1.00) <= 0.02;
        pass = pass && ok_ket && ok_li && ok_ar && ok_comb;
        std::snprintf(buf, sizeof(buf), "L%d[ket %.4f%s li %.4f%s ar1 %.4f%s comb %.4f%s] ", L,
                      ket, ok_ket ? "" : "!", li, ok_li ? "" : "!", ar, ok_ar ? "" : "!", comb,
                      ok_comb ? "" : "!");
        detail += buf;
    }
    const double designed8 = find_row(rows, "designed", 8, EstimationMode::perfect).normalized;
    const bool ok_designed = designed8 >= 0.95;
    pass = pass && ok_designed;
    std::snprintf(buf, sizeof(buf), "designed5@L8 %.4f%s, %.0f s", designed8,
                  ok_designed ? "" : "!", dt);
    detail += buf;
    report(6, "figure-5 reproduction", pass, detail);
    return rows;
}

void criterion7(const std::vector<CellResult>& rows, const ExperimentConfig& config) {
    bool pass_multi = true, pass_comb = true;
    std::string detail;
    for (const std::string jammer : {"designed", "two_tone", "ketchum100", "li10", "random5"}) {
        for (int L : config.L_list) {
            const double b = find_row(rows, jammer, L, EstimationMode::blind).empirical_bmse;
            const double p = find_row(rows, jammer, L, EstimationMode::perfect).empirical_bmse;
            if (b < p) {
                pass_multi = false;
                detail += jammer + "@L" + std::to_string(L) + " blind<perfect; ";
            }
        }
    }
    for (int L : config.L_list) {
        const double b = find_row(rows, "comb", L, EstimationMode::blind).empirical_bmse;
        const double p = find_row(rows, "comb", L, EstimationMode::perfect).empirical_bmse;
        char buf[80];
        std::snprintf(buf, sizeof(buf), "comb@L%d blind/perfect %.4f%s ", L, b / p,
                      b <= p ? "" : "!");
        detail += buf;
        if (b > p) pass_comb = false;
    }
    report(7, "blind-mode ordering", pass_multi && pass_comb,
           std::string(pass_multi ? "multi-tone ok; " : "multi-tone violated; ") + detail);
}

// --- 8. improvement-ratio ordering ------------------------------------------
void criterion8() {
    SystemParams p;
    p.S = 1.0;
    p.sigma_n2 = db_to_linear(15.0);
    p.J = db_to_linear(25.0);
    p.L = 16;
    OptimizerConfig cfg;
    bool pass = true;
    std::string detail;
    for (int K = 3; K <= 8; ++K) {
        p.K = K;
        const ToneSet init = init_structured(K, p.L, p.J, 0.0);
        const ToneSet refined = refine_frequencies(p, init, cfg);
        const ErrorRatios r = error_ratios(p, init, refined);
        const bool ok = r.R >= 1.0 - 1e-12 && r.R_others > r.R && r.R_others > r.R0 &&
                        r.R_others > r.R1;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "K%d[R %.2f Ro %.2f%s] ", K, r.R, r.R_others,
                      ok ? "" : "!");
        detail += buf;
        pass = pass && ok;
    }
    report(8, "ratio diagnostics", pass, detail);
}

// --- 9. orthogonality and output-power decomposition -------------------------
void criterion9() {
    const int L = 64, K = 4, trials = 100000, N = L + 1, h = L / 2;
    SystemParams p;
    p.S = 1.0;
    p.sigma_n2 = db_to_linear(15.0);
    p.J = db_to_linear(25.0);
    p.L = L;
    p.K = K;
    Rng scen(109);
    ToneSet tones;
    tones.alpha = Eigen::VectorXd::Constant(K, std::sqrt(p.J / K));
    tones.omega.resize(K);
    for (int k = 0; k < K; ++k) tones.omega[k] = scen.uniform(-M_PI, M_PI);

    const WienerFilter f = wiener_filter(build_crr(p, tones), build_crtheta(tones, L));

    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(L);
    Eigen::VectorXd acc2 = Eigen::VectorXd::Zero(L);
    double dsum = 0.0, dsum2 = 0.0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(Rng::substream(110, t));
        Eigen::VectorXd phi(K);
        for (int k = 0; k < K; ++k) phi[k] = rng.uniform(-M_PI, M_PI);
        const Eigen::VectorXcd i = gen_tone_jammer(tones.with_phases(phi), N);
        const Eigen::VectorXcd r = gen_qpsk_chips(N, p.S, rng) + gen_awgn(N, p.sigma_n2, rng) + i;
        const Eigen::VectorXcd win = received_window(r, h, L);
        const cd ihat = estimate_interference(f, win);
        const cd err = i[h] - ihat;
        for (int l = 0; l < L; ++l) {
            const cd v = err * std::conj(win[l]);
            acc[l] += v;
            acc2[l] += std::norm(v);
        }
        // Paired audit of |y|^2 = floor + |error|^2 in expectation.
        const double d = std::norm(r[h] - ihat) - std::norm(err) - (p.S + p.sigma_n2);
        dsum += d;
        dsum2 += d * d;
    }
    int bad_taps = 0;
    double worst_sigma = 0.0;
    for (int l = 0; l < L; ++l) {
        const cd mean = acc[l] / static_cast<double>(trials);
        const double var = acc2[l] / trials - std::norm(mean);
        const double sem = std::sqrt(var / trials);
        worst_sigma = std::max(worst_sigma, std::abs(mean) / sem);
        if (std::abs(mean) > 3.0 * sem) ++bad_taps;
    }
    const double dmean = dsum / trials;
    const double dsem = std::sqrt((dsum2 / trials - dmean * dmean) / trials);
    const bool ok_power = std::abs(dmean) <= 3.0 * dsem;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "orthogonality worst %.2f sigma (%d taps out of %d over 3 sigma); power audit %.2f sigma",
                  worst_sigma, bad_taps, L, std::abs(dmean) / dsem);
    report(9, "orthogonality + power split", bad_taps == 0 && ok_power, buf);
}

// --- 10. byte-identical CSV across thread counts -----------------------------
void criterion10(const char* cli_path) {
    if (cli_path == nullptr) {
        report(10, "CLI determinism", false, "CLI path not supplied");
        return;
    }
    const std::string cli = std::string("\"") + cli_path + "\"";
    bool pass = true;
    std::string detail;
    const auto run = [&](const std::string& args, const std::string& out) {
        const std::string cmd = cli + " " + args + " --out " + out + " >/dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    struct Case {
        const char* name;
        std::string args;
    };
    const std::vector<Case> cases = {
        {"figure5", "mc --figure5 --trials 300 --L 8,16 --seed 5"},
        {"trace", "mc --trace --K 4 --L 16 --seed 5 --max-iter 200"},
        {"pdf", "mc --pdf --L 8,16 --trials 2000 --seed 5"},
    };
    for (const auto& c : cases) {
        const std::string f1 = std::string("accept10_") + c.name + "_t1.csv";
        const std::string f2 = std::string("accept10_") + c.name + "_t3.csv";
        if (!run(c.args + " --threads 1", f1) || !run(c.args + " --threads 3", f2)) {
            pass = false;
            detail += std::string(c.name) + " run failed; ";
            continue;
        }
        const std::string a = read_file(f1), b = read_file(f2);
        if (a.empty() || a != b) {
            pass = false;
            detail += std::string(c.name) + " bytes differ; ";
        } else {
            detail += std::string(c.name) + " ok; ";
        }
    }
    report(10, "CLI determinism", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    ExperimentConfig config;  // defaults: SNR -15 dB, JSR 25 dB, L {8,16,32}, N 128
    config.trials = 20000;
    config.master_seed = 1;
    config.threads = 1;
    if (const char* env = std::getenv("WIENERJAM_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) config.threads = v;
    }

    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    const auto rows = criterion6(config);
    criterion7(rows, config);
    criterion8();
    criterion9();
    criterion10(argc > 1 ? argv[1] : nullptr);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
