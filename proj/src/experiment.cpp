#include "wienerjam/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "wienerjam/blind.hpp"
#include "wienerjam/covariance.hpp"
#include "wienerjam/signal.hpp"
#include "wienerjam/version.hpp"
#include "wienerjam/wiener.hpp"

namespace wienerjam {

const char* mode_name(EstimationMode m) {
    return m == EstimationMode::perfect ? "perfect" : "blind";
}

const char* jammer_kind_name(JammerKind k) {
    switch (k) {
        case JammerKind::designed: return "designed";
        case JammerKind::two_tone: return "two_tone";
        case JammerKind::comb: return "comb";
        case JammerKind::ketchum100: return "ketchum100";
        case JammerKind::li10: return "li10";
        case JammerKind::random5: return "random5";
        case JammerKind::ar1: return "ar1";
    }
    return "unknown";
}

JammerKind jammer_kind_from_name(const std::string& name) {
    for (JammerKind k : {JammerKind::designed, JammerKind::two_tone, JammerKind::comb,
                         JammerKind::ketchum100, JammerKind::li10, JammerKind::random5,
                         JammerKind::ar1}) {
        if (name == jammer_kind_name(k)) return k;
    }
    throw std::invalid_argument("unknown jammer kind: " + name);
}

JammerWaveform baseline_jammer(JammerKind kind, double J, int L, Rng& rng) {
    (void)L;
    switch (kind) {
        case JammerKind::ketchum100: {
            const int K = 100;
            ToneSet t;
            t.alpha = Eigen::VectorXd::Constant(K, std::sqrt(J / K));
            t.omega.resize(K);
            const double width = 0.4 * M_PI;  // 20% of the sampled band
            for (int k = 0; k < K; ++k) t.omega[k] = -width / 2.0 + width * k / (K - 1);
            return t;
        }
        case JammerKind::li10: {
            const int K = 10;
            const double spacing = 3.6 * M_PI / 180.0;
            ToneSet t;
            t.alpha = Eigen::VectorXd::Constant(K, std::sqrt(J / K));
            t.omega.resize(K);
            for (int k = 0; k < K; ++k) t.omega[k] = (k - (K - 1) / 2.0) * spacing;
            return t;
        }
        case JammerKind::random5: {
            const int K = 5;
            ToneSet t;
            t.alpha = Eigen::VectorXd::Constant(K, std::sqrt(J / K));
            t.omega.resize(K);
            for (int k = 0; k < K; ++k) t.omega[k] = rng.uniform(-M_PI, M_PI);
            return t;
        }
        case JammerKind::ar1:
            return Ar1Spec{J, 0.8};
        default:
            throw std::invalid_argument("unknown baseline jammer kind");
    }
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (L_list.empty()) throw std::invalid_argument("L_list must not be empty");
    for (int L : L_list) {
        if (L < 2 || (L % 2) != 0) throw std::invalid_argument("L must be even and >= 2");
        if (N <= L) throw std::invalid_argument("N must exceed every L");
    }
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

SystemParams ExperimentConfig::params_for(int L, int K) const {
    SystemParams p;
    p.S = 1.0;  // absolute scale is free; only the SNR/JSR ratios matter
    p.sigma_n2 = p.S / db_to_linear(snr_db);
    p.J = p.S * db_to_linear(jsr_db);
    p.L = L;
    p.K = K;
    return p;
}

namespace {

JammerWaveform waveform_for(const ExperimentConfig& config, const JammerSpec& spec, int L) {
    const SystemParams base = config.params_for(L, spec.K);
    switch (spec.kind) {
        case JammerKind::designed: {
            Rng rng(Rng::substream(config.master_seed, 0xDE51));
            return design_jammer(base, spec.K, config.optimizer, rng).tones;
        }
        case JammerKind::two_tone:
            return two_tone_closed_form(base, 0.0).tones;
        case JammerKind::comb:
            return uniform_comb(base, L / 2 + 1, 0.0).tones;
        case JammerKind::ar1:
            return Ar1Spec{base.J, spec.ar1_pole};
        case JammerKind::random5: {
            Rng rng(Rng::substream(spec.seed, 0x5EED));
            return baseline_jammer(JammerKind::random5, base.J, L, rng);
        }
        default: {
            Rng rng(0);
            return baseline_jammer(spec.kind, base.J, L, rng);
        }
    }
}

// Perfect-knowledge filter for the AR(1) jammer: covariance sequence
// rho_k = J * pole^|k| placed on the window lags.
WienerFilter ar1_perfect_filter(const SystemParams& params, const Ar1Spec& ar1) {
    const int L = params.L;
    const Eigen::VectorXi lags = window_lags(L);
    Eigen::MatrixXcd crr(L, L);
    Eigen::VectorXcd cri(L);
    for (int u = 0; u < L; ++u) {
        cri[u] = ar1.J * std::pow(ar1.pole, std::abs(lags[u]));
        for (int v = 0; v < L; ++v) {
            double c = ar1.J * std::pow(ar1.pole, std::abs(lags[u] - lags[v]));
            if (u == v) c += params.noise_floor();
            crr(u, v) = c;
        }
    }
    return wiener_filter_from_cross(crr, cri, FilterSource::analytic);
}

struct TrialResult {
    double mean_sq_error = 0.0;
    int failed_attempts = 0;
};

// Deterministic mean and standard error: fixed-order compensated summation
// over the per-trial values, independent of how trials were scheduled.
std::pair<double, double> reduce_mean_stderr(const std::vector<double>& values) {
    const std::size_t n = values.size();
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double mean = sum / static_cast<double>(n);
    double var = 0.0, comp2 = 0.0;
    for (double v : values) {
        const double d = (v - mean) * (v - mean) - comp2;
        const double t = var + d;
        comp2 = (t - var) - d;
        var = t;
    }
    var /= static_cast<double>(n > 1 ? n - 1 : 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

CellResult empirical_bmse(const ExperimentConfig& config, const JammerSpec& spec, int L,
                          EstimationMode mode) {
    config.validate();
    const JammerWaveform waveform = waveform_for(config, spec, L);
    const ToneSet* tones = std::get_if<ToneSet>(&waveform);
    const Ar1Spec* ar1 = std::get_if<Ar1Spec>(&waveform);
    const SystemParams params = config.params_for(L, tones ? tones->size() : spec.K);

    WienerFilter perfect;
    if (mode == EstimationMode::perfect) {
        perfect = tones ? wiener_filter(build_crr(params, *tones), build_crtheta(*tones, L))
                        : ar1_perfect_filter(params, *ar1);
    }

    const int N = config.N;
    const int M = N - L;
    const int h = L / 2;
    const int kind_index = static_cast<int>(spec.kind);
    const std::uint64_t cell_seed = Rng::substream(
        config.master_seed,
        (static_cast<std::uint64_t>(kind_index + 1) << 20) |
            (static_cast<std::uint64_t>(L) << 4) | (mode == EstimationMode::blind ? 1 : 0));

    std::vector<double> per_trial(config.trials);
    std::vector<int> per_trial_failures(config.trials, 0);

    auto run_trial = [&](int t) {
        const std::uint64_t trial_seed = Rng::substream(cell_seed, static_cast<std::uint64_t>(t));
        for (int attempt = 0;; ++attempt) {
            if (attempt >= 64) throw std::runtime_error("blind estimation failed repeatedly");
            Rng rng(Rng::substream(trial_seed, static_cast<std::uint64_t>(attempt)));

            Eigen::VectorXcd i;
            if (tones) {
                Eigen::VectorXd phi(tones->size());
                for (int k = 0; k < tones->size(); ++k) phi[k] = rng.uniform(-M_PI, M_PI);
                i = gen_tone_jammer(tones->with_phases(phi), N);
            } else {
                i = gen_ar1_jammer(N, ar1->J, ar1->pole, rng);
            }
            const Eigen::VectorXcd s = gen_qpsk_chips(N, params.S, rng);
            const Eigen::VectorXcd n = gen_awgn(N, params.sigma_n2, rng);
            const Eigen::VectorXcd r = s + n + i;

            const WienerFilter* w = &perfect;
            WienerFilter blind;
            if (mode == EstimationMode::blind) {
                try {
                    blind = blind_wiener(sample_covariances(r, L, M));
                } catch (const std::runtime_error&) {
                    per_trial_failures[t] += 1;
                    continue;  // redraw the trial
                }
                w = &blind;
            }

            const Eigen::MatrixXcd win = windows_as_columns(r, L, M);
            const Eigen::RowVectorXcd est = w->w.adjoint() * win;
            double acc = 0.0;
            for (int c = 0; c < M; ++c) acc += std::norm(i[h + c] - est[c]);
            per_trial[t] = acc / static_cast<double>(M);
            return;
        }
    };

    const int n_threads = std::min(config.threads, config.trials);
    if (n_threads <= 1) {
        for (int t = 0; t < config.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int j = 0; j < n_threads; ++j) {
            const int begin = static_cast<int>(static_cast<long long>(config.trials) * j / n_threads);
            const int end =
                static_cast<int>(static_cast<long long>(config.trials) * (j + 1) / n_threads);
            pool.emplace_back([&, begin, end] {
                for (int t = begin; t < end; ++t) run_trial(t);
            });
        }
        for (auto& th : pool) th.join();
    }

    const auto [mean, se] = reduce_mean_stderr(per_trial);
    CellResult row;
    row.jammer = jammer_kind_name(spec.kind);
    row.L = L;
    row.mode = mode;
    row.empirical_bmse = mean;
    if (tones) row.analytic_bmse = analytic_bmse(params, *tones);
    row.normalized = mean / params.J;
    row.std_error = se;
    row.trials = config.trials;
    row.cond_failures = std::accumulate(per_trial_failures.begin(), per_trial_failures.end(), 0);
    return row;
}

std::vector<CellResult> run_figure5(const ExperimentConfig& config) {
    config.validate();
    std::vector<CellResult> rows;
    for (JammerKind kind : {JammerKind::designed, JammerKind::two_tone, JammerKind::comb,
                            JammerKind::ketchum100, JammerKind::li10, JammerKind::random5,
                            JammerKind::ar1}) {
        JammerSpec spec;
        spec.kind = kind;
        spec.K = config.K;
        for (int L : config.L_list) {
            for (EstimationMode mode : {EstimationMode::perfect, EstimationMode::blind}) {
                rows.push_back(empirical_bmse(config, spec, L, mode));
            }
        }
    }
    return rows;
}

ConvergenceTrace convergence_trace(const SystemParams& params, const OptimizerConfig& config,
                                   std::uint64_t seed) {
    params.validate();
    ConvergenceTrace out;
    const ToneSet init = init_structured(params.K, params.L, params.J, 0.0);
    out.structured = refine_frequencies_traced(params, init, config).trace;
    Rng rng(Rng::substream(seed, 0xA11));
    out.restarts = optimize_random_restarts_traced(params, params.K, config, rng).traces;
    return out;
}

namespace {

double interquartile_range(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return v[lo] * (1.0 - frac) + v[hi] * frac;
    };
    return quantile(0.75) - quantile(0.25);
}

}  // namespace

std::vector<DispersionRow> pdf_dispersion_study(const SystemParams& base, const ToneSet& tones,
                                                const std::vector<int>& L_list, int trials,
                                                std::uint64_t seed, int threads, int bins) {
    if (!tones.phi) throw std::invalid_argument("phases unresolved");
    if (trials < 2) throw std::invalid_argument("trials must be >= 2");
    std::vector<DispersionRow> rows;
    for (int L : L_list) {
        SystemParams params = base;
        params.L = L;
        params.validate();
        const WienerFilter w = wiener_filter(build_crr(params, tones), build_crtheta(tones, L));
        const int N = L + 1;
        const int h = L / 2;
        const Eigen::VectorXcd i = gen_tone_jammer(tones, N);

        std::vector<double> mod(trials), ph(trials);
        const std::uint64_t cell_seed = Rng::substream(seed, static_cast<std::uint64_t>(L));
        auto run_trial = [&](int t) {
            Rng rng(Rng::substream(cell_seed, static_cast<std::uint64_t>(t)));
            const Eigen::VectorXcd s = gen_qpsk_chips(N, params.S, rng);
            const Eigen::VectorXcd n = gen_awgn(N, params.sigma_n2, rng);
            const Eigen::VectorXcd r = s + n + i;
            const std::complex<double> est = estimate_interference(w, received_window(r, h, L));
            mod[t] = std::abs(est);
            ph[t] = std::arg(est);
        };
        const int n_threads = std::min(threads, trials);
        if (n_threads <= 1) {
            for (int t = 0; t < trials; ++t) run_trial(t);
        } else {
            std::vector<std::thread> pool;
            for (int j = 0; j < n_threads; ++j) {
                const int begin = static_cast<int>(static_cast<long long>(trials) * j / n_threads);
                const int end = static_cast<int>(static_cast<long long>(trials) * (j + 1) / n_threads);
                pool.emplace_back([&, begin, end] {
                    for (int t = begin; t < end; ++t) run_trial(t);
                });
            }
            for (auto& th : pool) th.join();
        }

        DispersionRow row;
        row.L = L;
        row.iqr_modulus = interquartile_range(mod);
        row.iqr_phase = interquartile_range(ph);
        row.modulus_lo = *std::min_element(mod.begin(), mod.end());
        row.modulus_hi = *std::max_element(mod.begin(), mod.end());
        row.hist_modulus.assign(bins, 0);
        row.hist_phase.assign(bins, 0);
        const double span = std::max(row.modulus_hi - row.modulus_lo, 1e-300);
        for (double v : mod) {
            int b = static_cast<int>((v - row.modulus_lo) / span * bins);
            row.hist_modulus[std::clamp(b, 0, bins - 1)] += 1;
        }
        for (double v : ph) {
            int b = static_cast<int>((v + M_PI) / (2.0 * M_PI) * bins);
            row.hist_phase[std::clamp(b, 0, bins - 1)] += 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::string figure5_csv(const std::vector<CellResult>& rows) {
    std::string out = "jammer,L,mode,empirical_bmse,analytic_bmse,normalized,stderr,trials,cond_failures\n";
    for (const auto& r : rows) {
        out += r.jammer;
        out += ',' + std::to_string(r.L);
        out += ',';
        out += mode_name(r.mode);
        out += ',' + fmt_double(r.empirical_bmse);
        out += ',';
        out += r.analytic_bmse ? fmt_double(*r.analytic_bmse) : "NA";
        out += ',' + fmt_double(r.normalized);
        out += ',' + fmt_double(r.std_error);
        out += ',' + std::to_string(r.trials);
        out += ',' + std::to_string(r.cond_failures);
        out += '\n';
    }
    return out;
}

std::string figure5_json(const ExperimentConfig& config, const std::vector<CellResult>& rows) {
    nlohmann::json j;
    j["tool"] = "wienerjam";
    j["version"] = kVersion;
    j["config"] = {{"snr_db", config.snr_db},
                   {"jsr_db", config.jsr_db},
                   {"L_list", config.L_list},
                   {"N", config.N},
                   {"trials", config.trials},
                   {"master_seed", config.master_seed},
                   {"threads", config.threads}};
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row = {{"jammer", r.jammer},
                              {"L", r.L},
                              {"mode", mode_name(r.mode)},
                              {"empirical_bmse", r.empirical_bmse},
                              {"normalized", r.normalized},
                              {"stderr", r.std_error},
                              {"trials", r.trials},
                              {"cond_failures", r.cond_failures}};
        if (r.analytic_bmse) row["analytic_bmse"] = *r.analytic_bmse;
        j["rows"].push_back(row);
    }
    return j.dump(2) + "\n";
}

std::string trace_csv(const ConvergenceTrace& trace) {
    std::size_t depth = trace.structured.size();
    for (const auto& t : trace.restarts) depth = std::max(depth, t.size());
    std::string out = "iter,structured";
    for (std::size_t r = 0; r < trace.restarts.size(); ++r) out += ",restart_" + std::to_string(r);
    out += '\n';
    for (std::size_t it = 0; it < depth; ++it) {
        out += std::to_string(it);
        out += ',';
        out += it < trace.structured.size() ? fmt_double(trace.structured[it]) : "";
        for (const auto& t : trace.restarts) {
            out += ',';
            out += it < t.size() ? fmt_double(t[it]) : "";
        }
        out += '\n';
    }
    return out;
}

std::string dispersion_csv(const std::vector<DispersionRow>& rows) {
    std::string out = "L,iqr_modulus,iqr_phase,bin,modulus_count,phase_count\n";
    for (const auto& r : rows) {
        for (std::size_t b = 0; b < r.hist_modulus.size(); ++b) {
            out += std::to_string(r.L);
            out += ',' + fmt_double(r.iqr_modulus);
            out += ',' + fmt_double(r.iqr_phase);
            out += ',' + std::to_string(b);
            out += ',' + std::to_string(r.hist_modulus[b]);
            out += ',' + std::to_string(r.hist_phase[b]);
            out += '\n';
        }
    }
    return out;
}

}  // namespace wienerjam
