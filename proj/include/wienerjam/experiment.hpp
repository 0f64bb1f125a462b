#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wienerjam/optimizer.hpp"
#include "wienerjam/rng.hpp"
#include "wienerjam/types.hpp"

namespace wienerjam {

enum class EstimationMode { perfect, blind };

const char* mode_name(EstimationMode m);

enum class JammerKind { designed, two_tone, comb, ketchum100, li10, random5, ar1 };

const char* jammer_kind_name(JammerKind k);
JammerKind jammer_kind_from_name(const std::string& name);

/// Scenario selector for one jamming waveform.
struct JammerSpec {
    JammerKind kind = JammerKind::designed;
    int K = 5;                 // tone count for `designed`
    std::uint64_t seed = 1;    // frequency draw for `random5`
    double ar1_pole = 0.8;     // pole for `ar1`
};

/// First-order autoregressive jammer description (covariance J * pole^|k|).
struct Ar1Spec {
    double J = 1.0;
    double pole = 0.8;
};

using JammerWaveform = std::variant<ToneSet, Ar1Spec>;

/// Literature baseline waveforms plus the AR(1) process spec.
///   ketchum100: 100 equal-power tones spanning a contiguous 20% of the band
///               (width 0.4*pi), centered at 0.
///   li10:       10 equal-power tones spaced 3.6 degrees.
///   random5:    5 equal-power tones, frequencies i.i.d. uniform on [-pi,pi).
///   ar1:        process spec with pole 0.8.
JammerWaveform baseline_jammer(JammerKind kind, double J, int L, Rng& rng);

struct ExperimentConfig {
    double snr_db = -15.0;
    double jsr_db = 25.0;
    std::vector<int> L_list = {8, 16, 32};
    int N = 128;  // block length; one filter per block in blind mode
    int trials = 20000;
    int K = 5;  // tone count of the designed jammer
    EstimationMode mode = EstimationMode::perfect;
    std::uint64_t master_seed = 1;
    int threads = 1;
    OptimizerConfig optimizer;

    void validate() const;
    SystemParams params_for(int L, int K) const;
};

/// One (jammer, L, mode) cell of the experiment table.
struct CellResult {
    std::string jammer;
    int L = 0;
    EstimationMode mode = EstimationMode::perfect;
    double empirical_bmse = 0.0;
    std::optional<double> analytic_bmse;  // absent for the AR(1) jammer
    double normalized = 0.0;              // empirical / J
    double std_error = 0.0;
    int trials = 0;
    int cond_failures = 0;
};

/// Monte Carlo estimate of the interference-estimation error power for one
/// jammer at one filter length. Perfect mode uses the model covariances
/// (AR(1): the exact Toeplitz covariance sequence); blind mode re-estimates
/// the filter on every N-sample block with M = N - L windows.
CellResult empirical_bmse(const ExperimentConfig& config, const JammerSpec& jammer, int L,
                          EstimationMode mode);

/// The seven-jammer comparison table over L_list and both estimation modes.
std::vector<CellResult> run_figure5(const ExperimentConfig& config);

struct ConvergenceTrace {
    std::vector<double> structured;             // best-seen loss per iteration
    std::vector<std::vector<double>> restarts;  // one trace per random restart
};

/// Per-iteration loss traces of the structured-refined run against random
/// restarts for the same (K, L).
ConvergenceTrace convergence_trace(const SystemParams& params, const OptimizerConfig& config,
                                   std::uint64_t seed);

struct DispersionRow {
    int L = 0;
    double iqr_modulus = 0.0;
    double iqr_phase = 0.0;
    std::vector<int> hist_modulus;
    std::vector<int> hist_phase;
    double modulus_lo = 0.0, modulus_hi = 0.0;  // histogram support
};

/// Spread of the center-sample interference estimate under random signal and
/// noise draws, for a fixed tone scenario, as a function of filter length.
std::vector<DispersionRow> pdf_dispersion_study(const SystemParams& base, const ToneSet& tones,
                                                const std::vector<int>& L_list, int trials,
                                                std::uint64_t seed, int threads, int bins = 64);

// Machine-readable outputs. CSV bytes are stable across runs and thread counts.
std::string figure5_csv(const std::vector<CellResult>& rows);
std::string figure5_json(const ExperimentConfig& config, const std::vector<CellResult>& rows);
std::string trace_csv(const ConvergenceTrace& trace);
std::string dispersion_csv(const std::vector<DispersionRow>& rows);

}  // namespace wienerjam
