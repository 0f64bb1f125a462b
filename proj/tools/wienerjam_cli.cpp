// Command-line front door: jammer design, analytic error evaluation,
// gradient checks and the Monte Carlo comparison suites.
//
// Conventions: SNR = S / sigma_n^2 and JSR = J / S, both given in dB on the
// command line with S = 1 internally; every computation runs in linear units.

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "wienerjam/covariance.hpp"
#include "wienerjam/experiment.hpp"
#include "wienerjam/io.hpp"
#include "wienerjam/optimizer.hpp"
#include "wienerjam/version.hpp"

using namespace wienerjam;

namespace {

struct Cli {
    ExperimentConfig config;
    std::string out_path;
    std::string config_path;
    std::string toneset_path;
    std::vector<double> inline_alpha;
    std::vector<double> inline_omega;
    std::string mode_str = "perfect";
    bool figure5 = false;
    bool trace = false;
    bool pdf = false;
};

int default_threads() {
    if (const char* env = std::getenv("WIENERJAM_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

void add_common_options(CLI::App* cmd, Cli& cli) {
    cmd->add_option("--K", cli.config.K, "Number of jamming tones");
    cmd->add_option("--L", cli.config.L_list, "Filter length(s), even")->delimiter(',');
    cmd->add_option("--snr-db", cli.config.snr_db, "Signal-to-noise ratio S/sigma_n^2 in dB");
    cmd->add_option("--jsr-db", cli.config.jsr_db, "Jammer-to-signal ratio J/S in dB");
    cmd->add_option("--trials", cli.config.trials, "Monte Carlo trials per cell");
    cmd->add_option("--mode", cli.mode_str, "Estimation mode: perfect|blind")
        ->check(CLI::IsMember({"perfect", "blind"}));
    cmd->add_option("--seed", cli.config.master_seed, "Master seed");
    cmd->add_option("--threads", cli.config.threads, "Worker threads (overrides WIENERJAM_THREADS)");
    cmd->add_option("--out", cli.out_path, "Output file path");
    cmd->add_option("--config", cli.config_path, "JSON run-configuration file");
    cmd->add_option("--N", cli.config.N, "Block length for blind estimation");
    cmd->add_option("--restarts", cli.config.optimizer.restarts, "Random restarts");
    cmd->add_option("--max-iter", cli.config.optimizer.max_iter, "Optimizer iteration cap");
}

void finalize(Cli& cli, CLI::App* cmd) {
    if (!cli.config_path.empty()) {
        // Config file overrides defaults; explicitly given flags win over both.
        ExperimentConfig from_file = cli.config;
        apply_config_file(nlohmann::json::parse(read_file(cli.config_path)), from_file);
        ExperimentConfig merged = from_file;
        auto given = [&](const std::string& name) {
            const CLI::Option* o = cmd->get_option_no_throw(name);
            return o != nullptr && o->count() > 0;
        };
        if (given("--K")) merged.K = cli.config.K;
        if (given("--L")) merged.L_list = cli.config.L_list;
        if (given("--snr-db")) merged.snr_db = cli.config.snr_db;
        if (given("--jsr-db")) merged.jsr_db = cli.config.jsr_db;
        if (given("--trials")) merged.trials = cli.config.trials;
        if (given("--seed")) merged.master_seed = cli.config.master_seed;
        if (given("--threads")) merged.threads = cli.config.threads;
        if (given("--N")) merged.N = cli.config.N;
        if (given("--restarts")) merged.optimizer.restarts = cli.config.optimizer.restarts;
        if (given("--max-iter")) merged.optimizer.max_iter = cli.config.optimizer.max_iter;
        if (given("--mode")) {
            // mode_str already holds the flag value
        } else {
            cli.mode_str = mode_name(from_file.mode);
        }
        cli.config = merged;
    }
    cli.config.mode = cli.mode_str == "blind" ? EstimationMode::blind : EstimationMode::perfect;
    cli.config.validate();
}

SystemParams params_from(const Cli& cli) {
    return cli.config.params_for(cli.config.L_list.front(), cli.config.K);
}

int cmd_design(Cli& cli) {
    const SystemParams params = params_from(cli);
    Rng rng(cli.config.master_seed);
    const DesignResult result = design_jammer(params, cli.config.K, cli.config.optimizer, rng);
    const std::string path = cli.out_path.empty() ? "toneset.json" : cli.out_path;
    write_file(path, design_result_to_json(result, params.J).dump(2) + "\n");
    std::printf("design: K=%d L=%d method=%s bmse=%.6g bmse/J=%.6g -> %s\n", cli.config.K, params.L,
                design_method_name(result.method), result.bmse, result.bmse / params.J,
                path.c_str());
    return 0;
}

int cmd_bmse(Cli& cli) {
    const SystemParams params = params_from(cli);
    ToneSet tones;
    if (!cli.toneset_path.empty()) {
        tones = toneset_from_json(nlohmann::json::parse(read_file(cli.toneset_path)));
    } else if (!cli.inline_alpha.empty()) {
        if (cli.inline_alpha.size() != cli.inline_omega.size())
            throw std::invalid_argument("--alpha and --omega must have equal length");
        tones.alpha = Eigen::Map<const Eigen::VectorXd>(cli.inline_alpha.data(),
                                                        cli.inline_alpha.size());
        tones.omega = Eigen::Map<const Eigen::VectorXd>(cli.inline_omega.data(),
                                                        cli.inline_omega.size());
    } else {
        throw std::invalid_argument("give --toneset <file> or --alpha/--omega");
    }
    tones.validate();
    const Eigen::MatrixXd ceps = error_covariance(params, tones);
    const double bmse = ceps.sum();
    std::printf("BMSE      : %.12g\n", bmse);
    std::printf("BMSE/J    : %.12g\n", bmse / params.J);
    std::printf("tone errors:");
    for (int k = 0; k < tones.size(); ++k) std::printf(" %.12g", ceps(k, k));
    std::printf("\n");
    return 0;
}

int cmd_gradcheck(Cli& cli, int cases) {
    const auto suite = gradient_check_suite(cases, cli.config.K, cli.config.master_seed);
    std::printf("case  K   L   rel_err_alpha  rel_err_omega  status\n");
    int worst = -1;
    double worst_err = -1.0;
    int failures = 0;
    for (std::size_t c = 0; c < suite.size(); ++c) {
        const auto& s = suite[c];
        std::printf("%4zu  %-3d %-3d %13.3e  %13.3e  %s\n", c, s.K, s.L, s.rel_err_alpha,
                    s.rel_err_omega, s.pass ? "ok" : "FAIL");
        const double e = std::max(s.rel_err_alpha, s.rel_err_omega);
        if (!s.pass) {
            ++failures;
            if (e > worst_err) {
                worst_err = e;
                worst = static_cast<int>(c);
            }
        }
    }
    if (failures > 0) {
        std::printf("gradcheck: %d/%zu failed; worst case %d (rel err %.3e)\n", failures,
                    suite.size(), worst, worst_err);
        return 1;
    }
    std::printf("gradcheck: all %zu cases passed\n", suite.size());
    return 0;
}

int cmd_mc(Cli& cli) {
    if (static_cast<int>(cli.figure5) + static_cast<int>(cli.trace) + static_cast<int>(cli.pdf) != 1)
        throw std::invalid_argument("pick exactly one of --figure5 / --trace / --pdf");

    if (cli.figure5) {
        auto rows = run_figure5(cli.config);
        if (cli.mode_given) {  // explicit --mode narrows the emitted table
            std::erase_if(rows, [&](const CellResult& r) { return r.mode != cli.config.mode; });
        }
        const std::string path = cli.out_path.empty() ? "figure5.csv" : cli.out_path;
        write_file(path, figure5_csv(rows));
        write_file(path + ".json", figure5_json(cli.config, rows));
        // Jammers ordered by mean normalized residual, strongest first.
        for (EstimationMode mode : {EstimationMode::perfect, EstimationMode::blind}) {
            std::map<std::string, std::pair<double, int>> agg;
            for (const auto& r : rows) {
                if (r.mode != mode) continue;
                agg[r.jammer].first += r.normalized;
                agg[r.jammer].second += 1;
            }
            std::vector<std::pair<double, std::string>> order;
            for (const auto& [name, acc] : agg) order.push_back({acc.first / acc.second, name});
            std::sort(order.rbegin(), order.rend());
            std::printf("%s mode, mean normalized BMSE:", mode_name(mode));
            for (const auto& [v, name] : order) std::printf(" %s=%.3f", name.c_str(), v);
            std::printf("\n");
        }
        std::printf("wrote %s and %s.json\n", path.c_str(), path.c_str());
        return 0;
    }

    if (cli.trace) {
        SystemParams params = params_from(cli);
        params.K = cli.config.K;
        const ConvergenceTrace tr =
            convergence_trace(params, cli.config.optimizer, cli.config.master_seed);
        const std::string path = cli.out_path.empty() ? "trace.csv" : cli.out_path;
        write_file(path, trace_csv(tr));
        std::printf("trace: structured final f=%.6g over %zu iterations, %zu restarts -> %s\n",
                    tr.structured.back(), tr.structured.size(), tr.restarts.size(), path.c_str());
        return 0;
    }

    // Dispersion study: fixed 4-tone scenario, random signal and noise draws.
    SystemParams params = params_from(cli);
    ToneSet tones;
    if (!cli.toneset_path.empty()) {
        tones = toneset_from_json(nlohmann::json::parse(read_file(cli.toneset_path)));
        if (!tones.phi) throw std::invalid_argument("dispersion study needs phases in the tone set");
    } else {
        const int K = 4;
        Rng rng(Rng::substream(cli.config.master_seed, 0xF16));
        tones.alpha = Eigen::VectorXd::Constant(K, std::sqrt(params.J / K));
        tones.omega.resize(K);
        Eigen::VectorXd phi(K);
        for (int k = 0; k < K; ++k) {
            tones.omega[k] = rng.uniform(-M_PI, M_PI);
            phi[k] = rng.uniform(-M_PI, M_PI);
        }
        tones.phi = phi;
    }
    const auto rows = pdf_dispersion_study(params, tones, cli.config.L_list, cli.config.trials,
                                           cli.config.master_seed, cli.config.threads);
    const std::string path = cli.out_path.empty() ? "dispersion.csv" : cli.out_path;
    write_file(path, dispersion_csv(rows));
    std::printf("dispersion:");
    for (const auto& r : rows) std::printf(" L=%d iqr|i|=%.4g", r.L, r.iqr_modulus);
    std::printf(" -> %s\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("wienerjam ") + kVersion +
                 " - worst-case multi-tone jammer design against the Wiener interpolation filter"};
    app.require_subcommand(1);

    Cli cli;
    cli.config.threads = default_threads();
    int gradcheck_cases = 100;

    CLI::App* design = app.add_subcommand("design", "Design the hardest-to-estimate K-tone jammer");
    add_common_options(design, cli);

    CLI::App* bmse = app.add_subcommand("bmse", "Analytic estimation-error power of a tone set");
    add_common_options(bmse, cli);
    bmse->add_option("--toneset", cli.toneset_path, "Tone set JSON file");
    bmse->add_option("--alpha", cli.inline_alpha, "Inline tone moduli")->delimiter(',');
    bmse->add_option("--omega", cli.inline_omega, "Inline tone frequencies (rad)")->delimiter(',');

    CLI::App* gradcheck = app.add_subcommand("gradcheck", "Analytic gradients vs finite differences");
    add_common_options(gradcheck, cli);
    gradcheck->add_option("--cases", gradcheck_cases, "Number of random cases");

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo suites");
    add_common_options(mc, cli);
    mc->add_flag("--figure5", cli.figure5, "Seven-jammer comparison table");
    mc->add_flag("--trace", cli.trace, "Optimizer convergence traces");
    mc->add_flag("--pdf", cli.pdf, "Estimate-dispersion study vs filter length");
    mc->add_option("--toneset", cli.toneset_path, "Tone set JSON (for --pdf)");

    // gradcheck draws K at random unless --K was given explicitly.
    cli.config.K = 0;

    try {
        app.parse(argc, argv);
        CLI::App* cmd = app.get_subcommands().front();
        if (cmd != gradcheck && cli.config.K == 0) cli.config.K = 5;
        finalize(cli, cmd);
        if (cmd == design) return cmd_design(cli);
        if (cmd == bmse) return cmd_bmse(cli);
        if (cmd == gradcheck) return cmd_gradcheck(cli, gradcheck_cases);
        return cmd_mc(cli);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
