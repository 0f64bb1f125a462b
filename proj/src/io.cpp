#include "wienerjam/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wienerjam {

nlohmann::json toneset_to_json(const ToneSet& tones) {
    nlohmann::json j;
    j["alpha"] = std::vector<double>(tones.alpha.data(), tones.alpha.data() + tones.alpha.size());
    j["omega_rad"] = std::vector<double>(tones.omega.data(), tones.omega.data() + tones.omega.size());
    if (tones.phi)
        j["phi_rad"] = std::vector<double>(tones.phi->data(), tones.phi->data() + tones.phi->size());
    return j;
}

ToneSet toneset_from_json(const nlohmann::json& j) {
    if (!j.contains("alpha") || !j.contains("omega_rad"))
        throw std::invalid_argument("tone set needs 'alpha' and 'omega_rad' arrays");
    ToneSet t;
    const auto a = j.at("alpha").get<std::vector<double>>();
    const auto w = j.at("omega_rad").get<std::vector<double>>();
    t.alpha = Eigen::Map<const Eigen::VectorXd>(a.data(), a.size());
    t.omega = Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
    if (j.contains("phi_rad")) {
        const auto p = j.at("phi_rad").get<std::vector<double>>();
        t.phi = Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
    }
    t.validate();
    return t;
}

nlohmann::json design_result_to_json(const DesignResult& result, double J) {
    nlohmann::json j = toneset_to_json(result.tones);
    j["method"] = design_method_name(result.method);
    j["bmse"] = result.bmse;
    j["bmse_over_J"] = result.bmse / J;
    return j;
}

void apply_config_file(const nlohmann::json& doc, ExperimentConfig& config) {
    if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> known = {
        "snr_db",   "snr_linear", "jsr_db",   "jsr_linear", "K",        "L",
        "L_list",   "N",          "trials",   "mode",       "seed",     "threads",
        "mu_alpha", "mu_omega",   "max_iter", "restarts",   "adam_beta1",
        "adam_beta2", "adam_eps", "tol"};
    for (const auto& item : doc.items()) {
        if (!known.count(item.key())) throw std::invalid_argument("unknown config key: " + item.key());
    }
    const auto power = [&doc](const char* db_key, const char* lin_key,
                              double& out_db) {
        const bool has_db = doc.contains(db_key), has_lin = doc.contains(lin_key);
        if (has_db && has_lin)
            throw std::invalid_argument(std::string("both ") + db_key + " and " + lin_key + " given");
        if (has_db) out_db = doc.at(db_key).get<double>();
        if (has_lin) {
            const double lin = doc.at(lin_key).get<double>();
            if (!(lin > 0.0)) throw std::invalid_argument(std::string(lin_key) + " must be positive");
            out_db = linear_to_db(lin);
        }
    };
    power("snr_db", "snr_linear", config.snr_db);
    power("jsr_db", "jsr_linear", config.jsr_db);
    if (doc.contains("K")) config.K = doc.at("K").get<int>();
    if (doc.contains("L")) config.L_list = {doc.at("L").get<int>()};
    if (doc.contains("L_list")) config.L_list = doc.at("L_list").get<std::vector<int>>();
    if (doc.contains("N")) config.N = doc.at("N").get<int>();
    if (doc.contains("trials")) config.trials = doc.at("trials").get<int>();
    if (doc.contains("mode")) {
        const std::string m = doc.at("mode").get<std::string>();
        if (m == "perfect") config.mode = EstimationMode::perfect;
        else if (m == "blind") config.mode = EstimationMode::blind;
        else throw std::invalid_argument("mode must be 'perfect' or 'blind'");
    }
    if (doc.contains("seed")) config.master_seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("threads")) config.threads = doc.at("threads").get<int>();
    if (doc.contains("mu_alpha")) config.optimizer.mu_alpha = doc.at("mu_alpha").get<double>();
    if (doc.contains("mu_omega")) config.optimizer.mu_omega = doc.at("mu_omega").get<double>();
    if (doc.contains("max_iter")) config.optimizer.max_iter = doc.at("max_iter").get<int>();
    if (doc.contains("restarts")) config.optimizer.restarts = doc.at("restarts").get<int>();
    if (doc.contains("adam_beta1")) config.optimizer.adam_beta1 = doc.at("adam_beta1").get<double>();
    if (doc.contains("adam_beta2")) config.optimizer.adam_beta2 = doc.at("adam_beta2").get<double>();
    if (doc.contains("adam_eps")) config.optimizer.adam_eps = doc.at("adam_eps").get<double>();
    if (doc.contains("tol")) config.optimizer.tol = doc.at("tol").get<double>();
    config.validate();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

}  // namespace wienerjam
