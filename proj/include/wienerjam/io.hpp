#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "wienerjam/experiment.hpp"
#include "wienerjam/optimizer.hpp"
#include "wienerjam/types.hpp"

namespace wienerjam {

nlohmann::json toneset_to_json(const ToneSet& tones);
ToneSet toneset_from_json(const nlohmann::json& j);

nlohmann::json design_result_to_json(const DesignResult& result, double J);

/// Apply a run-configuration JSON document onto an experiment config.
/// Powers carry explicit unit tags (snr_db / snr_linear, jsr_db / jsr_linear);
/// unknown keys are rejected.
void apply_config_file(const nlohmann::json& doc, ExperimentConfig& config);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace wienerjam
