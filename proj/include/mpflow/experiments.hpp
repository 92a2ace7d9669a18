#pragma once

#include "mpflow/config.hpp"

namespace mpflow {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct RunSummary {
    bool ok = false;  // all enabled checks passed and no errors
    std::vector<CheckResult> checks;
    std::vector<std::string> outputs;  // files written, relative to out_dir
    std::vector<std::string> warnings;
    double validity_t_max = 0.0;
};

/// Campaign drivers.  Each writes its outputs plus a manifest.json into
/// out_dir and evaluates the checks enabled in the config.
RunSummary run_simulate(const ExperimentConfig& config, const std::string& out_dir);
RunSummary run_decay_study(const ExperimentConfig& config, const std::string& out_dir);
RunSummary run_profile_error(const ExperimentConfig& config, const std::string& out_dir);
RunSummary run_compare_ns(const ExperimentConfig& config, const std::string& out_dir);
RunSummary run_linear_decay(const ExperimentConfig& config, const std::string& out_dir);
RunSummary run_symbol_verify(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace mpflow
