#pragma once

#include <nlohmann/json.hpp>

#include "ceeat/config.hpp"

namespace ceeat {

struct OutputRecord {
    std::string file;
    std::uint64_t bytes = 0;
    std::string fnv1a64;
};

struct RunManifest {
    std::string experiment;
    nlohmann::json config_echo;
    std::string code_version;
    double duration_seconds = 0.0;
    std::vector<OutputRecord> outputs;
};

nlohmann::json manifest_json(const RunManifest& manifest);

/// Dispatch the experiment, write its data files plus manifest.json into
/// the output directory, and run the experiment's internal invariant
/// checks (throwing InvariantViolation on failure).
RunManifest run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::openmp);

}  // namespace ceeat
