#pragma once

#include <string>

#include "json.hpp"
#include "sqlh/verifier.hpp"

namespace sqlh {

// Versioned JSON manifests drive the whole pipeline: encode -> build ->
// transform -> verify -> audit. Relative paths resolve against the manifest
// directory; all randomness flows from the manifest seed. Outputs are
// byte-identical across runs with identical inputs.
struct PipelineResult {
  int status = 0;  // nonzero when a step fails or a verdict misses expectations
  nlohmann::json report;
};

PipelineResult run_pipeline(const std::string& manifest_path);
PipelineResult run_pipeline_json(const nlohmann::json& manifest, const std::string& base_dir);

// Shared helpers for the CLI / C API surface.
nlohmann::json verdict_report(const Verdict& v);
nlohmann::json oracle_check(const std::string& what, const std::string& ham_path,
                            const std::string& state_path);
Verdict run_verify_files(const std::string& ham_path, const std::string& state_path,
                         const std::string& lambda, const std::string& xstar,
                         const std::string& a, const std::string& b, int trials,
                         const std::string& tmax, uint64_t seed);

}  // namespace sqlh
