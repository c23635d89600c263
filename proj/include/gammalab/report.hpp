#pragma once

#include <filesystem>

#include "gammalab/train.hpp"

#include "json.hpp"

namespace gammalab {

struct ReportOptions {
  bool include_baseline = true;
  // Wall-clock timestamps are opt-in: the default report must be
  // byte-identical across re-runs with the same flags.
  bool with_timestamps = false;
};

// Runs the full pipeline (baseline unless skipped, two-stage training,
// extraction, property checks) and assembles the JSON run report.
nlohmann::json build_run_report(const TrainConfig& cfg, const ReportOptions& opts);

// Variant reusing an already trained encoder, so a command can save the
// encoder and emit its report from one training run.
nlohmann::json build_run_report(const TrainConfig& cfg, const ReportOptions& opts,
                                const Network& encoder, double final_logic_loss);

// Structural schema check; throws ParseError describing the first problem.
void validate_report(const nlohmann::json& report);

void write_json(const nlohmann::json& j, const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace gammalab
