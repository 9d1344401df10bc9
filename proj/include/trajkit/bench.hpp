#pragma once

#include <string>
#include <vector>

#include "trajkit/ingest.hpp"

namespace trajkit {

enum class SelectionStrategy { kAlg1, kRadiusAll, kKNearest };

std::string to_string(SelectionStrategy s);

struct BenchConfig {
  int repetitions = 20;
  double threshold_D = 30.0;
  int k_nearest = 4;
};

/// Per-stage wall-clock statistics (ms) over the repetitions.
struct StageStats {
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

struct BenchResult {
  SelectionStrategy strategy;
  StageStats lane_prediction;        // LP
  StageStats agent_selection;        // AS
  StageStats trajectory_prediction;  // TP
  StageStats total;
};

/// Time the lane-prediction / agent-selection / trajectory-prediction
/// stages over the given scenes for each strategy. Single-threaded during
/// measurement.
std::vector<BenchResult> run_benchmark(
    const SceneSet& set, const BenchConfig& cfg,
    const std::vector<SelectionStrategy>& strategies);

std::string bench_to_csv(const std::vector<BenchResult>& results);

}  // namespace trajkit
