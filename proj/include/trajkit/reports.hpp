#pragma once

#include <string>

#include "trajkit/agent_selection.hpp"
#include "trajkit/attention.hpp"
#include "trajkit/ingest.hpp"

namespace trajkit {

/// Per-scene, per-timestep neighbor report:
/// scene,timestep,sl,fl,ff,ml (absent categories left empty).
std::string select_report_csv(const SceneSet& set, double threshold_D,
                              SelectTimestep mode);

/// Attention matrices for every scene, one CSV block per scene.
std::string attn_report_csv(const SceneSet& set, double threshold_D,
                            SelectTimestep mode, const CoefficientConfig& cfg);

/// Kinematic predictions: scene,mode,step,x,y rows. model is "cv" or "ca".
std::string predict_report_csv(const SceneSet& set, const std::string& model);

/// Metrics JSON: min_ade, min_fde, loss_distance, rmse, rmse_buckets.
std::string eval_report_json(const SceneSet& set, const std::string& model);

/// Per-sample displacement errors: scene,ade,fde.
std::string eval_per_sample_csv(const SceneSet& set, const std::string& model);

}  // namespace trajkit
