#pragma once

#include <cstdint>
#include <string>

#include "trajkit/ingest.hpp"

namespace trajkit {

enum class LaneLayout { kStraightMultilane, kMerge, kIntersectionCross };
enum class MotionKind { kCv, kCa, kLaneChange };

struct SynthSpec {
  uint64_t seed = 0;
  LaneLayout lane_layout = LaneLayout::kStraightMultilane;
  int n_agents = 5;              // >= 1, includes the target
  double density_radius = 30.0;  // m, agents spawn within this radius
  MotionKind motion = MotionKind::kCv;
  int n_scenes = 1;
  DatasetConfig cfg;
};

LaneLayout lane_layout_from_string(const std::string& s);
MotionKind motion_kind_from_string(const std::string& s);

/// Deterministic synthetic scenario generator. Ground-truth futures follow
/// the spec'd motion kind exactly, so the matching kinematic predictor
/// reproduces them with zero error.
SceneSet synthesize(const SynthSpec& spec);

/// Trajectory CSV for all scenes in the set (target id first per frame).
std::string scene_set_to_csv(const SceneSet& set);

}  // namespace trajkit
