#pragma once

#include <array>
#include <optional>
#include <vector>

#include "trajkit/scene.hpp"

namespace trajkit {

enum class Category { SL = 0, FL = 1, FF = 2, ML = 3 };
inline constexpr int kNumCategories = 4;
inline constexpr const char* kCategoryNames[kNumCategories] = {"SL", "FL",
                                                               "FF", "ML"};

/// Up to four interacting agents, one per category. Absent categories are
/// represented explicitly (never as the target's own index).
struct NeighborSet {
  std::array<std::optional<AgentId>, kNumCategories> ids;

  std::optional<AgentId>& operator[](Category c) {
    return ids[static_cast<int>(c)];
  }
  const std::optional<AgentId>& operator[](Category c) const {
    return ids[static_cast<int>(c)];
  }
  bool operator==(const NeighborSet&) const = default;
};

/// Select the nearest qualifying agent per category within threshold_D.
/// The four guarded branches are mutually exclusive and evaluated in the
/// order SL, FL, FF, ML; an agent consumed by an earlier branch never
/// reaches a later one. Lane predicates against an off-road (absent) lane
/// evaluate false. Orientation products compare exactly against 0.
NeighborSet select_neighbors(const Frame& frame, double threshold_D);

enum class SelectTimestep {
  kAll,      // run selection independently at every historical step
  kCurrent,  // select at t=0 only and carry each agent's full history
};

/// The 5 x T_h x 7 stack of target-plus-category states in the target's
/// relative frame (origin p_0^0, x-axis along h_0^0). Slot 0 is the target;
/// slots 1..4 are SL, FL, FF, ML. Masked-out (category, t) entries are
/// zero-filled.
struct InteractionTensor {
  int t_h = 0;
  std::array<std::vector<std::array<double, 7>>, 5> slots;
  std::array<std::vector<bool>, kNumCategories> mask;

  bool populated(int category, int t) const { return mask[category][t]; }
};

InteractionTensor build_interaction_tensor(const SceneHistory& scene,
                                           double threshold_D,
                                           SelectTimestep mode);

}  // namespace trajkit
