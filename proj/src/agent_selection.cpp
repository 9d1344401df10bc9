#include "trajkit/agent_selection.hpp"

#include <algorithm>

namespace trajkit {

namespace {

bool same_lane(const std::optional<LaneId>& a, const std::optional<LaneId>& b) {
  // Lane-equality predicates against an off-road (absent) lane are false.
  return a.has_value() && b.has_value() && *a == *b;
}

}  // namespace

NeighborSet select_neighbors(const Frame& frame, double threshold_D) {
  if (frame.states.empty()) {
    throw InvalidInputError("select_neighbors: empty frame");
  }
  if (!(threshold_D > 0.0)) {
    throw InvalidInputError("select_neighbors: threshold must be positive");
  }
  const AgentState& target = frame.target();
  std::array<double, kNumCategories> min_dist;
  min_dist.fill(threshold_D);
  NeighborSet out;

  for (size_t i = 1; i < frame.states.size(); ++i) {
    const AgentState& n = frame.states[i];
    const double d = (n.position - target.position).norm();
    const double o_n0 = (n.position - target.position).dot(target.velocity);
    const double o_0n = (target.position - n.position).dot(n.velocity);
    const auto& tl = target.lanes;
    const auto& nl = n.lanes;

    if (d < min_dist[0] && same_lane(nl.current_lane, tl.current_lane) &&
        o_n0 >= 0.0) {
      min_dist[0] = d;
      out[Category::SL] = n.agent_id;
    } else if (d < min_dist[1] && same_lane(nl.current_lane, tl.future_lane) &&
               o_n0 >= 0.0 && o_0n < 0.0 &&
               !same_lane(tl.future_lane, tl.current_lane)) {
      min_dist[1] = d;
      out[Category::FL] = n.agent_id;
    } else if (d < min_dist[2] && same_lane(nl.current_lane, tl.future_lane) &&
               ((o_n0 >= 0.0 && o_0n >= 0.0) || o_n0 < 0.0) &&
               !same_lane(tl.future_lane, tl.current_lane)) {
      min_dist[2] = d;
      out[Category::FF] = n.agent_id;
    } else if (d < min_dist[3] && same_lane(tl.current_lane, nl.future_lane) &&
               o_n0 >= 0.0 && !same_lane(nl.future_lane, nl.current_lane)) {
      min_dist[3] = d;
      out[Category::ML] = n.agent_id;
    }
  }
  return out;
}

InteractionTensor build_interaction_tensor(const SceneHistory& scene,
                                           double threshold_D,
                                           SelectTimestep mode) {
  const int t_h = scene.t_h();
  if (t_h == 0) {
    throw InvalidInputError("build_interaction_tensor: empty scene");
  }
  InteractionTensor tensor;
  tensor.t_h = t_h;
  for (auto& slot : tensor.slots) {
    slot.assign(static_cast<size_t>(t_h), {});
  }
  for (auto& m : tensor.mask) {
    m.assign(static_cast<size_t>(t_h), false);
  }

  const AgentState& anchor = scene.frames.back().target();
  const Pose frame_pose{anchor.position, wrap_angle(anchor.heading)};
  auto put = [&](int slot, int t, const AgentState& s) {
    tensor.slots[static_cast<size_t>(slot)][static_cast<size_t>(t)] =
        to_relative_frame(s, frame_pose).as_vector();
  };

  for (int t = 0; t < t_h; ++t) {
    put(0, t, scene.frames[static_cast<size_t>(t)].target());
  }

  if (mode == SelectTimestep::kAll) {
    for (int t = 0; t < t_h; ++t) {
      const Frame& f = scene.frames[static_cast<size_t>(t)];
      const NeighborSet sel = select_neighbors(f, threshold_D);
      for (int c = 0; c < kNumCategories; ++c) {
        if (!sel.ids[static_cast<size_t>(c)]) continue;
        const AgentId id = *sel.ids[static_cast<size_t>(c)];
        for (const AgentState& s : f.states) {
          if (s.agent_id == id) {
            put(c + 1, t, s);
            tensor.mask[static_cast<size_t>(c)][static_cast<size_t>(t)] = true;
            break;
          }
        }
      }
    }
  } else {
    // Selection only at the current time; carry each selected agent's full
    // history, masking steps where it is absent from the frame.
    const NeighborSet sel = select_neighbors(scene.frames.back(), threshold_D);
    for (int c = 0; c < kNumCategories; ++c) {
      if (!sel.ids[static_cast<size_t>(c)]) continue;
      const AgentId id = *sel.ids[static_cast<size_t>(c)];
      for (int t = 0; t < t_h; ++t) {
        for (const AgentState& s : scene.frames[static_cast<size_t>(t)].states) {
          if (s.agent_id == id) {
            put(c + 1, t, s);
            tensor.mask[static_cast<size_t>(c)][static_cast<size_t>(t)] = true;
            break;
          }
        }
      }
    }
  }
  return tensor;
}

}  // namespace trajkit
