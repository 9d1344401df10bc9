#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "trajkit/geometry.hpp"
#include "trajkit/lane_graph.hpp"

namespace trajkit {

using AgentId = int64_t;

/// One agent's 7-real-dimensional state at one timestep: xy position,
/// heading, xy velocity, xy acceleration, plus identity and lane metadata.
struct AgentState {
  AgentId agent_id = 0;
  Vec2 position;
  double heading = 0.0;
  Vec2 velocity;
  Vec2 acceleration;
  LaneAssignment lanes;

  CaState ca() const { return {position, velocity, acceleration}; }
  std::array<double, 7> as_vector() const {
    return {position.x, position.y, heading,
            velocity.x, velocity.y, acceleration.x, acceleration.y};
  }
};

/// Transform a state into the given frame: translate by -origin, rotate by
/// -heading. Velocity and acceleration rotate, lane assignments pass through.
AgentState to_relative_frame(const AgentState& state, const Pose& frame);

/// Inverse of to_relative_frame.
AgentState from_relative_frame(const AgentState& state, const Pose& frame);

/// All agents at one timestep; the target agent sits at index 0.
struct Frame {
  int timestep = 0;  // index in [-T_h+1, 0]
  std::vector<AgentState> states;

  const AgentState& target() const { return states.at(0); }
};

struct SceneHistory {
  std::vector<Frame> frames;  // ordered by timestep, length T_h
  const LaneGraph* lane_graph = nullptr;
  double dt = 0.1;

  int t_h() const { return static_cast<int>(frames.size()); }
};

/// One windowed training/eval sample: observation history plus the target
/// agent's ground-truth future positions.
struct Sample {
  SceneHistory scene;
  std::vector<Vec2> future;  // T_f ground-truth positions of the target
};

}  // namespace trajkit
