#include "trajkit/scene.hpp"

namespace trajkit {

AgentState to_relative_frame(const AgentState& state, const Pose& frame) {
  AgentState out = state;
  out.position = rotate(state.position - frame.origin, -frame.heading);
  out.velocity = rotate(state.velocity, -frame.heading);
  out.acceleration = rotate(state.acceleration, -frame.heading);
  out.heading = wrap_angle(state.heading - frame.heading);
  return out;
}

AgentState from_relative_frame(const AgentState& state, const Pose& frame) {
  AgentState out = state;
  out.position = rotate(state.position, frame.heading) + frame.origin;
  out.velocity = rotate(state.velocity, frame.heading);
  out.acceleration = rotate(state.acceleration, frame.heading);
  out.heading = wrap_angle(state.heading + frame.heading);
  return out;
}

}  // namespace trajkit
